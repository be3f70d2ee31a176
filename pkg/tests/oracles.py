"""Independent brute-force computations used to derive and freeze expected values.

Nothing here imports the package's algorithms: inputs are plain element lists
and ``le(a, b)`` predicates, outputs are Python sets.
"""

from itertools import chain as _chain
from itertools import combinations, product


def subsets(xs):
    xs = list(xs)
    return [frozenset(c) for r in range(len(xs) + 1) for c in combinations(xs, r)]


def order(P):
    """``(elements, le)`` from a FinitePoset, through its public matrix only."""
    els = list(P.elements)
    m = P.leq
    pos = {x: i for i, x in enumerate(els)}
    return els, lambda a, b: bool(m[pos[a], pos[b]])


def sup(els, le, A):
    ub = [u for u in els if all(le(a, u) for a in A)]
    least = [u for u in ub if all(le(u, v) for v in ub)]
    return least[0] if least else None


def inf(els, le, A):
    lb = [u for u in els if all(le(u, a) for a in A)]
    great = [u for u in lb if all(le(v, u) for v in lb)]
    return great[0] if great else None


def is_lattice(els, le):
    return all(sup(els, le, [a, b]) is not None and inf(els, le, [a, b]) is not None for a in els for b in els)


def is_distributive(els, le):
    for a, b, c in product(els, repeat=3):
        lhs = inf(els, le, [a, sup(els, le, [b, c])])
        rhs = sup(els, le, [inf(els, le, [a, b]), inf(els, le, [a, c])])
        if lhs != rhs:
            return False
    return True


def k_ideals(els, le, k):
    """Non-empty down-closed subsets closed under existing joins of fewer than k elements (k=None: any)."""
    out = []
    for S in subsets(els):
        if not S:
            continue
        if any(b not in S for a in S for b in els if le(b, a)):
            continue
        ok = True
        for A in subsets(S):
            if k is not None and len(A) >= k:
                continue
            j = sup(els, le, A)
            if j is not None and j not in S:
                ok = False
                break
        if ok:
            out.append(S)
    return out


def compact(els, le, k):
    """Elements ``a`` such that every subset with ``a <= ∨A`` has ``B ⊆ A``, ``|B| < k``, ``a <= ∨B``."""
    if k is None:
        return set(els)
    out = set()
    for a in els:
        good = True
        for A in subsets(els):
            j = sup(els, le, A)
            if j is None or not le(a, j):
                continue
            if not any(
                (jb := sup(els, le, B)) is not None and le(a, jb) for B in subsets(A) if len(B) < k
            ):
                good = False
                break
        if good:
            out.add(a)
    return out


def primes(els, le):
    top = sup(els, le, els)
    return {
        p
        for p in els
        if p != top
        and all(le(a, p) or le(b, p) for a in els for b in els if le(inf(els, le, [a, b]), p))
    }


def two_valued_maps(els, le):
    """Maps to {0,1} preserving bottom, top, binary joins and meets."""
    bot, top = inf(els, le, els), sup(els, le, els)
    out = []
    for vals in product((0, 1), repeat=len(els)):
        f = dict(zip(els, vals))
        if f[bot] != 0 or f[top] != 1:
            continue
        if all(
            f[sup(els, le, [a, b])] == max(f[a], f[b]) and f[inf(els, le, [a, b])] == min(f[a], f[b])
            for a in els
            for b in els
        ):
            out.append(f)
    return out


def downsets(els, le):
    return [S for S in subsets(els) if all(b in S for a in S for b in els if le(b, a))]


def is_topology(points, opens):
    opens = set(opens)
    return (
        frozenset() in opens
        and frozenset(points) in opens
        and all(a | b in opens and a & b in opens for a in opens for b in opens)
    )


# tensor-triangulated presentations ------------------------------------------------


def closed(T, S, k=None, radical=True):
    """Membership test of every closure rule, directly on the tables."""
    o = T.objects
    t = lambda a, b: o[int(T.tensor[o.index(a), o.index(b)])]  # noqa: E731
    sh = {o[i]: o[s] for i, s in enumerate(T.shift)}
    if o[T.zero] not in S:
        return False
    for x in S:
        if sh[x] not in S or any(sh[y] == x and y not in S for y in o):
            return False
        if any(t(x, w) not in S for w in o):
            return False
    summ = {(o[a], o[b]) for a, b in T.summands} | {
        (o[m], o[c]) for ms, c in T.coproducts.items() for m in ms
    }
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(summ), repeat=2):
            if b == c and (a, d) not in summ:
                summ.add((a, d))
                changed = True
    if any(b in S and a not in S for a, b in summ):
        return False
    tris = {tuple(o[v] for v in tr) for tr in T.triangles}
    changed = True
    while changed:
        changed = False
        for x, y, z in list(tris):
            inv = {v: u for u, v in sh.items()}
            for tr in ((y, z, sh[x]), (inv[z], x, y)):
                if tr not in tris:
                    tris.add(tr)
                    changed = True
    if any(x in S and z in S and y not in S for x, y, z in tris):
        return False
    for ms, c in T.coproducts.items():
        if (k is None or len(ms) < k) and all(o[m] in S for m in ms) and o[c] not in S:
            return False
    if radical:
        for x in o:
            p, seen = x, set()
            while p not in seen:
                seen.add(p)
                if p in S and x not in S:
                    return False
                p = t(p, x)
    return True


def all_closed(T, k=None, radical=True):
    return [S for S in subsets(T.objects) if closed(T, S, k, radical)]


def rad(T, S, k=None):
    """Smallest closed superset: the intersection of every closed superset."""
    out = frozenset(T.objects)
    for C in all_closed(T, k):
        if set(S) <= C:
            out &= C
    return out


def flatten(xs):
    return list(_chain.from_iterable(xs))
