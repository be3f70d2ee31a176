"""Exhaustive and seeded generators for posets, lattices, frames, frame-morphism
chains and tensor-triangulated presentations."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterator, Sequence

import numpy as np

from .errors import NotALattice
from .frame import Frame
from .poset import FinitePoset, as_lattice, bits, chain, downset_lattice, poset_from_covers, set_name
from .refine import FrameMorphism
from .ttg import TTPresentation

# posets up to isomorphism --------------------------------------------------------


def _canonical(n: int, rel: frozenset[tuple[int, int]]) -> tuple:
    best = None
    for perm in permutations(range(n)):
        code = tuple(sorted((perm[a], perm[b]) for a, b in rel))
        if best is None or code < best:
            best = code
    return best


@lru_cache(maxsize=None)
def poset_relations(n: int) -> tuple[frozenset[tuple[int, int]], ...]:
    """Strict orders on ``0..n-1`` up to isomorphism, each naturally labelled
    (``a < b`` only if ``a < b`` as integers)."""
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    seen = {}
    for choice in range(1 << len(pairs)):
        rel = frozenset(p for i, p in enumerate(pairs) if choice >> i & 1)
        if any((a, c) not in rel for a, b in rel for b2, c in rel if b == b2):
            continue
        key = _canonical(n, rel)
        seen.setdefault(key, rel)
    return tuple(seen[k] for k in sorted(seen))


def posets(n: int, names: Sequence[str] | None = None) -> list[FinitePoset]:
    names = list(names) if names is not None else [chr(ord("a") + i) for i in range(n)]
    out = []
    for rel in poset_relations(n):
        leq = np.eye(n, dtype=bool)
        for a, b in rel:
            leq[a, b] = True
        out.append(FinitePoset(names, leq))
    return out


def lattices(size: int) -> list[FinitePoset]:
    """All lattices with ``size`` elements up to isomorphism: a bounded extension of every interior poset."""
    if size == 1:
        return [FinitePoset(["0"], [[True]])]
    out = []
    m = size - 2
    interior = [chr(ord("a") + i) for i in range(m)]
    for Q in posets(m, interior):
        names = ["0", *interior, "1"]
        leq = np.zeros((size, size), dtype=bool)
        leq[0, :] = True
        leq[:, -1] = True
        leq[1:-1, 1:-1] = Q.leq
        P = FinitePoset(names, leq)
        try:
            as_lattice(P)
        except NotALattice:
            continue
        out.append(P)
    return out


def distributive_lattices(size: int) -> list[Frame]:
    out = []
    for P in lattices(size):
        try:
            out.append(Frame.from_poset(P))
        except Exception:
            continue
    return out


def frame_corpus(max_size: int = 6) -> list[Frame]:
    """Every finite frame with at most ``max_size`` elements, up to isomorphism."""
    return [F for n in range(1, max_size + 1) for F in distributive_lattices(n)]


def downset_frame(P: FinitePoset) -> Frame:
    return Frame(downset_lattice(P))


def downset_corpus(max_size: int = 6) -> list[Frame]:
    """Frames of down-sets of posets, kept when they have at most ``max_size`` elements."""
    out = []
    for n in range(0, max_size):
        for P in posets(n):
            if len(P.downsets()) <= max_size:
                out.append(downset_frame(P))
    return out


# named examples ----------------------------------------------------------------


def m3() -> FinitePoset:
    """Bottom, three pairwise incomparable middles, top."""
    mids = ["p0", "p1", "c"]
    return poset_from_covers(["0", *mids, "1"], [("0", m) for m in mids] + [(m, "1") for m in mids])


def b2() -> FinitePoset:
    return poset_from_covers(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def c3() -> FinitePoset:
    return chain(3, ["0", "m", "1"])


def p6() -> FinitePoset:
    """``0 < a,b,c``; ``a,b < t2``; ``a,b,c < t``. The pairs ``{a,c}`` and ``{b,c}`` have join ``t``."""
    return poset_from_covers(
        ["0", "a", "b", "c", "t2", "t"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "t2"), ("b", "t2"), ("a", "t"), ("b", "t"), ("c", "t")],
    )


def triple_join() -> FinitePoset:
    """Every pair of ``a,b,c`` has its own minimal upper bound and only the triple has a join ``t``."""
    return poset_from_covers(
        ["0", "a", "b", "c", "ab", "ac", "bc", "t"],
        [("0", x) for x in "abc"]
        + [("a", "ab"), ("b", "ab"), ("a", "ac"), ("c", "ac"), ("b", "bc"), ("c", "bc")]
        + [(x, "t") for x in "abc"],
    )


def boolean(n: int) -> Frame:
    return downset_frame(FinitePoset([chr(ord("a") + i) for i in range(n)], np.eye(n, dtype=bool)))


# random posets and injective frame morphisms -----------------------------------------


def random_poset(rng: random.Random, n: int, density: float = 0.4) -> FinitePoset:
    """Naturally labelled random order: transitive closure of random forward pairs."""
    reach = [1 << i for i in range(n)]
    for b in range(n):
        for a in range(b):
            if rng.random() < density:
                reach[a] |= 1 << b
    for k in range(n):
        for i in range(n):
            if reach[i] >> k & 1:
                reach[i] |= reach[k]
    leq = np.array([[bool(reach[i] >> j & 1) for j in range(n)] for i in range(n)])
    return FinitePoset([f"e{i}" for i in range(n)], leq)


def _coarsen(rng: random.Random, P: FinitePoset, bijective: bool) -> tuple[FinitePoset, list[int]]:
    """A surjective monotone map ``P -> Q``: add one comparability, or merge two elements."""
    n = len(P)
    for _ in range(50):
        if bijective or n < 2:
            image = list(range(n))
            m = n
            extra = []
            if n >= 2:
                order = P.linear_extension()
                i, j = sorted(rng.sample(range(n), 2))
                extra = [(order[i], order[j])]
        else:
            u, v = rng.sample(range(n), 2)
            keep = [x for x in range(n) if x != v]
            pos = {x: i for i, x in enumerate(keep)}
            pos[v] = pos[u]
            image = [pos[x] for x in range(n)]
            m = n - 1
            extra = []
        reach = [1 << i for i in range(m)]
        for a in range(n):
            for b in bits(P.up(a)):
                reach[image[a]] |= 1 << image[b]
        for a, b in extra:
            reach[image[a]] |= 1 << image[b]
        for k in range(m):
            for i in range(m):
                if reach[i] >> k & 1:
                    reach[i] |= reach[k]
        if any(i != j and reach[i] >> j & 1 and reach[j] >> i & 1 for i in range(m) for j in range(m)):
            continue
        leq = np.array([[bool(reach[i] >> j & 1) for j in range(m)] for i in range(m)])
        return FinitePoset([f"e{i}" for i in range(m)], leq), image
    return P, list(range(n))


def preimage_morphism(Fsrc: Frame, Q: FinitePoset, Ftgt: Frame, P: FinitePoset, f: Sequence[int]) -> FrameMorphism:
    """``D(Q) -> D(P)`` by preimage along a monotone ``f: P -> Q``."""
    table = []
    for name in Fsrc.elements:
        S = Q.mask(name.strip("{}").split(",")) if name != "{}" else 0
        pre = sum(1 << x for x in range(len(P)) if S >> f[x] & 1)
        table.append(Ftgt.index(set_name(P.elements, pre)))
    return FrameMorphism(Fsrc, Ftgt, table)


def random_chain(rng: random.Random, length: int = 2, size: int = 4) -> list[FrameMorphism]:
    """Composable injective frame morphisms between down-set frames.

    Each step is the preimage map of a surjective monotone map, bijective half the time.
    """
    n = rng.randint(1, size)
    top = random_poset(rng, n, rng.random() * 0.6)
    levels = [top]
    maps = []
    for _ in range(length):
        Q, f = _coarsen(rng, levels[-1], rng.random() < 0.5)
        levels.append(Q)
        maps.append(f)
    frames = [downset_frame(P) for P in levels]
    out = []
    for i in range(length - 1, -1, -1):
        out.append(preimage_morphism(frames[i + 1], levels[i + 1], frames[i], levels[i], maps[i]))
    return out


def random_chains(count: int, seed: int = 0, length: int = 2, size: int = 4) -> Iterator[list[FrameMorphism]]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_chain(rng, length, size)


# presentations ----------------------------------------------------------------------


def subs2() -> TTPresentation:
    """Subsets of ``{1,2}``: tensor is intersection, coproduct is union, triangles ``(A, A∪B, B)``."""
    sets = {"e": 0, "1": 1, "2": 2, "12": 3}
    name = {v: k for k, v in sets.items()}
    objs = list(sets)
    tensor = {(a, b): name[sets[a] & sets[b]] for a in objs for b in objs}
    coproducts = {(a, b): name[sets[a] | sets[b]] for a, b in combinations(objs, 2)}
    coproducts.update({(a, a): a for a in objs})
    triangles = [(a, name[sets[a] | sets[b]], b) for a in objs for b in objs]
    summands = [(a, b) for a in objs for b in objs if sets[a] & ~sets[b] == 0]
    return TTPresentation.from_names(objs, "12", "e", tensor, None, triangles, summands, coproducts)


def chain3() -> TTPresentation:
    """Three objects ``z < a < u`` with meet as tensor; radical ideals form a 3-chain."""
    objs = ["z", "a", "u"]
    tensor = {(x, y): objs[min(i, j)] for i, x in enumerate(objs) for j, y in enumerate(objs)}
    return TTPresentation.from_names(objs, "u", "z", tensor)


def signed_chain3() -> TTPresentation:
    """``chain3`` with a sign: ``Σ`` swaps ``x`` and ``x'`` and tensor multiplies signs."""
    level = {"z": 0, "a": 1, "a'": 1, "u": 2, "u'": 2}
    sign = {"z": 0, "a": 0, "a'": 1, "u": 0, "u'": 1}
    objs = list(level)

    def obj(lv: int, sg: int) -> str:
        if lv == 0:
            return "z"
        return ("a", "u")[lv - 1] + ("'" if sg else "")

    tensor = {(x, y): obj(min(level[x], level[y]), sign[x] ^ sign[y]) for x in objs for y in objs}
    shift = {x: obj(level[x], 1 - sign[x]) for x in objs}
    return TTPresentation.from_names(objs, "u", "z", tensor, shift)


def no_triangles() -> TTPresentation:
    """Zero, unit and two orthogonal idempotents ``p ⊗ q = 0``; no triangles, coproducts or summands."""
    objs = ["0", "1", "p", "q"]
    table = {("0", x): "0" for x in objs}
    table.update({("1", x): x for x in objs if x != "0"})
    table.update({("p", "p"): "p", ("q", "q"): "q", ("p", "q"): "0"})
    return TTPresentation.from_names(objs, "1", "0", table)


def one_object() -> TTPresentation:
    """Zero and unit only."""
    return TTPresentation.from_names(["0", "1"], "1", "0", {("0", "0"): "0", ("0", "1"): "0", ("1", "1"): "1"})


def trivial() -> TTPresentation:
    """The zero object alone, which is also the unit."""
    return TTPresentation.from_names(["0"], "0", "0", {("0", "0"): "0"})


def random_presentation(rng: random.Random, max_objects: int = 9, all_coproducts: bool = True) -> TTPresentation:
    """A random presentation inside the model ``D × {0,1,2}``.

    ``D`` is a random frame of down-sets. Tensor is (meet, saturating sum), the
    coproduct is (join, min), zero is ``(0, 2)`` and the unit ``(1, 0)``.
    Objects are a random subset closed under tensor and, with
    ``all_coproducts``, under binary coproducts, all of them declared.
    Otherwise coproducts, like triangles and summands, are random seeds closed
    under tensoring (triangles also under rotation); every
    triangle ``(X,Y,Z)`` has each support below the join of the other two.
    """
    while True:
        P = random_poset(rng, rng.randint(1, 3), 0.4)
        D = P.downsets()
        top = P.full
        zero, unit = (0, 2), (top, 0)

        def tensor(x, y):
            return (x[0] & y[0], min(2, x[1] + y[1]))

        def coprod(x, y):
            return (x[0] | y[0], min(x[1], y[1]))

        objs = {zero, unit}
        for _ in range(rng.randint(1, 3)):
            objs.add((rng.choice(D), rng.randint(0, 2)))
        while True:
            grown = objs | {tensor(x, y) for x in objs for y in objs}
            if all_coproducts:
                grown |= {coprod(x, y) for x in objs for y in objs}
            if grown == objs:
                break
            objs = grown
        if len(objs) <= max_objects:
            break
    objs = sorted(objs)
    pool = list(objs)

    coproducts = {}
    if all_coproducts:
        coproducts = {(a, b): coprod(a, b) for a in objs for b in objs if a <= b}
    for _ in range(0 if all_coproducts else rng.randint(0, 3)):
        a, b = rng.choice(pool), rng.choice(pool)
        if coprod(a, b) not in objs:
            continue
        for w in objs:
            x, y = tensor(w, a), tensor(w, b)
            coproducts[tuple(sorted((x, y)))] = coprod(x, y)

    def spans(x, y, z):
        return x[0] & ~(y[0] | z[0]) == 0

    triangles = set()
    candidates = [
        (x, y, z) for x in objs for y in objs for z in objs if spans(x, y, z) and spans(y, x, z) and spans(z, x, y)
    ]
    for _ in range(rng.randint(0, 3)):
        if not candidates:
            break
        x, y, z = rng.choice(candidates)
        for w in objs:
            for t in ((x, y, z), (y, z, x), (z, x, y)):
                triangles.add(tuple(tensor(w, v) for v in t))

    summands = set()
    for _ in range(rng.randint(0, 2)):
        a, b = rng.choice(pool), rng.choice(pool)
        if a[0] & ~b[0] == 0 and a[1] >= b[1]:
            for w in objs:
                summands.add((tensor(w, a), tensor(w, b)))

    def label(x):
        return set_name(P.elements, x[0]) + "^" + str(x[1])

    names = [label(x) for x in objs]
    where = {x: i for i, x in enumerate(objs)}
    table = [[where[tensor(x, y)] for y in objs] for x in objs]
    return TTPresentation(
        names,
        where[unit],
        where[zero],
        table,
        None,
        [tuple(where[v] for v in t) for t in triangles],
        [(where[a], where[b]) for a, b in summands],
        {tuple(where[v] for v in k): where[c] for k, c in coproducts.items()},
    )


def random_presentations(
    count: int, seed: int = 0, max_objects: int = 9, all_coproducts: bool = True
) -> Iterator[TTPresentation]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_presentation(rng, max_objects, all_coproducts)
