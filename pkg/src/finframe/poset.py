"""Finite posets stored as boolean order matrices with bitset rows.

Subsets of a poset are passed around internally as Python ``int`` bitmasks
(bit ``i`` set means element ``i`` is present); the public helpers accept and
return element names.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    CycleDetected,
    DuplicateElement,
    NotALattice,
    NotAPartialOrder,
    NotDistributive,
    UnknownElement,
)
from .report import Report


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def set_name(names: Sequence[str], mask: int) -> str:
    return "{" + ",".join(names[i] for i in bits(mask)) + "}"


class FinitePoset:
    """An immutable finite partial order.

    ``elements`` is the tuple of element names; ``leq[i, j]`` is true iff
    ``elements[i] <= elements[j]``.
    """

    __slots__ = ("elements", "leq", "_index", "_up", "_down", "_hash")

    def __init__(self, elements: Iterable[str], leq):
        elements = tuple(elements)
        index: dict[str, int] = {}
        for pos, name in enumerate(elements):
            if not isinstance(name, str) or not name:
                raise ValueError(f"element names must be non-empty strings, got {name!r}")
            if name in index:
                raise DuplicateElement(f"duplicate element {name!r}")
            index[name] = pos
        n = len(elements)
        mat = np.array(leq, dtype=bool).reshape(n, n) if n else np.zeros((0, 0), dtype=bool)
        if n:
            if not mat.diagonal().all():
                i = int(np.flatnonzero(~mat.diagonal())[0])
                raise NotAPartialOrder("order is not reflexive", (elements[i], elements[i]))
            sym = mat & mat.T
            np.fill_diagonal(sym, False)
            if sym.any():
                i, j = (int(v) for v in np.argwhere(sym)[0])
                raise CycleDetected(
                    f"{elements[i]!r} and {elements[j]!r} are mutually below each other",
                    (elements[i], elements[j]),
                )
            m = mat.astype(np.int64)
            trans = (m @ m) > 0
            if (trans & ~mat).any():
                i, j = (int(v) for v in np.argwhere(trans & ~mat)[0])
                raise NotAPartialOrder("order is not transitive", (elements[i], elements[j]))
        mat.setflags(write=False)
        self.elements = elements
        self.leq = mat
        self._index = index
        self._up = tuple(_row_mask(mat[i]) for i in range(n))
        self._down = tuple(_row_mask(mat[:, i]) for i in range(n))
        self._hash = hash((elements, mat.tobytes()))

    # basic access -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.elements == other.elements and bool(np.array_equal(self.leq, other.leq))

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FinitePoset({len(self)} elements, {len(self.covers())} covers)"

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownElement(f"unknown element {name!r}") from None

    def mask(self, names: Iterable[str]) -> int:
        out = 0
        for name in names:
            out |= 1 << self.index(name)
        return out

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in bits(mask))

    def le(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j])

    def up(self, i: int) -> int:
        return self._up[i]

    def down(self, i: int) -> int:
        return self._down[i]

    # derived structure ------------------------------------------------------

    def upper_bounds(self, mask: int) -> int:
        out = self.full
        for i in bits(mask):
            out &= self._up[i]
        return out

    def lower_bounds(self, mask: int) -> int:
        out = self.full
        for i in bits(mask):
            out &= self._down[i]
        return out

    def least(self, mask: int) -> int | None:
        """The least element of the subset ``mask``, if it has one."""
        for i in bits(mask):
            if mask & ~self._up[i] == 0:
                return i
        return None

    def greatest(self, mask: int) -> int | None:
        for i in bits(mask):
            if mask & ~self._down[i] == 0:
                return i
        return None

    def join_of(self, mask: int) -> int | None:
        return self.least(self.upper_bounds(mask))

    def meet_of(self, mask: int) -> int | None:
        return self.greatest(self.lower_bounds(mask))

    def bottom(self) -> int | None:
        return self.least(self.full)

    def top(self) -> int | None:
        return self.greatest(self.full)

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self._down[i]
        return out

    def up_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self._up[i]
        return out

    def maximal(self, mask: int) -> int:
        """Maximal elements of the subset ``mask``."""
        out = 0
        for i in bits(mask):
            if mask & self._up[i] == 1 << i:
                out |= 1 << i
        return out

    def minimal(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            if mask & self._down[i] == 1 << i:
                out |= 1 << i
        return out

    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs ``(i, j)``: ``i < j`` with nothing strictly between."""
        out = []
        for i in range(len(self)):
            strictly_above = self._up[i] & ~(1 << i)
            for j in bits(self.minimal(strictly_above)):
                out.append((i, j))
        return out

    def linear_extension(self) -> list[int]:
        """Element indices sorted so that ``i < j`` in the order implies ``i`` comes first."""
        return sorted(range(len(self)), key=lambda i: (popcount(self._down[i]), i))

    def dual(self) -> FinitePoset:
        return FinitePoset(self.elements, self.leq.T)

    def subposet(self, mask: int) -> FinitePoset:
        idx = list(bits(mask))
        return FinitePoset([self.elements[i] for i in idx], self.leq[np.ix_(idx, idx)])

    def is_antichain(self, mask: int) -> bool:
        return all(mask & self._up[i] == 1 << i for i in bits(mask))

    def antichains(self, max_size: int | None = None) -> Iterator[int]:
        """Every antichain (including the empty one), as bitmasks."""
        n = len(self)
        comparable = [self._up[i] | self._down[i] for i in range(n)]

        def rec(start: int, current: int, allowed: int, size: int):
            yield current
            if max_size is not None and size >= max_size:
                return
            for i in bits(allowed >> start << start):
                yield from rec(i + 1, current | 1 << i, allowed & ~comparable[i], size + 1)

        yield from rec(0, 0, self.full, 0)

    def downsets(self) -> list[int]:
        """All down-closed subsets (including the empty set)."""
        order = self.linear_extension()
        out: list[int] = []

        def rec(pos: int, current: int):
            if pos == len(order):
                out.append(current)
                return
            i = order[pos]
            rec(pos + 1, current)
            below = self._down[i] & ~(1 << i)
            if below & ~current == 0:
                rec(pos + 1, current | 1 << i)

        rec(0, 0)
        return sorted(out, key=lambda m: (popcount(m), m))


def _row_mask(row) -> int:
    out = 0
    for j in np.flatnonzero(row):
        out |= 1 << int(j)
    return out


# construction ---------------------------------------------------------------


def poset_from_covers(elements: Iterable[str], covers: Iterable[tuple[str, str]]) -> FinitePoset:
    """Build the poset whose order is the reflexive-transitive closure of ``covers``.

    Each pair ``(a, b)`` means ``a`` is covered by ``b``.
    """
    elements = list(elements)
    index: dict[str, int] = {}
    for pos, name in enumerate(elements):
        if name in index:
            raise DuplicateElement(f"duplicate element {name!r}")
        index[name] = pos
    n = len(elements)
    reach = [1 << i for i in range(n)]
    for a, b in covers:
        for name in (a, b):
            if name not in index:
                raise UnknownElement(f"cover references unknown element {name!r}")
        if a == b:
            raise CycleDetected(f"{a!r} covers itself", (a, b))
        reach[index[a]] |= 1 << index[b]
    # Warshall on bitset rows
    for k in range(n):
        bit = 1 << k
        row_k = reach[k]
        for i in range(n):
            if reach[i] & bit:
                reach[i] |= row_k
    for i in range(n):
        for j in bits(reach[i] & ~(1 << i)):
            if reach[j] >> i & 1:
                raise CycleDetected(
                    f"{elements[i]!r} and {elements[j]!r} lie on a cycle", (elements[i], elements[j])
                )
    leq = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in bits(reach[i]):
            leq[i, j] = True
    return FinitePoset(elements, leq)


def poset_from_sets(sets: Sequence[int], names: Sequence[str]) -> FinitePoset:
    """Order a family of bitmask sets by inclusion."""
    n = len(sets)
    leq = np.zeros((n, n), dtype=bool)
    for i, a in enumerate(sets):
        for j, b in enumerate(sets):
            leq[i, j] = a & ~b == 0
    return FinitePoset(names, leq)


def chain(n: int, names: Sequence[str] | None = None) -> FinitePoset:
    names = list(names) if names is not None else [str(i) for i in range(n)]
    return poset_from_covers(names, zip(names, names[1:]))


def antichain(names: Sequence[str]) -> FinitePoset:
    return poset_from_covers(names, [])


# partial joins and lattices ---------------------------------------------------


def partial_join(P: FinitePoset, A: Iterable[str]) -> str | None:
    """Least upper bound of ``A`` in ``P``, or ``None`` when it does not exist."""
    j = P.join_of(P.mask(A))
    return None if j is None else P.elements[j]


def partial_meet(P: FinitePoset, A: Iterable[str]) -> str | None:
    m = P.meet_of(P.mask(A))
    return None if m is None else P.elements[m]


@dataclass(frozen=True, eq=False)
class LatticeCert:
    """A poset together with total meet/join tables and its bounds."""

    base: FinitePoset
    meet: np.ndarray
    join: np.ndarray
    bottom: int
    top: int

    def __len__(self) -> int:
        return len(self.base)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatticeCert):
            return NotImplemented
        return self.base == other.base

    def __hash__(self) -> int:
        return hash(self.base)

    @property
    def elements(self) -> tuple[str, ...]:
        return self.base.elements

    def join_all(self, mask: int) -> int:
        out = self.bottom
        for i in bits(mask):
            out = int(self.join[out, i])
        return out

    def meet_all(self, mask: int) -> int:
        out = self.top
        for i in bits(mask):
            out = int(self.meet[out, i])
        return out

    def join_names(self, a: str, b: str) -> str:
        return self.elements[self.join[self.base.index(a), self.base.index(b)]]

    def meet_names(self, a: str, b: str) -> str:
        return self.elements[self.meet[self.base.index(a), self.base.index(b)]]


def as_lattice(P: FinitePoset) -> LatticeCert:
    """Certify ``P`` as a lattice, or raise :class:`NotALattice` with a witness pair."""
    n = len(P)
    if n == 0:
        raise NotALattice("the empty poset has no top or bottom", ())
    meet = np.empty((n, n), dtype=np.int64)
    join = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i, n):
            pair = 1 << i | 1 << j
            u = P.join_of(pair)
            if u is None:
                raise NotALattice(
                    f"{P.elements[i]!r} and {P.elements[j]!r} have no join",
                    (P.elements[i], P.elements[j]),
                )
            m = P.meet_of(pair)
            if m is None:
                raise NotALattice(
                    f"{P.elements[i]!r} and {P.elements[j]!r} have no meet",
                    (P.elements[i], P.elements[j]),
                )
            join[i, j] = join[j, i] = u
            meet[i, j] = meet[j, i] = m
    meet.setflags(write=False)
    join.setflags(write=False)
    return LatticeCert(P, meet, join, P.bottom(), P.top())


def is_distributive(L: LatticeCert) -> Report:
    """Binary distributive law ``a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)``.

    The witness of a failure is the lexicographically first offending triple of
    names, in element order.
    """
    M, J = L.meet, L.join
    lhs = M[np.arange(len(L))[:, None, None], J[None, :, :]]
    rhs = J[M[:, :, None], M[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad) == 0:
        return Report(True)
    a, b, c = (L.elements[int(v)] for v in bad[0])
    return Report(False, (a, b, c))


def join_irreducibles(L: LatticeCert) -> FinitePoset:
    """Sub-poset of join-irreducible elements (Birkhoff's representing poset)."""
    verdict = is_distributive(L)
    if not verdict:
        raise NotDistributive("lattice is not distributive", verdict.witness)
    return L.base.subposet(join_irreducible_mask(L))


def join_irreducible_mask(L: LatticeCert) -> int:
    out = 0
    J = L.join
    for j in range(len(L)):
        if j == L.bottom:
            continue
        a, b = np.nonzero(J == j)
        if np.all((a == j) | (b == j)):
            out |= 1 << j
    return out


def downset_lattice(P: FinitePoset) -> LatticeCert:
    """The lattice of down-sets of ``P`` ordered by inclusion."""
    sets = P.downsets()
    return as_lattice(poset_from_sets(sets, [set_name(P.elements, s) for s in sets]))


# isomorphism -------------------------------------------------------------------


def find_isomorphism(P: FinitePoset, Q: FinitePoset) -> dict[str, str] | None:
    """An order isomorphism ``P -> Q`` by name, or ``None``.

    Exhaustive backtracking, pruned by (down-set size, up-set size, cover degree)
    signatures; exponential in the worst case and meant for small certificates.
    """
    n = len(P)
    if n != len(Q):
        return None

    def signatures(R: FinitePoset):
        cov = R.covers()
        deg_in = [0] * len(R)
        deg_out = [0] * len(R)
        for i, j in cov:
            deg_out[i] += 1
            deg_in[j] += 1
        return [
            (popcount(R.down(i)), popcount(R.up(i)), deg_in[i], deg_out[i]) for i in range(len(R))
        ]

    sp, sq = signatures(P), signatures(Q)
    if sorted(sp) != sorted(sq):
        return None
    order = P.linear_extension()
    image = [-1] * n
    used = [False] * n

    def consistent(i: int, j: int) -> bool:
        for k in range(n):
            if image[k] < 0:
                continue
            if P.leq[i, k] != Q.leq[j, image[k]] or P.leq[k, i] != Q.leq[image[k], j]:
                return False
        return True

    def rec(pos: int) -> bool:
        if pos == n:
            return True
        i = order[pos]
        for j in range(n):
            if used[j] or sq[j] != sp[i] or not consistent(i, j):
                continue
            image[i], used[j] = j, True
            if rec(pos + 1):
                return True
            image[i], used[j] = -1, False
        return False

    if not rec(0):
        return None
    return {P.elements[i]: Q.elements[image[i]] for i in range(n)}


def iso_check(P: FinitePoset, Q: FinitePoset) -> bool:
    return find_isomorphism(P, Q) is not None


# rendering ---------------------------------------------------------------------


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(P: FinitePoset, graph_name: str = "poset") -> str:
    """Graphviz source for the Hasse diagram, edges pointing from lower to upper covers."""
    names = sorted(P.elements)
    edges = sorted((P.elements[i], P.elements[j]) for i, j in P.covers())
    lines = [f"digraph {graph_name} {{", "  rankdir=BT;"]
    lines += [f"  {_dot_id(v)};" for v in names]
    lines += [f"  {_dot_id(a)} -> {_dot_id(b)};" for a, b in edges]
    lines.append("}")
    return "\n".join(lines) + "\n"
