"""Finite frames, join arities, k-ideals and the ideal completion.

Regular cardinals are modelled by a finite join arity ``k`` (joins of fewer than
``k`` elements) together with :data:`OMEGA`, "all finite joins". On finite data
every infinite regular cardinal behaves like ``OMEGA``; finite arities are a
surrogate that keeps arity-dependent phenomena visible on desk-sized examples.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


from .errors import (
    AdjunctionFailure,
    AscentFailure,
    NoBottom,
    NotDistributive,
    RoundTripFailure,
)
from .poset import (
    FinitePoset,
    LatticeCert,
    as_lattice,
    bits,
    is_distributive,
    join_irreducible_mask,
    popcount,
    poset_from_sets,
    set_name,
)
from .report import Report


@dataclass(frozen=True, order=False)
class Arity:
    """Join arity: ``k`` admits joins of fewer than ``k`` elements; ``k=None`` is omega."""

    k: int | None = None

    def __post_init__(self):
        if self.k is not None and self.k < 2:
            raise ValueError(f"arity must be >= 2 or omega, got {self.k}")

    @classmethod
    def parse(cls, value: Arity | int | str | None) -> Arity:
        if isinstance(value, Arity):
            return value
        if value is None:
            return OMEGA
        if isinstance(value, str):
            text = value.strip().lower()
            if text in ("omega", "ω", "inf"):
                return OMEGA
            try:
                value = int(text)
            except ValueError:
                raise ValueError(f"arity must be an integer >= 2 or 'omega', got {value!r}") from None
        return cls(int(value))

    @property
    def is_omega(self) -> bool:
        return self.k is None

    def admits(self, size: int) -> bool:
        """Whether a join of ``size`` elements is a k-join."""
        return self.k is None or size < self.k

    def __le__(self, other: Arity) -> bool:
        other = Arity.parse(other)
        if other.k is None:
            return True
        return self.k is not None and self.k <= other.k

    def __str__(self) -> str:
        return "omega" if self.k is None else str(self.k)


OMEGA = Arity(None)


def as_arity(value) -> Arity:
    return Arity.parse(value)


class Frame:
    """A finite frame: a bounded distributive lattice.

    Finite frames are exactly finite distributive lattices, since all joins are
    finite and the infinite distributive law reduces to the binary one.
    """

    __slots__ = ("lattice", "_jimask", "_width", "_hash")

    def __init__(self, lattice: LatticeCert):
        verdict = is_distributive(lattice)
        if not verdict:
            raise NotDistributive("lattice is not distributive", verdict.witness)
        self.lattice = lattice
        self._jimask: int | None = None
        self._width: tuple[int, ...] | None = None
        self._hash = hash(lattice.base)

    @classmethod
    def from_poset(cls, P: FinitePoset) -> Frame:
        return cls(as_lattice(P))

    @classmethod
    def from_sets(cls, sets: Sequence[int], names: Sequence[str]) -> Frame:
        return cls.from_poset(poset_from_sets(sets, names))

    def __len__(self) -> int:
        return len(self.lattice)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Frame):
            return NotImplemented
        return self.poset == other.poset

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Frame({len(self)} elements)"

    @property
    def poset(self) -> FinitePoset:
        return self.lattice.base

    @property
    def elements(self) -> tuple[str, ...]:
        return self.lattice.base.elements

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @property
    def top(self) -> int:
        return self.lattice.top

    @property
    def full(self) -> int:
        return self.poset.full

    def index(self, name: str) -> int:
        return self.poset.index(name)

    def name(self, i: int) -> str:
        return self.elements[i]

    def mask(self, names: Iterable[str]) -> int:
        return self.poset.mask(names)

    def names(self, mask: int) -> tuple[str, ...]:
        return self.poset.names(mask)

    def le(self, i: int, j: int) -> bool:
        return bool(self.lattice.base.leq[i, j])

    def join(self, i: int, j: int) -> int:
        return int(self.lattice.join[i, j])

    def meet(self, i: int, j: int) -> int:
        return int(self.lattice.meet[i, j])

    def join_all(self, mask: int) -> int:
        return self.lattice.join_all(mask)

    def meet_all(self, mask: int) -> int:
        return self.lattice.meet_all(mask)

    def down(self, i: int) -> int:
        return self.poset.down(i)

    def up(self, i: int) -> int:
        return self.poset.up(i)

    @property
    def join_irreducible_mask(self) -> int:
        if self._jimask is None:
            self._jimask = join_irreducible_mask(self.lattice)
        return self._jimask

    def width(self, i: int) -> int:
        """Number of maximal join-irreducibles below element ``i``."""
        if self._width is None:
            ji = self.join_irreducible_mask
            self._width = tuple(
                popcount(self.poset.maximal(self.down(a) & ji)) for a in range(len(self))
            )
        return self._width[i]


# ideals ----------------------------------------------------------------------


@dataclass(frozen=True)
class Ideal:
    carrier: int
    base: FinitePoset
    arity: Arity

    @property
    def names(self) -> tuple[str, ...]:
        return self.base.names(self.carrier)

    @property
    def label(self) -> str:
        return set_name(self.base.elements, self.carrier)

    def __contains__(self, name: str) -> bool:
        return bool(self.carrier >> self.base.index(name) & 1)

    def __len__(self) -> int:
        return popcount(self.carrier)


def principal_ideal(P: FinitePoset, a: str) -> Ideal:
    """``↓a``, an ideal at every arity."""
    return Ideal(P.down(P.index(a)), P, OMEGA)


def _small_joins(P: FinitePoset, mask: int, arity: Arity) -> int:
    """Existing joins of antichains of size 2..k-1 inside ``mask``."""
    out = 0
    limit = None if arity.is_omega else arity.k - 1
    sub = P.subposet(mask) if mask != P.full else P
    idx = list(bits(mask))
    for ac in sub.antichains(limit):
        if popcount(ac) < 2:
            continue
        j = P.join_of(sum(1 << idx[i] for i in bits(ac)))
        if j is not None:
            out |= 1 << j
    return out


def is_k_ideal(P: FinitePoset, mask: int, arity) -> bool:
    """Non-empty, down-closed, closed under every existing join of fewer than k members."""
    arity = as_arity(arity)
    if mask == 0 or P.down_closure(mask) != mask:
        return False
    # the empty join is the bottom, if any; down-closed and non-empty covers it
    return _small_joins(P, mask, arity) & ~mask == 0


def ideal_closure(P: FinitePoset, mask: int, arity) -> int:
    """Least k-ideal containing ``mask``: alternate down-closure and k-joins to a fixpoint."""
    arity = as_arity(arity)
    b = P.bottom()
    if b is None:
        raise NoBottom("k-ideals are only defined over posets with a least element")
    current = P.down_closure(mask | 1 << b)
    while True:
        grown = P.down_closure(current | _small_joins(P, current, arity))
        if grown == current:
            return current
        current = grown


@dataclass(frozen=True)
class IdealLattice:
    base: FinitePoset
    arity: Arity
    ideals: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.ideals)

    @property
    def labels(self) -> list[str]:
        return [set_name(self.base.elements, m) for m in self.ideals]

    @property
    def poset(self) -> FinitePoset:
        return poset_from_sets(self.ideals, self.labels)

    def frame(self) -> Frame:
        """The ideals as a :class:`Frame`; raises :class:`NotDistributive` otherwise."""
        return Frame.from_poset(self.poset)

    def lattice(self) -> LatticeCert:
        return as_lattice(self.poset)

    def ideal(self, mask: int) -> Ideal:
        return Ideal(mask, self.base, self.arity)

    def position(self, mask: int) -> int:
        return self.ideals.index(mask)


def k_ideals(P: FinitePoset, arity) -> IdealLattice:
    """All k-ideals of ``P`` ordered by inclusion (``P`` must have a least element)."""
    arity = as_arity(arity)
    if P.bottom() is None:
        raise NoBottom("k-ideals are only defined over posets with a least element")
    found = [m for m in P.downsets() if m and is_k_ideal(P, m, arity)]
    return IdealLattice(P, arity, tuple(found))


@dataclass(frozen=True)
class IdealJoin:
    ideal: Ideal
    one_step: int
    one_step_agrees: bool


def ideal_join(IL: IdealLattice, C: Iterable[Ideal | int]) -> IdealJoin:
    """Least ideal containing the union of ``C``, computed as a closure fixpoint.

    Also reports the set of existing k-joins of subsets of the union and whether
    that single step already yields the fixpoint.
    """
    P, arity = IL.base, IL.arity
    union = 0
    for c in C:
        union |= c.carrier if isinstance(c, Ideal) else c
    fix = ideal_closure(P, union, arity)
    one = 0
    b = P.bottom()
    one |= 1 << b
    one |= union
    one |= _small_joins(P, union, arity)
    return IdealJoin(Ideal(fix, P, arity), one, one == fix)


# compactness and coherence -----------------------------------------------------


def _covers_refine(P: FinitePoset, a: int, A: int, arity: Arity) -> bool:
    """Some B ⊆ A with |B| < k whose join exists and lies above ``a``."""
    limit = popcount(A) if arity.is_omega else min(arity.k - 1, popcount(A))
    idx = list(bits(A))
    for size in range(limit + 1):
        for combo in combinations(idx, size):
            j = P.join_of(sum(1 << i for i in combo))
            if j is not None and P.le(a, j):
                return True
    return False


def compact_mask_poset(P: FinitePoset, arity, *, antichains_only: bool = True) -> int:
    """k-compact elements of a poset with partial joins, by exhaustive cover scan.

    With ``antichains_only`` the covers scanned are antichains: any ``A`` has the
    same join as its maximal elements, and a refinement found inside max(A) is a
    refinement inside ``A``. Without it every subset is scanned.
    """
    arity = as_arity(arity)
    if arity.is_omega:
        return P.full
    if antichains_only:
        covers = list(P.antichains())
    else:
        covers = range(1 << len(P))
    joins = [(A, P.join_of(A)) for A in covers]
    joins = [(A, j) for A, j in joins if j is not None]
    out = 0
    for a in range(len(P)):
        if all(_covers_refine(P, a, A, arity) for A, j in joins if P.le(a, j)):
            out |= 1 << a
    return out


def compact_mask(F: Frame, arity, method: str = "birkhoff") -> int:
    """k-compact elements of a finite frame as a bitmask.

    ``method="birkhoff"`` uses that, in a finite distributive lattice, ``a`` is
    k-compact iff fewer than k maximal join-irreducibles lie below it;
    ``"antichain"`` and ``"subsets"`` run the exhaustive cover scans.
    """
    arity = as_arity(arity)
    if arity.is_omega:
        return F.full
    if method == "birkhoff":
        return sum(1 << a for a in range(len(F)) if F.width(a) < arity.k)
    if method == "antichain":
        return compact_mask_poset(F.poset, arity)
    if method == "subsets":
        return compact_mask_poset(F.poset, arity, antichains_only=False)
    raise ValueError(f"unknown method {method!r}")


def k_compact_elements(F: Frame, arity, method: str = "birkhoff") -> frozenset[str]:
    return frozenset(F.names(compact_mask(F, arity, method)))


def is_k_coherent(F: Frame, arity) -> Report:
    """Conditions C1 (compacts generate), C2 (top compact), C3 (compacts closed).

    The witness of a failure is ``(condition, offending data)``.
    """
    arity = as_arity(arity)
    comp = compact_mask(F, arity)
    for a in range(len(F)):
        if F.join_all(F.down(a) & comp) != a:
            return Report(False, ("C1", F.name(a)), {"compacts": F.names(comp)})
    if not comp >> F.top & 1:
        return Report(False, ("C2", F.name(F.top)), {"compacts": F.names(comp)})
    idx = list(bits(comp))
    for a, b in combinations(idx, 2):
        m = F.meet(a, b)
        if not comp >> m & 1:
            return Report(False, ("C3-meet", (F.name(a), F.name(b))), {"compacts": F.names(comp)})
    if not arity.is_omega:
        for size in range(2, arity.k):
            for combo in combinations(idx, size):
                j = F.join_all(sum(1 << i for i in combo))
                if not comp >> j & 1:
                    return Report(
                        False, ("C3-join", tuple(F.name(i) for i in combo)), {"compacts": F.names(comp)}
                    )
    else:
        for a, b in combinations(idx, 2):
            if not comp >> F.join(a, b) & 1:
                return Report(False, ("C3-join", (F.name(a), F.name(b))), {"compacts": F.names(comp)})
    return Report(True, None, {"compacts": F.names(comp)})


def _as_frame(L) -> Frame:
    if isinstance(L, Frame):
        return L
    if isinstance(L, LatticeCert):
        return Frame(L)
    if isinstance(L, FinitePoset):
        return Frame.from_poset(L)
    raise TypeError(f"expected a lattice or frame, got {type(L).__name__}")


def compact_subposet(F: Frame, arity) -> FinitePoset:
    return F.poset.subposet(compact_mask(F, arity))


def completion_map(F: Frame, arity) -> tuple[IdealLattice, list[int]]:
    """The canonical map ``a ↦ {b compact : b <= a}`` into the completion of the compacts.

    Returns the ideal lattice of the compact sub-poset and, per element of ``F``,
    the position of its image in that lattice (-1 if the image is not an ideal).
    """
    arity = as_arity(arity)
    comp = compact_mask(F, arity)
    idx = list(bits(comp))
    sub = F.poset.subposet(comp)
    IL = k_ideals(sub, arity)
    pos = {m: i for i, m in enumerate(IL.ideals)}
    images = []
    for a in range(len(F)):
        img = 0
        for s, i in enumerate(idx):
            if F.le(i, a):
                img |= 1 << s
        images.append(pos.get(img, -1))
    return IL, images


def completion_round_trip(L, arity) -> Report:
    """Check both halves of the coherent-frame / distributive-lattice equivalence.

    (i) the compact elements of ``Idl_k(L)`` are exactly the principal ideals, and
    ``a ↦ ↓a`` is an order isomorphism onto them; (ii) when ``L`` is k-coherent as a
    frame, ``φ: L → Idl_k(L^k)`` is an order isomorphism. Raises
    :class:`RoundTripFailure` with a witness otherwise.
    """
    arity = as_arity(arity)
    F = _as_frame(L)
    P = F.poset
    IL = k_ideals(P, arity)
    IF = IL.frame()
    comp = compact_mask(IF, arity)
    principal = [P.down(a) for a in range(len(P))]
    pos = {m: i for i, m in enumerate(IL.ideals)}
    principal_pos = 0
    for a, m in enumerate(principal):
        if m not in pos:
            raise RoundTripFailure("principal ideal missing from the completion", P.elements[a])
        principal_pos |= 1 << pos[m]
    if comp != principal_pos:
        extra = IF.names(comp & ~principal_pos)
        missing = IF.names(principal_pos & ~comp)
        raise RoundTripFailure(
            "compact ideals differ from principal ideals", {"extra": extra, "missing": missing}
        )
    for a in range(len(P)):
        for b in range(len(P)):
            if P.le(a, b) != IF.le(pos[principal[a]], pos[principal[b]]):
                raise RoundTripFailure("a ↦ ↓a does not reflect the order", (P.elements[a], P.elements[b]))
    details: dict = {"ideals": len(IL), "compacts": len(IF.names(comp))}
    coherent = is_k_coherent(F, arity)
    details["coherent"] = coherent.ok
    if coherent:
        phi = _check_phi(F, arity)
        details["phi"] = phi
    return Report(True, None, details)


def _check_phi(F: Frame, arity: Arity) -> dict:
    IL, images = completion_map(F, arity)
    if -1 in images:
        raise RoundTripFailure("φ(a) is not a k-ideal", F.name(images.index(-1)))
    injective = len(set(images)) == len(images)
    surjective = set(images) == set(range(len(IL)))
    target = IL.poset
    preserving = all(
        F.le(a, b) == target.le(images[a], images[b]) for a in range(len(F)) for b in range(len(F))
    )
    if not injective:
        raise RoundTripFailure("φ is not injective", None)
    if not surjective:
        missing = sorted(set(range(len(IL))) - set(images))
        raise RoundTripFailure("φ is not surjective", IL.labels[missing[0]])
    if not preserving:
        raise RoundTripFailure("φ is not an order embedding", None)
    return {"injective": injective, "surjective": surjective, "order_preserving": preserving}


def is_lattice_morphism(L: LatticeCert, M: LatticeCert, f: Sequence[int], arity) -> Report:
    """``f`` preserves bounds, binary meets and joins of fewer than k elements."""
    arity = as_arity(arity)
    if f[L.bottom] != M.bottom or f[L.top] != M.top:
        return Report(False, ("bounds",))
    n = len(L)
    for a in range(n):
        for b in range(n):
            if f[L.meet[a, b]] != M.meet[f[a], f[b]]:
                return Report(False, ("meet", L.elements[a], L.elements[b]))
    sizes = [2] if arity.is_omega else range(2, arity.k)
    for size in sizes:
        for combo in combinations(range(n), size):
            mask = sum(1 << i for i in combo)
            image = 0
            for i in combo:
                image |= 1 << f[i]
            if f[L.join_all(mask)] != M.join_all(image):
                return Report(False, ("join",) + tuple(L.elements[i] for i in combo))
    return Report(True)


def adjunction_check(L, M, k, k2) -> Report:
    """Unit ``a ↦ ↓a`` and counit ``I ↦ ∨I`` of the free k'-completion of k-lattices.

    ``F(L) = compact_{k'}(Idl_k(L))``. Verifies that the unit is a morphism of
    k-distributive lattices, the counit is a well-defined morphism of
    k'-distributive lattices, and both triangle identities hold elementwise.
    """
    k, k2 = as_arity(k), as_arity(k2)
    if not k <= k2:
        raise ValueError("adjunction_check needs k <= k'")
    L, M = _as_frame(L), _as_frame(M)
    details = {}

    def free(F: Frame):
        IL = k_ideals(F.poset, k)
        IF = IL.frame()
        comp = compact_mask(IF, k2)
        sub = IF.poset.subposet(comp)
        lat = as_lattice(sub)
        ideal_of = [IL.ideals[i] for i in bits(comp)]
        return IL, IF, lat, ideal_of

    # unit at L
    IL_L, IF_L, FL, ideals_L = free(L)
    where = {m: i for i, m in enumerate(ideals_L)}
    unit = []
    for a in range(len(L)):
        m = L.down(a)
        if m not in where:
            raise AdjunctionFailure("↓a is not k'-compact in Idl_k(L)", L.name(a))
        unit.append(where[m])
    verdict = is_lattice_morphism(L.lattice, FL, unit, k)
    if not verdict:
        raise AdjunctionFailure("unit is not a morphism of k-distributive lattices", verdict.witness)
    # first triangle: ε_{F L} ∘ F(η_L) = id on F(L)
    IL_FL = FL.base
    for s, I in enumerate(ideals_L):
        gens = 0
        for a in bits(I):
            gens |= 1 << unit[a]
        generated = ideal_closure(IL_FL, gens, k)
        if FL.join_all(generated) != s:
            raise AdjunctionFailure("triangle identity fails on F(L)", set_name(L.elements, I))
    # counit at M
    IL_M, IF_M, FM, ideals_M = free(M)
    counit = [M.join_all(I) for I in ideals_M]
    verdict = is_lattice_morphism(FM, M.lattice, counit, k2)
    if not verdict:
        raise AdjunctionFailure("counit is not a morphism of k'-distributive lattices", verdict.witness)
    where_M = {m: i for i, m in enumerate(ideals_M)}
    for m in range(len(M)):
        d = M.down(m)
        if d not in where_M:
            raise AdjunctionFailure("↓m is not k'-compact in Idl_k(M)", M.name(m))
        if counit[where_M[d]] != m:
            raise AdjunctionFailure("triangle identity fails on M", M.name(m))
    details["free_L"] = len(FL)
    details["free_M"] = len(FM)
    return Report(True, None, details)


def ascent_check(F: Frame, k, k2) -> Report:
    """Compactness ascent between arities ``k <= k'`` on a k-coherent frame.

    (1) the k'-compacts are the joins of fewer than k' k-compacts, and ``F`` is
    k'-coherent; (2) the k-compacts of the sub-poset of k'-compacts are the
    k-compacts of ``F``.
    """
    k, k2 = as_arity(k), as_arity(k2)
    if not k <= k2:
        raise ValueError("ascent_check needs k <= k'")
    base = is_k_coherent(F, k)
    if not base:
        raise AscentFailure("frame is not k-coherent", base.witness)
    comp_k = compact_mask(F, k)
    comp_k2 = compact_mask(F, k2)
    idx = list(bits(comp_k))
    joins = 0
    top_size = len(idx) if k2.is_omega else min(k2.k - 1, len(idx))
    for size in range(top_size + 1):
        for combo in combinations(idx, size):
            joins |= 1 << F.join_all(sum(1 << i for i in combo))
    if joins != comp_k2:
        raise AscentFailure(
            "k'-compacts are not the k'-joins of k-compacts",
            {"joins": F.names(joins), "compacts": F.names(comp_k2)},
        )
    upper = is_k_coherent(F, k2)
    if not upper:
        raise AscentFailure("frame is not k'-coherent", upper.witness)
    sub = F.poset.subposet(comp_k2)
    inner = compact_mask_poset(sub, k)
    sub_idx = list(bits(comp_k2))
    inner_global = sum(1 << sub_idx[i] for i in bits(inner))
    if inner_global != comp_k:
        raise AscentFailure(
            "k-compacts of the k'-compact sublattice differ",
            {"inner": F.names(inner_global), "compacts": F.names(comp_k)},
        )
    return Report(True, None, {"k_compacts": F.names(comp_k), "k2_compacts": F.names(comp_k2)})
