"""Points, prime elements, finite spaces and the frame/space adjunction."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import InvalidTopology, RoundTripFailure, UnknownElement
from .frame import Frame, as_arity, compact_mask
from .poset import FinitePoset, bits, find_isomorphism, popcount, set_name
from .report import Report


def prime_mask(F: Frame) -> int:
    """Prime elements: ``p != 1`` and ``a ∧ b <= p`` implies ``a <= p`` or ``b <= p``."""
    out = 0
    n = len(F)
    for p in range(n):
        if p == F.top:
            continue
        below = F.down(p)
        ok = True
        for a in range(n):
            if below >> a & 1:
                continue
            for b in range(n):
                if not below >> b & 1 and below >> F.meet(a, b) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out |= 1 << p
    return out


def prime_elements(F: Frame) -> frozenset[str]:
    return frozenset(F.names(prime_mask(F)))


@dataclass(frozen=True)
class Point:
    """A point of a frame, stored by its prime element."""

    frame: Frame
    prime: int

    @property
    def name(self) -> str:
        return "x_" + self.frame.name(self.prime)

    def __call__(self, a: int) -> int:
        """Value of the point ``F -> {0, 1}`` at element index ``a``."""
        return 0 if self.frame.le(a, self.prime) else 1

    def table(self) -> tuple[int, ...]:
        return tuple(self(a) for a in range(len(self.frame)))


def points(F: Frame, oracle: bool = False) -> list[Point]:
    """One point per prime element, in element order.

    With ``oracle=True`` every map ``F -> {0,1}`` is enumerated and the frame
    morphisms among them are checked to biject with the primes via
    ``x ↦ ∨ x⁻¹(0)``.
    """
    pts = [Point(F, p) for p in bits(prime_mask(F))]
    if oracle:
        morphisms = frame_morphisms_to_two(F)
        from_maps = sorted(F.join_all(sum(1 << a for a in range(len(F)) if x[a] == 0)) for x in morphisms)
        if from_maps != [p.prime for p in pts]:
            raise RoundTripFailure("frame morphisms to {0,1} do not biject with primes", from_maps)
        if sorted(morphisms) != sorted(p.table() for p in pts):
            raise RoundTripFailure("point tables disagree with enumerated morphisms", None)
    return pts


def frame_morphisms_to_two(F: Frame) -> list[tuple[int, ...]]:
    """All maps ``F -> {0,1}`` preserving bounds, binary joins and binary meets."""
    n = len(F)
    out = []
    for values in product((0, 1), repeat=n):
        if values[F.bottom] != 0 or values[F.top] != 1:
            continue
        if all(
            values[F.join(a, b)] == (values[a] | values[b]) and values[F.meet(a, b)] == (values[a] & values[b])
            for a in range(n)
            for b in range(a + 1, n)
        ):
            out.append(values)
    return out


def open_of(F: Frame, a: int, pts: Sequence[Point] | None = None) -> int:
    """``U(a)`` as a bitmask over ``pts`` (default: :func:`points` order)."""
    pts = points(F) if pts is None else pts
    return sum(1 << i for i, x in enumerate(pts) if x(a))


class FiniteSpace:
    """A finite topological space given by its family of open sets (bitmasks)."""

    __slots__ = ("points", "opens", "_index")

    def __init__(self, points: Iterable[str], opens: Iterable[int]):
        self.points = tuple(points)
        if len(set(self.points)) != len(self.points):
            raise InvalidTopology("duplicate point names", None)
        self._index = {p: i for i, p in enumerate(self.points)}
        self.opens = frozenset(opens)
        verdict = _topology_violation(len(self.points), self.opens)
        if verdict is not None:
            raise InvalidTopology(verdict[0], tuple(set_name(self.points, m) for m in verdict[1]))

    @classmethod
    def from_names(cls, points: Sequence[str], opens: Iterable[Iterable[str]]) -> FiniteSpace:
        index = {p: i for i, p in enumerate(points)}
        masks = []
        for U in opens:
            m = 0
            for name in U:
                if name not in index:
                    raise UnknownElement(f"open set references unknown point {name!r}")
                m |= 1 << index[name]
            masks.append(m)
        return cls(points, masks)

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self.points == other.points and self.opens == other.opens

    def __hash__(self) -> int:
        return hash((self.points, self.opens))

    def __repr__(self) -> str:
        return f"FiniteSpace({len(self.points)} points, {len(self.opens)} opens)"

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownElement(f"unknown point {name!r}") from None

    def label(self, mask: int) -> str:
        return set_name(self.points, mask)

    def sorted_opens(self) -> list[int]:
        return sorted(self.opens, key=lambda m: (popcount(m), m))

    def closed_sets(self) -> list[int]:
        return sorted((self.full & ~U for U in self.opens), key=lambda m: (popcount(m), m))

    def closure(self, mask: int) -> int:
        """Smallest closed set containing ``mask``."""
        out = self.full
        for U in self.opens:
            if U & mask == 0:
                out &= ~U
        return out

    def interior(self, mask: int) -> int:
        out = 0
        for U in self.opens:
            if U & ~mask == 0:
                out |= U
        return out

    def specialization(self) -> FinitePoset:
        """Preorder ``x <= y`` iff ``y ∈ cl(x)``; a partial order exactly for T0 spaces."""
        n = len(self.points)
        leq = [[bool(self.closure(1 << i) >> j & 1) for j in range(n)] for i in range(n)]
        return FinitePoset(self.points, leq)

    def is_open(self, mask: int) -> bool:
        return mask in self.opens

    def is_closed(self, mask: int) -> bool:
        return (self.full & ~mask) in self.opens


def _topology_violation(n: int, opens: frozenset[int]):
    full = (1 << n) - 1
    if 0 not in opens:
        return ("empty set is not open", ())
    if full not in opens:
        return ("whole space is not open", ())
    for U in opens:
        if U & ~full:
            return ("open set mentions points outside the space", (U,))
    ops = sorted(opens)
    for i, U in enumerate(ops):
        for V in ops[i + 1 :]:
            if U | V not in opens:
                return ("not closed under union", (U, V))
            if U & V not in opens:
                return ("not closed under intersection", (U, V))
    return None


def point_space(F: Frame) -> FiniteSpace:
    """The space of points with opens ``U(a) = {x : x(a) = 1}``."""
    pts = points(F)
    opens = {open_of(F, a, pts) for a in range(len(F))}
    return FiniteSpace([x.name for x in pts], opens)


def is_spatial(F: Frame) -> Report:
    """Enough points: every ``a ≰ b`` is separated by some point; witness is the pair."""
    primes = list(bits(prime_mask(F)))
    n = len(F)
    for a in range(n):
        for b in range(n):
            if F.le(a, b):
                continue
            if not any(not F.le(a, p) and F.le(b, p) for p in primes):
                return Report(False, (F.name(a), F.name(b)))
    return Report(True)


def omega(X: FiniteSpace) -> Frame:
    """The frame of open sets ordered by inclusion."""
    opens = X.sorted_opens()
    return Frame.from_sets(opens, [X.label(U) for U in opens])


def is_sober(X: FiniteSpace) -> Report:
    """Every irreducible closed set has exactly one generic point; witness is the set."""
    closed = X.closed_sets()
    closed_set = set(closed)
    for V in closed:
        if V == 0:
            continue
        proper = [W for W in closed if W != V and W & ~V == 0]
        reducible = any(A | B == V for A in proper for B in proper)
        if reducible:
            continue
        generic = [x for x in bits(V) if X.closure(1 << x) == V]
        if len(generic) != 1:
            return Report(False, X.label(V), {"generic_points": [X.points[g] for g in generic]})
    assert closed_set  # always contains the empty set and the whole space
    return Report(True)


def unit_map(X: FiniteSpace) -> tuple[Frame, list[int]]:
    """``X -> pt(Ω(X))``: each point goes to the prime open ``X \\ cl(x)``.

    Returns the frame ``Ω(X)`` and, per point of ``X``, the index of the image
    point in ``points(Ω(X))``.
    """
    F = omega(X)
    pts = points(F)
    prime_pos = {x.prime: i for i, x in enumerate(pts)}
    opens = X.sorted_opens()
    pos_of_open = {U: i for i, U in enumerate(opens)}
    image = []
    for x in range(len(X)):
        complement = X.full & ~X.closure(1 << x)
        elem = pos_of_open[complement]
        image.append(prime_pos.get(elem, -1))
    return F, image


def unit_check(X: FiniteSpace) -> Report:
    """For sober ``X`` the unit ``X -> pt(Ω(X))`` is a homeomorphism."""
    if not is_sober(X):
        raise RoundTripFailure("space is not sober", is_sober(X).witness)
    F, image = unit_map(X)
    if -1 in image:
        raise RoundTripFailure("X \\ cl(x) is not prime", X.points[image.index(-1)])
    if sorted(image) != list(range(len(points(F)))):
        raise RoundTripFailure("unit is not bijective", image)
    target = point_space(F)
    opens = X.sorted_opens()
    pushed = set()
    for U in opens:
        pushed.add(sum(1 << image[x] for x in bits(U)))
    if pushed != set(target.opens):
        raise RoundTripFailure("unit is not a homeomorphism", None)
    return Report(True, None, {"points": len(X), "opens": len(opens)})


def counit_check(F: Frame) -> Report:
    """For spatial ``F`` the comparison ``a ↦ U(a)`` is a frame isomorphism."""
    verdict = is_spatial(F)
    if not verdict:
        raise RoundTripFailure("frame is not spatial", verdict.witness)
    X = point_space(F)
    pts = points(F)
    images = [open_of(F, a, pts) for a in range(len(F))]
    if len(set(images)) != len(images):
        raise RoundTripFailure("a ↦ U(a) is not injective", None)
    for a in range(len(F)):
        for b in range(len(F)):
            if images[F.join(a, b)] != images[a] | images[b]:
                raise RoundTripFailure("U(a ∨ b) != U(a) ∪ U(b)", (F.name(a), F.name(b)))
            if images[F.meet(a, b)] != images[a] & images[b]:
                raise RoundTripFailure("U(a ∧ b) != U(a) ∩ U(b)", (F.name(a), F.name(b)))
    if set(images) != set(X.opens):
        raise RoundTripFailure("a ↦ U(a) is not surjective", None)
    G = omega(X)
    if find_isomorphism(F.poset, G.poset) is None:
        raise RoundTripFailure("Ω(pt(F)) is not isomorphic to F", None)
    return Report(True, None, {"elements": len(F), "points": len(pts)})


def compact_opens(X: FiniteSpace, arity) -> int:
    """k-compact opens of ``X`` as a bitmask over ``X.sorted_opens()``."""
    return compact_mask(omega(X), arity)


def spectral_check(F: Frame, arity) -> Report:
    """For a k-coherent spatial frame, ``pt(F)`` is k-spectral (SP1-SP3, sober).

    The k-compact opens must be exactly the images ``U(a)`` of k-compact ``a``.
    """
    from .frame import is_k_coherent

    arity = as_arity(arity)
    coherent = is_k_coherent(F, arity)
    if not coherent:
        raise RoundTripFailure("frame is not k-coherent", coherent.witness)
    X = point_space(F)
    if not is_sober(X):
        raise RoundTripFailure("space of points is not sober", None)
    opens = X.sorted_opens()
    OX = omega(X)
    comp = compact_mask(OX, arity)
    compact_sets = {opens[i] for i in bits(comp)}
    pts = points(F)
    expected = {open_of(F, a, pts) for a in bits(compact_mask(F, arity))}
    if compact_sets != expected:
        raise RoundTripFailure("compact opens differ from images of compact elements", None)
    for U in opens:
        if not _union_of(U, compact_sets):
            raise RoundTripFailure("SP1 fails: open is not a union of compact opens", X.label(U))
    if X.full not in compact_sets:
        raise RoundTripFailure("SP2 fails: space is not k-compact", None)
    cs = sorted(compact_sets)
    for U in cs:
        for V in cs:
            if U & V not in compact_sets:
                raise RoundTripFailure("SP3 fails: intersection", (X.label(U), X.label(V)))
    if not arity.is_omega:
        from itertools import combinations

        for size in range(2, arity.k):
            for combo in combinations(cs, size):
                union = 0
                for U in combo:
                    union |= U
                if union not in compact_sets:
                    raise RoundTripFailure("SP3 fails: union", tuple(X.label(U) for U in combo))
    return Report(True, None, {"compact_opens": [X.label(U) for U in cs]})


def _union_of(target: int, family: Iterable[int]) -> bool:
    acc = 0
    for U in family:
        if U & ~target == 0:
            acc |= U
    return acc == target


def stone_round_trip(X: FiniteSpace | None = None, F: Frame | None = None, arity=None) -> Report:
    """Run whichever of the unit / counit / spectral checks the arguments allow."""
    details = {}
    if X is not None:
        details["unit"] = unit_check(X)
    if F is not None:
        details["counit"] = counit_check(F)
        if arity is not None:
            details["spectral"] = spectral_check(F, arity)
    return Report(True, None, details)
