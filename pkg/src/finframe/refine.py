"""Specialization order, honest and locally closed points, height, and
refinement of the point topology along injective frame morphisms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import (
    HypothesisViolated,
    InvalidMorphism,
    LemmaFailure,
    PropositionFailure,
    StageFailure,
)
from .frame import Frame, as_arity, compact_mask, is_k_coherent
from .poset import FinitePoset, bits
from .report import Report
from .stone import Point, is_spatial, open_of, point_space, points


class FrameMorphism:
    """A map of finite frames preserving bounds, binary joins and binary meets."""

    __slots__ = ("source", "target", "table")

    def __init__(self, source: Frame, target: Frame, table: Sequence[int], check: bool = True):
        self.source = source
        self.target = target
        self.table = tuple(int(v) for v in table)
        if len(self.table) != len(source):
            raise InvalidMorphism("table length differs from source size", len(self.table))
        if check:
            witness = morphism_violation(source, target, self.table)
            if witness is not None:
                raise InvalidMorphism("not a frame morphism", witness)

    @classmethod
    def from_mapping(cls, source: Frame, target: Frame, mapping: Mapping[str, str]) -> FrameMorphism:
        missing = [a for a in source.elements if a not in mapping]
        if missing:
            raise InvalidMorphism("mapping is not total", missing[0])
        return cls(source, target, [target.index(mapping[a]) for a in source.elements])

    @classmethod
    def identity(cls, F: Frame) -> FrameMorphism:
        return cls(F, F, range(len(F)), check=False)

    def __call__(self, a: int) -> int:
        return self.table[a]

    def __repr__(self) -> str:
        return f"FrameMorphism({len(self.source)} -> {len(self.target)})"

    @property
    def injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    @property
    def surjective(self) -> bool:
        return set(self.table) == set(range(len(self.target)))

    def then(self, other: FrameMorphism) -> FrameMorphism:
        """``other ∘ self``."""
        if other.source != self.target:
            raise InvalidMorphism("morphisms are not composable", None)
        return FrameMorphism(self.source, other.target, [other.table[v] for v in self.table], check=False)

    def mapping(self) -> dict[str, str]:
        return {self.source.name(a): self.target.name(b) for a, b in enumerate(self.table)}


def morphism_violation(F: Frame, G: Frame, f: Sequence[int]):
    if f[F.bottom] != G.bottom:
        return ("bottom",)
    if f[F.top] != G.top:
        return ("top",)
    n = len(F)
    for a in range(n):
        for b in range(a + 1, n):
            if f[F.join(a, b)] != G.join(f[a], f[b]):
                return ("join", F.name(a), F.name(b))
            if f[F.meet(a, b)] != G.meet(f[a], f[b]):
                return ("meet", F.name(a), F.name(b))
    return None


def frame_morphisms(F: Frame, G: Frame, fixed: Mapping[int, int] | None = None) -> list[FrameMorphism]:
    """Every frame morphism ``F -> G`` agreeing with ``fixed``, by backtracking.

    Elements are assigned bottom-up, so joins are checked once both arguments
    are placed and meets as soon as the larger argument is.
    """
    fixed = dict(fixed or {})
    for a, v in ((F.bottom, G.bottom), (F.top, G.top)):
        if fixed.setdefault(a, v) != v:
            return []
    order = F.poset.linear_extension()
    n = len(F)
    value = [-1] * n
    out: list[FrameMorphism] = []

    def ok(c: int) -> bool:
        vc = value[c]
        for a in range(n):
            va = value[a]
            if va < 0:
                continue
            if F.le(a, c) and not G.le(va, vc):
                return False
            if F.le(c, a) and not G.le(vc, va):
                return False
            j, m = F.join(a, c), F.meet(a, c)
            if value[j] >= 0 and value[j] != G.join(va, vc):
                return False
            if value[m] >= 0 and value[m] != G.meet(va, vc):
                return False
            # c may itself be the join or meet of two already placed elements
            for b in range(a + 1, n):
                vb = value[b]
                if vb < 0:
                    continue
                if F.join(a, b) == c and vc != G.join(va, vb):
                    return False
                if F.meet(a, b) == c and vc != G.meet(va, vb):
                    return False
        return True

    def rec(pos: int):
        if pos == n:
            out.append(FrameMorphism(F, G, value, check=False))
            return
        c = order[pos]
        candidates = [fixed[c]] if c in fixed else range(len(G))
        for v in candidates:
            value[c] = v
            if ok(c):
                rec(pos + 1)
            value[c] = -1

    rec(0)
    for phi in out:
        assert morphism_violation(F, G, phi.table) is None
    return out


# points and the specialization order ------------------------------------------


def specialization_order(F: Frame) -> FinitePoset:
    """Points ordered by ``x <= y`` iff ``p_x <= p_y``; checked against closures in ``pt(F)``."""
    pts = points(F)
    n = len(pts)
    leq = [[F.le(pts[i].prime, pts[j].prime) for j in range(n)] for i in range(n)]
    P = FinitePoset([x.name for x in pts], leq)
    X = point_space(F)
    for i in range(n):
        cl = X.closure(1 << i)
        if cl != P.up(i):
            raise LemmaFailure("cl(x) differs from {y : x <= y}", pts[i].name)
    return P


def point_map(phi: FrameMorphism) -> list[int]:
    """``pt(φ)`` on point indices: target point ``x`` goes to the source point with
    prime ``∨{a : φ(a) <= p_x}``."""
    src_pts = points(phi.source)
    where = {x.prime: i for i, x in enumerate(src_pts)}
    out = []
    for x in points(phi.target):
        below = sum(1 << a for a in range(len(phi.source)) if phi.target.le(phi(a), x.prime))
        p = phi.source.join_all(below)
        if p not in where:
            raise InvalidMorphism("pulled-back element is not prime", phi.source.name(p))
        out.append(where[p])
    return out


def pt_of_morphism(phi: FrameMorphism) -> dict[str, str]:
    """``pt(φ): pt(target) -> pt(source)`` by point names; asserts it preserves order."""
    src_pts, tgt_pts = points(phi.source), points(phi.target)
    image = point_map(phi)
    for i, x in enumerate(tgt_pts):
        for j, y in enumerate(tgt_pts):
            if phi.target.le(x.prime, y.prime) and not phi.source.le(
                src_pts[image[i]].prime, src_pts[image[j]].prime
            ):
                raise LemmaFailure("pt(φ) does not preserve the specialization order", (x.name, y.name))
    return {x.name: src_pts[image[i]].name for i, x in enumerate(tgt_pts)}


def is_honest(phi: FrameMorphism, x: Point | str) -> bool:
    """Whether ``φ(p_y) = p_x`` for ``y = pt(φ)(x)``."""
    if isinstance(x, str):
        x = next(p for p in points(phi.target) if p.name == x)
    below = sum(1 << a for a in range(len(phi.source)) if phi.target.le(phi(a), x.prime))
    p_y = phi.source.join_all(below)
    return phi(p_y) == x.prime


def is_locally_closed(F: Frame, x: Point | str) -> Report:
    """Find an element ``a`` with ``x`` maximal in ``U(a)``; the witness is its name."""
    pts = points(F)
    if isinstance(x, str):
        x = next(p for p in pts if p.name == x)
    i = [p.prime for p in pts].index(x.prime)
    above = sum(1 << j for j, y in enumerate(pts) if j != i and F.le(x.prime, y.prime))
    for a in F.poset.linear_extension():
        U = open_of(F, a, pts)
        if U >> i & 1 and U & above == 0:
            return Report(True, F.name(a))
    return Report(False, x.name)


def all_locally_closed(F: Frame) -> Report:
    for x in points(F):
        verdict = is_locally_closed(F, x)
        if not verdict:
            return verdict
    return Report(True)


def downset_open_check(F: Frame, arity) -> Report:
    """For each point ``x``, the meet ``a`` of the compacts with ``x(a)=1`` has ``U(a) = ↓x``."""
    arity = as_arity(arity)
    coherent = is_k_coherent(F, arity)
    if not coherent:
        raise HypothesisViolated("frame is not k-coherent", coherent.witness)
    comp = compact_mask(F, arity)
    pts = points(F)
    witnesses = {}
    for i, x in enumerate(pts):
        A = sum(1 << b for b in bits(comp) if x(b) == 1)
        a = F.meet_all(A)
        if not comp >> a & 1:
            raise LemmaFailure("meet of compacts is not compact", x.name)
        U = open_of(F, a, pts)
        downset = sum(1 << j for j, y in enumerate(pts) if F.le(y.prime, x.prime))
        if U != downset:
            raise LemmaFailure("U(a) differs from the down-set of the point", x.name)
        witnesses[x.name] = F.name(a)
    return Report(True, None, {"opens": witnesses})


# the refinement machinery -------------------------------------------------------


def _bijective(mapping: list[int], size: int) -> bool:
    return sorted(mapping) == list(range(size))


def _injective(mapping: list[int]) -> bool:
    return len(set(mapping)) == len(mapping)


def strongly_visible_check(phi: FrameMorphism) -> Report:
    """If ``pt(φ)`` is injective and every source point is locally closed, so is every target point."""
    if not _injective(point_map(phi)) or not all_locally_closed(phi.source):
        return Report(True, None, {"applicable": False})
    verdict = all_locally_closed(phi.target)
    if not verdict:
        raise LemmaFailure("target point is not locally closed", verdict.witness)
    return Report(True, None, {"applicable": True})


def maximal_honest_check(phi: FrameMorphism) -> Report:
    """If ``pt(φ)`` is injective on spatial frames, preimages of maximal points are honest."""
    image = point_map(phi)
    if not _injective(image) or not is_spatial(phi.source) or not is_spatial(phi.target):
        return Report(True, None, {"applicable": False})
    src = points(phi.source)
    maximal = {
        j for j, y in enumerate(src) if not any(k != j and phi.source.le(y.prime, z.prime) for k, z in enumerate(src))
    }
    checked = 0
    for i, x in enumerate(points(phi.target)):
        if image[i] in maximal:
            checked += 1
            if not is_honest(phi, x):
                raise LemmaFailure("preimage of a maximal point is not honest", x.name)
    return Report(True, None, {"applicable": True, "checked": checked})


def bij_points_check(phi: FrameMorphism, psi: FrameMorphism) -> Report:
    """``pt(φ)`` and ``pt(ψ)`` are bijective iff ``pt(ψ∘φ)`` is, for injective maps of
    spatial frames whose first frame has only locally closed points."""
    if phi.target != psi.source:
        raise HypothesisViolated("morphisms are not composable", None)
    if not phi.injective:
        raise HypothesisViolated("φ is not injective", "phi")
    if not psi.injective:
        raise HypothesisViolated("ψ is not injective", "psi")
    for label, F in (("F", phi.source), ("G", phi.target), ("H", psi.target)):
        if not is_spatial(F):
            raise HypothesisViolated(f"{label} is not spatial", label)
    if not all_locally_closed(phi.source):
        raise HypothesisViolated("F has a point that is not locally closed", "F")
    comp = phi.then(psi)
    m_phi, m_psi, m_comp = point_map(phi), point_map(psi), point_map(comp)
    if m_comp != [m_phi[j] for j in m_psi]:
        raise PropositionFailure("pt is not functorial on this pair", None)
    nF, nG = len(points(phi.source)), len(points(phi.target))
    left = _bijective(m_phi, nF) and _bijective(m_psi, nG)
    right = _bijective(m_comp, nF)
    if left != right:
        raise PropositionFailure("bijectivity of the factors and the composite disagree", (left, right))
    sub = {
        "strongly_visible_phi": strongly_visible_check(phi).details,
        "strongly_visible_comp": strongly_visible_check(comp).details,
        "maximal_honest_phi": maximal_honest_check(phi).details,
        "maximal_honest_psi": maximal_honest_check(psi).details,
        "maximal_honest_comp": maximal_honest_check(comp).details,
    }
    return Report(True, None, {"bijective": right, **sub})


# height and dimension -------------------------------------------------------------


def height(F: Frame) -> dict[str, int]:
    """``het(x) = sup{het(y) + 1 : y < x}`` with ``sup ∅ = 0``."""
    P = specialization_order(F)
    het = [0] * len(P)
    for i in P.linear_extension():
        below = P.down(i) & ~(1 << i)
        het[i] = max((het[j] + 1 for j in bits(below)), default=0)
    return {P.elements[i]: het[i] for i in range(len(P))}


def dimension(F: Frame, a: str | int) -> int | None:
    """Largest height of a point in ``U(a)``; ``None`` when ``U(a)`` is empty."""
    a = F.index(a) if isinstance(a, str) else a
    het = height(F)
    pts = points(F)
    U = open_of(F, a, pts)
    values = [het[pts[i].name] for i in bits(U)]
    return max(values) if values else None


def dimension_table(F: Frame) -> dict[str, int | None]:
    """Dimension of every element; asserts monotonicity in the element."""
    het = height(F)
    pts = points(F)
    dims = []
    for a in range(len(F)):
        U = open_of(F, a, pts)
        vals = [het[pts[i].name] for i in bits(U)]
        dims.append(max(vals) if vals else None)
    for a in range(len(F)):
        for b in range(len(F)):
            if F.le(a, b) and dims[a] is not None and (dims[b] is None or dims[a] > dims[b]):
                raise LemmaFailure("dimension is not order preserving", (F.name(a), F.name(b)))
    return {F.name(a): dims[a] for a in range(len(F))}


# stratification chains ---------------------------------------------------------------


@dataclass(frozen=True)
class StratChain:
    links: tuple[FrameMorphism, ...]

    def __post_init__(self):
        if not self.links:
            raise ValueError("a chain needs at least one morphism")
        for i, (a, b) in enumerate(zip(self.links, self.links[1:])):
            if a.target != b.source:
                raise HypothesisViolated(f"links {i} and {i + 1} are not composable", i)

    @property
    def frames(self) -> list[Frame]:
        return [self.links[0].source] + [phi.target for phi in self.links]

    def composite(self, start: int = 0, stop: int | None = None) -> FrameMorphism:
        """Composite of links ``start .. stop-1`` (identity when empty)."""
        stop = len(self.links) if stop is None else stop
        if start == stop:
            return FrameMorphism.identity(self.frames[start])
        out = self.links[start]
        for phi in self.links[start + 1 : stop]:
            out = out.then(phi)
        return out


def strat_chain_check(chain: StratChain) -> Report:
    """Every stage point map is bijective and the topology on the common points only refines."""
    frames = chain.frames
    for i, phi in enumerate(chain.links):
        if not phi.injective:
            raise HypothesisViolated(f"link {i} is not injective", i)
    for i, F in enumerate(frames):
        if not is_spatial(F):
            raise HypothesisViolated(f"frame {i} is not spatial", i)
    if not all_locally_closed(frames[0]):
        raise HypothesisViolated("base frame has a point that is not locally closed", 0)
    n = len(frames) - 1
    total = chain.composite(0, n)
    base_points = len(points(frames[0]))
    if not _bijective(point_map(total), base_points):
        raise HypothesisViolated("composite point map is not bijective", None)
    for i in range(1, n):
        bij_points_check(chain.composite(0, i), chain.composite(i, n))
    for i, phi in enumerate(chain.links):
        if not _bijective(point_map(phi), len(points(phi.source))):
            raise StageFailure(f"point map of link {i} is not bijective", i)
    top = frames[-1]
    top_pts = points(top)
    stages = []
    previous = None
    for i, F in enumerate(frames):
        to_top = chain.composite(i, n)
        opens = frozenset(open_of(top, to_top(a), top_pts) for a in range(len(F)))
        if previous is not None and not previous <= opens:
            raise StageFailure(f"topology at stage {i} is not a refinement", i)
        stages.append(
            {
                "stage": i,
                "opens": len(opens),
                "refined": previous is not None and previous != opens,
            }
        )
        previous = opens
    first = frozenset(open_of(top, total(a), top_pts) for a in range(len(frames[0])))
    return Report(
        True,
        None,
        {
            "points": [x.name for x in top_pts],
            "stages": stages,
            "homeomorphism": first == previous,
        },
    )
