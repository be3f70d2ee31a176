"""Prime ideals and Hochster duality for finite (hence coherent) frames."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CorrespondenceFailure, InvolutionFailure, NotDistributive
from .frame import OMEGA, Frame, Ideal, as_arity, compact_mask, k_ideals
from .poset import LatticeCert, bits, find_isomorphism, is_distributive
from .report import Report
from .stone import FiniteSpace, point_space, points, prime_mask


@dataclass(frozen=True)
class PrimeIdeal:
    carrier: Ideal

    @property
    def names(self) -> tuple[str, ...]:
        return self.carrier.names


def _is_prime_ideal(L: LatticeCert, mask: int) -> bool:
    if mask >> L.top & 1:
        return False
    n = len(L)
    for a in range(n):
        if mask >> a & 1:
            continue
        for b in range(n):
            if not mask >> b & 1 and mask >> int(L.meet[a, b]) & 1:
                return False
    return True


def prime_ideals(L) -> list[PrimeIdeal]:
    """Prime ideals of a distributive lattice, cross-checked against the primes of ``Idl(L)``."""
    if isinstance(L, Frame):
        L = L.lattice
    verdict = is_distributive(L)
    if not verdict:
        raise NotDistributive("prime ideals need a distributive lattice", verdict.witness)
    IL = k_ideals(L.base, OMEGA)
    found = [m for m in IL.ideals if _is_prime_ideal(L, m)]
    IF = IL.frame()
    as_elements = [IL.ideals[i] for i in bits(prime_mask(IF))]
    if sorted(found) != sorted(as_elements):
        raise NotDistributive("prime ideals disagree with prime elements of Idl(L)", None)
    return [PrimeIdeal(IL.ideal(m)) for m in found]


@dataclass(frozen=True)
class DualFrame:
    frame: Frame
    source: Frame


def hochster_dual(F: Frame) -> DualFrame:
    """``Idl((compacts F)^op)``; for finite ``F`` every element is compact."""
    comp = compact_mask(F, OMEGA)
    opposite = F.poset.subposet(comp).dual()
    dual = k_ideals(opposite, OMEGA).frame()
    return DualFrame(dual, F)


def double_dual_check(F: Frame) -> Report:
    dd = hochster_dual(hochster_dual(F).frame).frame
    iso = find_isomorphism(dd.poset, F.poset)
    if iso is None:
        raise InvolutionFailure("double dual is not isomorphic to the frame", len(dd))
    return Report(True, None, {"elements": len(F)})


def dual_point_bijection(F: Frame) -> dict[str, str]:
    """``pt(F) -> pt(F^∨)`` sending ``x`` to the point whose prime is the complement of ``↓p_x``.

    Also asserts the bijection reverses the specialization order.
    """
    D = hochster_dual(F).frame
    pts = points(F)
    dual_pts = points(D)
    by_prime = {D.poset.elements[x.prime]: x for x in dual_pts}
    comp = compact_mask(F, OMEGA)
    out: dict[str, str] = {}
    image = []
    for x in pts:
        complement = comp & ~F.down(x.prime)
        label = "{" + ",".join(F.name(i) for i in bits(complement)) + "}"
        if label not in by_prime:
            raise CorrespondenceFailure("complement of a prime ideal is not a dual prime", x.name)
        out[x.name] = by_prime[label].name
        image.append(by_prime[label].prime)
    if len(set(out.values())) != len(out) or len(out) != len(dual_pts):
        raise CorrespondenceFailure("dual point map is not bijective", out)
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            if F.le(x.prime, y.prime) != D.le(image[j], image[i]):
                raise CorrespondenceFailure("specialization is not reversed", (x.name, y.name))
    return out


def thomason_subsets(X: FiniteSpace, arity=OMEGA) -> set[int]:
    """Unions of closed sets whose open complement is k-compact."""
    from .stone import compact_opens

    opens = X.sorted_opens()
    compact = {opens[i] for i in bits(compact_opens(X, arity))}
    generators = {X.full & ~U for U in compact}
    out = {0}
    frontier = {0}
    while frontier:
        fresh = set()
        for S in frontier:
            for V in generators:
                if S | V not in out:
                    fresh.add(S | V)
        out |= fresh
        frontier = fresh
    return out


def thomason_correspondence(F: Frame, arity=OMEGA) -> Report:
    """Thomason subsets of ``pt(F)`` correspond to the opens of ``pt(F^∨)``."""
    arity = as_arity(arity)
    X = point_space(F)
    D = hochster_dual(F).frame
    Y = point_space(D)
    bij = dual_point_bijection(F)
    where = [Y.index(bij[name]) for name in X.points]
    thomason = thomason_subsets(X, arity)
    pushed = {sum(1 << where[i] for i in bits(S)) for S in thomason}
    if pushed != set(Y.opens):
        extra = sorted(Y.label(S) for S in pushed - set(Y.opens))
        missing = sorted(Y.label(S) for S in set(Y.opens) - pushed)
        raise CorrespondenceFailure(
            "Thomason subsets do not match dual opens", {"extra": extra, "missing": missing}
        )
    return Report(
        True,
        None,
        {
            "thomason": sorted(X.label(S) for S in thomason),
            "dual_opens": sorted(Y.label(U) for U in Y.opens),
        },
    )
