"""Finite tensor-triangulated presentations and the frame of radical tensor ideals.

A presentation is a set of tables: a tensor product, a shift permutation,
declared exact triangles, a declared direct-summand relation and declared
coproducts. Every closure below uses only these tables. Subsets of objects are
bitmasks over the object positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    AdjunctionFailure,
    FrameFailure,
    HypothesisViolated,
    LemmaFailure,
    NotAnIdeal,
    NotDistributive,
    NotUnique,
    NotWellDefined,
    PropositionFailure,
    UnknownObject,
    ValidationFailure,
)
from .frame import OMEGA, Arity, Frame, as_arity, compact_mask
from .poset import bits, popcount, set_name
from .refine import FrameMorphism, frame_morphisms, morphism_violation, point_map
from .report import Report
from .stone import FiniteSpace, is_spatial, open_of, point_space, points, prime_mask


def _multiset_key(members: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(members))


class TTPresentation:
    """Objects, tensor table, unit, zero, shift, triangles, summands and coproducts.

    ``tensor[i, j]`` is the position of ``X_i ⊗ X_j`` (``-1`` marks a missing
    entry, reported by validation). ``shift[i]`` is the position of ``ΣX_i``.
    ``summands`` holds pairs ``(a, b)`` meaning ``a`` is a direct summand of ``b``;
    ``coproducts`` maps sorted member tuples to the coproduct object.
    """

    def __init__(
        self,
        objects: Sequence[str],
        unit: int,
        zero: int,
        tensor,
        shift: Sequence[int] | None = None,
        triangles: Iterable[tuple[int, int, int]] = (),
        summands: Iterable[tuple[int, int]] = (),
        coproducts: Mapping[tuple[int, ...], int] | None = None,
        check: bool = True,
    ):
        self.objects = tuple(objects)
        n = len(self.objects)
        self.unit = int(unit)
        self.zero = int(zero)
        table = np.asarray(tensor, dtype=np.int64).reshape(n, n)
        table.setflags(write=False)
        self.tensor = table
        self.shift = tuple(range(n)) if shift is None else tuple(int(s) for s in shift)
        self.triangles = tuple(sorted({tuple(int(v) for v in t) for t in triangles}))
        self.summands = frozenset((int(a), int(b)) for a, b in summands)
        self.coproducts = {_multiset_key(k): int(v) for k, v in (coproducts or {}).items()}
        self._cache: dict = {}
        self._derived = None
        if check:
            validate_presentation(self)

    # construction by names

    @classmethod
    def from_names(
        cls,
        objects: Sequence[str],
        unit: str,
        zero: str,
        tensor: Mapping[tuple[str, str], str],
        shift: Mapping[str, str] | None = None,
        triangles: Iterable[tuple[str, str, str]] = (),
        summands: Iterable[tuple[str, str]] = (),
        coproducts: Mapping[tuple[str, ...], str] | None = None,
        check: bool = True,
    ) -> TTPresentation:
        objects = list(objects)
        where = {name: i for i, name in enumerate(objects)}

        def idx(name: str) -> int:
            if name not in where:
                raise UnknownObject(f"unknown object {name!r}")
            return where[name]

        n = len(objects)
        table = np.full((n, n), -1, dtype=np.int64)
        for (a, b), c in tensor.items():
            i, j, k = idx(a), idx(b), idx(c)
            for p, q in ((i, j), (j, i)):
                if table[p, q] not in (-1, k):
                    raise ValidationFailure([f"tensor {objects[p]} {objects[q]} given two values"])
                table[p, q] = k
        perm = list(range(n))
        for a, b in (shift or {}).items():
            perm[idx(a)] = idx(b)
        return cls(
            objects,
            idx(unit),
            idx(zero),
            table,
            perm,
            [tuple(idx(v) for v in t) for t in triangles],
            [(idx(a), idx(b)) for a, b in summands],
            {tuple(idx(v) for v in k): idx(v) for k, v in (coproducts or {}).items()},
            check=check,
        )

    def __len__(self) -> int:
        return len(self.objects)

    def __repr__(self) -> str:
        return f"TTPresentation({len(self)} objects)"

    @property
    def full(self) -> int:
        return (1 << len(self)) - 1

    def index(self, name: str) -> int:
        try:
            return self.objects.index(name)
        except ValueError:
            raise UnknownObject(f"unknown object {name!r}") from None

    def mask(self, names: Iterable[str]) -> int:
        out = 0
        for name in names:
            out |= 1 << self.index(name)
        return out

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.objects[i] for i in bits(mask))

    def label(self, mask: int) -> str:
        return set_name(self.objects, mask)

    def tensor_of(self, a: str, b: str) -> str:
        return self.objects[self.tensor[self.index(a), self.index(b)]]

    # derived tables

    @property
    def shift_inverse(self) -> tuple[int, ...]:
        inv = [0] * len(self)
        for i, s in enumerate(self.shift):
            inv[s] = i
        return tuple(inv)

    def rotated_triangles(self) -> frozenset[tuple[int, int, int]]:
        """Declared triangles closed under rotation ``(X,Y,Z) -> (Y,Z,ΣX)`` and its inverse."""
        if "rot" not in self._cache:
            sh, inv = self.shift, self.shift_inverse
            out = set(self.triangles)
            frontier = list(out)
            while frontier:
                x, y, z = frontier.pop()
                for t in ((y, z, sh[x]), (inv[z], x, y)):
                    if t not in out:
                        out.add(t)
                        frontier.append(t)
            self._cache["rot"] = frozenset(out)
        return self._cache["rot"]

    def summand_down(self) -> tuple[int, ...]:
        """Row ``b``: mask of the direct summands of ``b`` (reflexive-transitive,
        including the members of any declared coproduct equal to ``b``)."""
        if "sum" not in self._cache:
            n = len(self)
            rows = [1 << b for b in range(n)]
            for a, b in self.summands:
                rows[b] |= 1 << a
            for members, c in self.coproducts.items():
                for m in members:
                    rows[c] |= 1 << m
            changed = True
            while changed:
                changed = False
                for b in range(n):
                    new = rows[b]
                    for a in bits(rows[b]):
                        new |= rows[a]
                    if new != rows[b]:
                        rows[b] = new
                        changed = True
            self._cache["sum"] = tuple(rows)
        return self._cache["sum"]

    def _tables(self):
        if self._derived is None:
            n = len(self)
            absorb = tuple(sum(1 << int(v) for v in set(self.tensor[i].tolist())) for i in range(n))
            powers = []
            for i in range(n):
                seen, p = 0, i
                while not seen >> p & 1:
                    seen |= 1 << p
                    p = int(self.tensor[p, i])
                powers.append(seen)
            tri = tuple(((1 << x) | (1 << z), y) for x, y, z in sorted(self.rotated_triangles()))
            cop = tuple(
                (_union(1 << m for m in members), len(members), c) for members, c in sorted(self.coproducts.items())
            )
            self._derived = (absorb, tuple(powers), tri, cop)
        return self._derived


# validation ----------------------------------------------------------------------


def _presentation_violations(T: TTPresentation) -> list[str]:
    v: list[str] = []
    n = len(T)
    names = T.objects
    if len(set(names)) != n:
        v.append("object names are not unique")
    if not (0 <= T.unit < n and 0 <= T.zero < n):
        return v + ["unit or zero is not a declared object"]
    t = T.tensor
    if t.shape != (n, n):
        return v + ["tensor table has the wrong shape"]
    if (t < 0).any() or (t >= n).any():
        i, j = map(int, np.argwhere((t < 0) | (t >= n))[0])
        return v + [f"tensor {names[i]} {names[j]} is undefined"]
    for i in range(n):
        if t[T.unit, i] != i:
            v.append(f"unit law fails at {names[i]}")
            break
    for i in range(n):
        if t[i, T.zero] != T.zero:
            v.append(f"zero law fails at {names[i]}")
            break
    if not (t == t.T).all():
        i, j = map(int, np.argwhere(t != t.T)[0])
        v.append(f"tensor is not commutative at {names[i]} {names[j]}")
    left = t[t]
    right = t[np.arange(n)[:, None, None], t[None, :, :]]
    if not (left == right).all():
        i, j, k = map(int, np.argwhere(left != right)[0])
        v.append(f"tensor is not associative at {names[i]} {names[j]} {names[k]}")
    sh = T.shift
    if len(sh) != n or sorted(sh) != list(range(n)):
        v.append("shift is not a bijection")
        return v
    if sh[T.zero] != T.zero:
        v.append("shift moves zero")
    for i in range(n):
        for j in range(n):
            if sh[t[i, j]] != t[sh[i], j]:
                v.append(f"shift does not commute with tensor at {names[i]} {names[j]}")
                break
        else:
            continue
        break
    for tri in T.triangles:
        if any(not 0 <= x < n for x in tri):
            v.append(f"triangle {tri} references an undeclared object")
            return v
    rot = T.rotated_triangles()
    bad = next(((w, tri) for tri in sorted(rot) for w in range(n) if tuple(int(t[w, x]) for x in tri) not in rot), None)
    if bad is not None:
        w, (x, y, z) = bad
        v.append(f"triangles are not tensor-stable: {names[w]} ⊗ ({names[x]},{names[y]},{names[z]})")
    for a, b in T.summands:
        if not (0 <= a < n and 0 <= b < n):
            v.append(f"summand ({a},{b}) references an undeclared object")
            return v
    cop = T.coproducts
    for members, c in cop.items():
        if any(not 0 <= m < n for m in members) or not 0 <= c < n:
            v.append(f"coproduct {members} references an undeclared object")
            return v
    down = T.summand_down()
    for b in range(n):
        for a in bits(down[b]):
            for w in range(n):
                if not down[t[w, b]] >> int(t[w, a]) & 1:
                    v.append(f"summands are not tensor-stable: {names[w]} ⊗ ({names[a]},{names[b]})")
                    break
            if not down[sh[b]] >> sh[a] & 1:
                v.append(f"summands are not shift-stable at ({names[a]},{names[b]})")
            if not down[T.shift_inverse[b]] >> T.shift_inverse[a] & 1:
                v.append(f"summands are not stable under the inverse shift at ({names[a]},{names[b]})")
    for members, c in sorted(cop.items()):
        label = " ".join(names[m] for m in members)
        if len(members) == 0 and c != T.zero:
            v.append("empty coproduct is not zero")
        if len(members) == 1 and c != members[0]:
            v.append(f"coproduct of the single object {label} is not itself")
        shifted = _multiset_key(sh[m] for m in members)
        if cop.get(shifted) != sh[c]:
            v.append(f"shift does not preserve the coproduct of {label}")
        for w in range(n):
            image = _multiset_key(int(t[w, m]) for m in members)
            if len(image) >= 2 and cop.get(image) != int(t[w, c]):
                v.append(f"tensor with {names[w]} does not preserve the coproduct of {label}")
                break
        # associativity: collapsing any declared sub-coproduct gives the same result
        for size in range(2, len(members)):
            for part in set(combinations(members, size)):
                if part not in cop:
                    continue
                rest = list(members)
                for m in part:
                    rest.remove(m)
                merged = _multiset_key(rest + [cop[part]])
                if merged in cop and cop[merged] != c:
                    v.append(f"coproduct of {label} is not associative")
        if T.zero in members and len(members) >= 2:
            rest = list(members)
            rest.remove(T.zero)
            if len(rest) == 1 and rest[0] != c:
                v.append(f"zero is not neutral in the coproduct of {label}")
            elif tuple(rest) in cop and cop[tuple(rest)] != c:
                v.append(f"zero is not neutral in the coproduct of {label}")
    return v


def validate_presentation(T: TTPresentation) -> Report:
    """Check every table invariant; raises ``ValidationFailure`` listing all violations."""
    violations = _presentation_violations(T)
    if violations:
        raise ValidationFailure(violations)
    return Report(True, None, {"objects": len(T), "triangles": len(T.rotated_triangles())})


# the closure engine ------------------------------------------------------------


@dataclass(frozen=True)
class TensorIdeal:
    presentation: TTPresentation = field(repr=False, compare=False)
    carrier: int
    arity: Arity
    radical: bool

    @property
    def names(self) -> tuple[str, ...]:
        return self.presentation.names(self.carrier)

    @property
    def label(self) -> str:
        return self.presentation.label(self.carrier)

    def __contains__(self, name: str) -> bool:
        return bool(self.carrier >> self.presentation.index(name) & 1)


def closure(T: TTPresentation, mask: int, arity=OMEGA, radical: bool = True, tensor: bool = True) -> int:
    """Least subset containing ``mask`` and zero closed under every rule.

    Rules: shift both ways, two-out-of-three on (rotated) triangles, direct
    summands, coproducts of fewer than k members, tensoring with any object
    (``tensor``), and tensor powers (``radical``), all inside one fixpoint.
    """
    arity = as_arity(arity)
    key = (mask, arity.k, radical, tensor)
    cache = T._cache.setdefault("closure", {})
    if key in cache:
        return cache[key]
    absorb, powers, tri, cop = T._tables()
    down = T.summand_down()
    sh, inv = T.shift, T.shift_inverse
    n = len(T)
    cop = [(m, c) for m, size, c in cop if arity.admits(size)]
    I = mask | 1 << T.zero
    while True:
        before = I
        for x in bits(I):
            I |= down[x] | 1 << sh[x] | 1 << inv[x]
            if tensor:
                I |= absorb[x]
        for pair, y in tri:
            if I & pair == pair:
                I |= 1 << y
        for members, c in cop:
            if I & members == members:
                I |= 1 << c
        if radical:
            for x in range(n):
                if powers[x] & I:
                    I |= 1 << x
        if I == before:
            break
    cache[key] = I
    return I


def ideal_violation(T: TTPresentation, mask: int, arity=OMEGA, radical: bool = True, tensor: bool = True):
    """First rule a subset fails, checked directly against the tables; ``None`` if closed."""
    arity = as_arity(arity)
    names = T.objects
    t = T.tensor
    if not mask >> T.zero & 1:
        return ("zero",)
    for x in bits(mask):
        if not mask >> T.shift[x] & 1 or not mask >> T.shift_inverse[x] & 1:
            return ("shift", names[x])
        for a in bits(T.summand_down()[x]):
            if not mask >> a & 1:
                return ("summand", names[a], names[x])
        if tensor:
            for w in range(len(T)):
                if not mask >> int(t[x, w]) & 1:
                    return ("tensor", names[x], names[w])
    for x, y, z in sorted(T.rotated_triangles()):
        if mask >> x & 1 and mask >> z & 1 and not mask >> y & 1:
            return ("triangle", names[x], names[y], names[z])
    for members, c in sorted(T.coproducts.items()):
        if arity.admits(len(members)) and all(mask >> m & 1 for m in members) and not mask >> c & 1:
            return ("coproduct", names[c])
    if radical:
        for x in range(len(T)):
            p, seen = x, set()
            while p not in seen:
                seen.add(p)
                if mask >> p & 1 and not mask >> x & 1:
                    return ("radical", names[x])
                p = int(t[p, x])
    return None


def rad_closure(T: TTPresentation, S: Iterable[str] | int, arity=OMEGA, radical: bool = True) -> TensorIdeal:
    arity = as_arity(arity)
    mask = S if isinstance(S, int) else T.mask(S)
    if mask & ~T.full:
        raise UnknownObject("subset references objects outside the presentation")
    return TensorIdeal(T, closure(T, mask, arity, radical), arity, radical)


def _closed_family(T: TTPresentation, arity: Arity, radical: bool) -> list[int]:
    """All closed subsets, as the join-closure of the principal ones."""
    base = closure(T, 0, arity, radical)
    principal = {closure(T, 1 << x, arity, radical) for x in range(len(T))}
    found = {base} | principal
    frontier = list(found)
    while frontier:
        fresh = []
        for A in frontier:
            for B in principal:
                C = closure(T, A | B, arity, radical)
                if C not in found:
                    found.add(C)
                    fresh.append(C)
        frontier = fresh
    return sorted(found, key=lambda m: (popcount(m), m))


@dataclass(frozen=True)
class RadFrame:
    """The frame of radical k-localizing tensor ideals; ``ideals[i]`` is element ``i``."""

    presentation: TTPresentation = field(repr=False)
    arity: Arity
    frame: Frame
    ideals: tuple[int, ...]

    def position(self, mask: int) -> int:
        try:
            return self.ideals.index(mask)
        except ValueError:
            raise NotAnIdeal("subset is not a radical ideal", self.presentation.label(mask)) from None

    def principal(self, x: int) -> int:
        return self.position(closure(self.presentation, 1 << x, self.arity))

    def labels(self) -> list[str]:
        return list(self.frame.elements)


def rad_lattice(T: TTPresentation, arity=OMEGA) -> RadFrame:
    """Radical ideals ordered by inclusion; meet is intersection, join the closure of the union."""
    arity = as_arity(arity)
    cache = T._cache.setdefault("rad", {})
    if arity.k in cache:
        return cache[arity.k]
    ideals = _closed_family(T, arity, True)
    for A in ideals:
        for B in ideals:
            if A & B not in ideals:
                raise FrameFailure("intersection of radical ideals is not radical", (T.label(A), T.label(B)))
    try:
        F = Frame.from_sets(ideals, [T.label(m) for m in ideals])
    except NotDistributive as err:
        raise FrameFailure("radical ideals do not form a frame", err.witness) from None
    for i, A in enumerate(ideals):
        for j, B in enumerate(ideals):
            if ideals[F.meet(i, j)] != A & B or ideals[F.join(i, j)] != closure(T, A | B, arity):
                raise FrameFailure("lattice operations are not intersection and closure", (i, j))
    RF = RadFrame(T, arity, F, tuple(ideals))
    cache[arity.k] = RF
    return RF


def loc_lattice(T: TTPresentation, arity=OMEGA) -> list[int]:
    """All (not necessarily radical) k-localizing tensor ideals."""
    return _closed_family(T, as_arity(arity), False)


# lemmas on the radical frame ---------------------------------------------------


def tensor_property_check(T: TTPresentation, arity=OMEGA) -> Report:
    """``rad(X ⊗ Y) = rad(X) ∩ rad(Y)`` for every pair; the witness is the first failing pair."""
    arity = as_arity(arity)
    n = len(T)
    rad = [closure(T, 1 << x, arity) for x in range(n)]
    for x in range(n):
        for y in range(x, n):
            if closure(T, 1 << int(T.tensor[x, y]), arity) != rad[x] & rad[y]:
                return Report(False, (T.objects[x], T.objects[y]))
    return Report(True)


def coproduct_join_check(T: TTPresentation, arity=OMEGA) -> Report:
    """``rad(∐ X) = ∨ rad(X)`` for every declared coproduct of fewer than k members."""
    arity = as_arity(arity)
    checked = 0
    for members, c in sorted(T.coproducts.items()):
        if not arity.admits(len(members)):
            continue
        joined = closure(T, _union(closure(T, 1 << m, arity) for m in members), arity)
        if closure(T, 1 << c, arity) != joined:
            raise LemmaFailure("radical of a coproduct is not the join", T.names(_union(1 << m for m in members)))
        checked += 1
    return Report(True, None, {"checked": checked})


def _union(masks: Iterable[int]) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


def building_check(T: TTPresentation, arity, limit: int = 14) -> Report:
    """Every ``X ∈ rad(S)`` already lies in ``rad(S')`` for some ``S' ⊆ S`` with ``|S'| < k``.

    Scans every subset ``S`` of objects; the witness is ``(X, S)``.
    """
    arity = as_arity(arity)
    n = len(T)
    if arity.is_omega:
        return Report(True, None, {"subsets": 0})
    if n > limit:
        raise HypothesisViolated(f"exhaustive scan limited to {limit} objects", n)
    small = [m for m in range(1 << n) if popcount(m) < arity.k]
    reach = {m: closure(T, m, arity) for m in small}
    for S in range(1 << n):
        if popcount(S) < arity.k:
            continue
        covered = 0
        for m in small:
            if m & ~S == 0:
                covered |= reach[m]
        missing = closure(T, S, arity) & ~covered
        if missing:
            x = next(bits(missing))
            return Report(False, (T.objects[x], T.names(S)))
    return Report(True, None, {"subsets": 1 << n})


def principal_compact_check(T: TTPresentation, arity=OMEGA, method: str = "birkhoff") -> Report:
    """k-compact elements of the radical frame are exactly the principal ideals ``rad(X)``.

    Needs every binary coproduct declared once k admits them; larger families
    then exist by associativity.
    """
    arity = as_arity(arity)
    if arity.admits(2):
        missing = next(
            ((a, b) for a in range(len(T)) for b in range(a, len(T)) if (a, b) not in T.coproducts), None
        )
        if missing is not None:
            raise HypothesisViolated("binary coproducts are not all declared", T.names(_union(1 << m for m in missing)))
    RF = rad_lattice(T, arity)
    comp = compact_mask(RF.frame, arity, method)
    principal = _union(1 << RF.principal(x) for x in range(len(T)))
    building = building_check(T, arity)
    if not building:
        raise LemmaFailure("an object needs more than k generators", building.witness)
    if comp != principal:
        diff = comp ^ principal
        raise LemmaFailure("compact elements differ from principal ideals", RF.frame.names(diff))
    return Report(True, None, {"compacts": sorted(RF.frame.names(comp))})


# support data -----------------------------------------------------------------------


@dataclass(frozen=True)
class SupportDatum:
    frame: Frame
    sigma: tuple[int, ...]

    @classmethod
    def from_names(cls, T: TTPresentation, frame: Frame, sigma: Mapping[str, str]) -> SupportDatum:
        missing = [x for x in T.objects if x not in sigma]
        if missing:
            raise UnknownObject(f"support is undefined at {missing[0]!r}")
        return cls(frame, tuple(frame.index(sigma[x]) for x in T.objects))

    def table(self, T: TTPresentation) -> dict[str, str]:
        return {x: self.frame.name(self.sigma[i]) for i, x in enumerate(T.objects)}


def _axiom_witnesses(T: TTPresentation, F: Frame, s: Sequence[int], arity: Arity) -> dict[str, object]:
    names = T.objects
    out: dict[str, object] = {}
    if s[T.zero] != F.bottom:
        out["S1"] = ("zero", names[T.zero])
    elif s[T.unit] != F.top:
        out["S1"] = ("unit", names[T.unit])
    for x in range(len(T)):
        if s[T.shift[x]] != s[x]:
            out["S2"] = names[x]
            break
    for members, c in sorted(T.coproducts.items()):
        if arity.admits(len(members)) and s[c] != F.join_all(_union(1 << s[m] for m in members)):
            out["S3"] = ("coproduct", names[c])
            break
    else:
        down = T.summand_down()
        bad = next(((a, b) for b in range(len(T)) for a in bits(down[b]) if not F.le(s[a], s[b])), None)
        if bad is not None:
            out["S3"] = ("summand", names[bad[0]], names[bad[1]])
    bad = next(
        (
            (x, y)
            for x in range(len(T))
            for y in range(x, len(T))
            if s[int(T.tensor[x, y])] != F.meet(s[x], s[y])
        ),
        None,
    )
    if bad is not None:
        out["S4"] = (names[bad[0]], names[bad[1]])
    for x, y, z in sorted(T.rotated_triangles()):
        if not F.le(s[y], F.join(s[x], s[z])):
            out["S5"] = (names[x], names[y], names[z])
            break
    return out


def validate_support(T: TTPresentation, D: SupportDatum, arity=OMEGA) -> Report:
    """Per-axiom verdicts for (S1)-(S5); (S5) is checked on every rotation of every triangle,
    and (S3) also asks monotonicity along direct summands."""
    arity = as_arity(arity)
    failures = _axiom_witnesses(T, D.frame, D.sigma, arity)
    axioms = {a: {"ok": a not in failures, "witness": failures.get(a)} for a in ("S1", "S2", "S3", "S4", "S5")}
    first = next((a for a in axioms if a in failures), None)
    return Report(not failures, None if first is None else (first, failures[first]), axioms)


def canonical_support(T: TTPresentation, arity=OMEGA) -> tuple[RadFrame, SupportDatum]:
    """``X -> rad(X)`` into the radical frame."""
    RF = rad_lattice(T, arity)
    return RF, SupportDatum(RF.frame, tuple(RF.principal(x) for x in range(len(T))))


def support_data(T: TTPresentation, F: Frame, arity=OMEGA) -> list[SupportDatum]:
    """Every support on ``T`` with values in ``F``, by backtracking with early axiom checks."""
    arity = as_arity(arity)
    n = len(T)
    t = T.tensor
    order = sorted(range(n), key=lambda x: (x not in (T.zero, T.unit), x))
    rot = sorted(T.rotated_triangles())
    cops = [(members, c) for members, c in sorted(T.coproducts.items()) if arity.admits(len(members))]
    down = T.summand_down()
    s = [-1] * n
    out: list[SupportDatum] = []

    def consistent(x: int) -> bool:
        v = s[x]
        if x == T.zero and v != F.bottom or x == T.unit and v != F.top:
            return False
        for y in (T.shift[x], T.shift_inverse[x]):
            if s[y] >= 0 and s[y] != v:
                return False
        for y in range(n):
            if s[y] < 0:
                continue
            z = int(t[x, y])
            if s[z] >= 0 and s[z] != F.meet(v, s[y]):
                return False
            if down[y] >> x & 1 and not F.le(v, s[y]):
                return False
            if down[x] >> y & 1 and not F.le(s[y], v):
                return False
            # x may be the product of two placed objects
        for a in range(n):
            if s[a] < 0:
                continue
            for b in range(a, n):
                if s[b] >= 0 and int(t[a, b]) == x and v != F.meet(s[a], s[b]):
                    return False
        for tri in rot:
            if x in tri and all(s[w] >= 0 for w in tri):
                p, q, r = tri
                if not F.le(s[q], F.join(s[p], s[r])):
                    return False
        for members, c in cops:
            if (x == c or x in members) and s[c] >= 0 and all(s[m] >= 0 for m in members):
                if s[c] != F.join_all(_union(1 << s[m] for m in members)):
                    return False
        return True

    def rec(pos: int):
        if pos == n:
            out.append(SupportDatum(F, tuple(s)))
            return
        x = order[pos]
        for v in range(len(F)):
            s[x] = v
            if consistent(x):
                rec(pos + 1)
            s[x] = -1

    rec(0)
    for D in out:
        assert not _axiom_witnesses(T, F, D.sigma, arity)
    return out


def universal_morphism(T: TTPresentation, D: SupportDatum, arity=OMEGA) -> FrameMorphism:
    """The unique frame morphism ``φ`` with ``σ = φ ∘ rad``, given by ``φ(I) = ∨{σ(X) : X ∈ I}``.

    Uniqueness is established by enumerating every factorizing frame morphism.
    """
    arity = as_arity(arity)
    verdict = validate_support(T, D, arity)
    if not verdict:
        raise HypothesisViolated("not a support datum", verdict.witness)
    tp = tensor_property_check(T, arity)
    if not tp:
        raise HypothesisViolated("tensor property fails", tp.witness)
    RF = rad_lattice(T, arity)
    F = D.frame
    s = D.sigma
    rad = [closure(T, 1 << x, arity) for x in range(len(T))]
    for x in range(len(T)):
        for y in bits(rad[x]):
            if not F.le(s[y], s[x]):
                raise NotWellDefined(
                    "support is not constant on radical closures", (T.objects[x], T.objects[y])
                )
    table = [F.join_all(_union(1 << s[x] for x in bits(I))) for I in RF.ideals]
    witness = morphism_violation(RF.frame, F, table)
    if witness is not None:
        raise PropositionFailure("induced map is not a frame morphism", witness)
    phi = FrameMorphism(RF.frame, F, table, check=False)
    fixed = {RF.position(rad[x]): s[x] for x in range(len(T))}
    for x in range(len(T)):
        if table[RF.position(rad[x])] != s[x]:
            raise PropositionFailure("σ does not factor through rad", T.objects[x])
    found = frame_morphisms(RF.frame, F, fixed)
    if len(found) != 1:
        raise NotUnique("factorizing frame morphisms are not unique", [f.mapping() for f in found[:2]])
    if found[0].table != phi.table:
        raise NotUnique("enumerated morphism differs from the constructed one", found[0].mapping())
    return phi


# primes and the spectrum ---------------------------------------------------------------


def _is_prime(T: TTPresentation, P: int) -> bool:
    if P == T.full:
        return False
    t = T.tensor
    outside = [x for x in range(len(T)) if not P >> x & 1]
    return all(not P >> int(t[x, y]) & 1 for x in outside for y in outside)


def prime_tensor_ideals(T: TTPresentation, arity=OMEGA) -> list[TensorIdeal]:
    """Proper k-localizing tensor ideals ``P`` with ``X ⊗ Y ∈ P`` only if ``X ∈ P`` or ``Y ∈ P``.

    Searched among all (not necessarily radical) ideals; asserts every prime
    is radical and that the primes are the prime elements of the radical frame.
    """
    arity = as_arity(arity)
    tp = tensor_property_check(T, arity)
    if not tp:
        raise HypothesisViolated("tensor property fails", tp.witness)
    primes = [P for P in loc_lattice(T, arity) if _is_prime(T, P)]
    for P in primes:
        if closure(T, P, arity) != P:
            raise LemmaFailure("prime ideal is not radical", T.label(P))
    RF = rad_lattice(T, arity)
    elements = sorted(RF.ideals[i] for i in bits(prime_mask(RF.frame)))
    if sorted(primes) != elements:
        raise LemmaFailure(
            "prime ideals differ from prime elements",
            {"ideals": sorted(T.label(P) for P in primes), "elements": sorted(T.label(P) for P in elements)},
        )
    return [TensorIdeal(T, P, arity, True) for P in primes]


def spc(T: TTPresentation, arity=OMEGA) -> FiniteSpace:
    """Points of the radical frame with the topology ``{U(I)}``."""
    return point_space(rad_lattice(T, arity).frame)


# extension and restriction -----------------------------------------------------------------


def restrict(T: TTPresentation, sub: int, arity=OMEGA) -> TTPresentation:
    """The sub-presentation on ``sub``; ``sub`` must contain zero and unit and be closed
    under tensor, shift and admissible coproducts."""
    arity = as_arity(arity)
    if not sub >> T.zero & 1 or not sub >> T.unit & 1:
        raise HypothesisViolated("sub-objects must contain zero and unit", T.label(sub))
    keep = list(bits(sub))
    pos = {x: i for i, x in enumerate(keep)}
    t = T.tensor
    for x in keep:
        for y in keep:
            if int(t[x, y]) not in pos:
                raise HypothesisViolated("sub-objects are not closed under tensor", (T.objects[x], T.objects[y]))
        if T.shift[x] not in pos or T.shift_inverse[x] not in pos:
            raise HypothesisViolated("sub-objects are not closed under shift", T.objects[x])
    coproducts = {}
    for members, c in T.coproducts.items():
        if all(m in pos for m in members) and arity.admits(len(members)):
            if c not in pos:
                raise HypothesisViolated("sub-objects are not closed under coproducts", T.objects[c])
            coproducts[tuple(pos[m] for m in members)] = pos[c]
    return TTPresentation(
        [T.objects[x] for x in keep],
        pos[T.unit],
        pos[T.zero],
        [[pos[int(t[x, y])] for y in keep] for x in keep],
        [pos[T.shift[x]] for x in keep],
        [tuple(pos[v] for v in tri) for tri in T.rotated_triangles() if all(v in pos for v in tri)],
        [(pos[a], pos[b]) for b in keep for a in bits(T.summand_down()[b]) if a in pos],
        coproducts,
    )


def ext_res(T: TTPresentation, sub: int, arity, arity2=OMEGA) -> Report:
    """Extension ``I -> rad_{k'}(I)`` and restriction ``J -> J ∩ sub`` between the radical
    frame of the sub-presentation at arity k and that of ``T`` at arity k'."""
    k, k2 = as_arity(arity), as_arity(arity2)
    if not k <= k2:
        raise HypothesisViolated("arity must not exceed the ambient arity", (str(k), str(k2)))
    if closure(T, sub, k2, radical=False, tensor=False) != T.full:
        raise HypothesisViolated("sub-objects do not generate", T.label(sub))
    S = restrict(T, sub, k)
    keep = list(bits(sub))
    lift = lambda m: _union(1 << keep[i] for i in bits(m))  # noqa: E731
    drop = lambda m: _union(1 << i for i, x in enumerate(keep) if m >> x & 1)  # noqa: E731
    A = rad_lattice(S, k)
    B = rad_lattice(T, k2)
    ext = [B.position(closure(T, lift(I), k2)) for I in A.ideals]
    res = []
    for J in B.ideals:
        small = drop(J)
        if small not in A.ideals:
            raise AdjunctionFailure("restriction is not a radical ideal", T.label(J))
        res.append(A.position(small))
    FA, FB = A.frame, B.frame
    for i in range(len(FA)):
        if res[ext[i]] != i:
            raise AdjunctionFailure("restriction after extension is not the identity", FA.name(i))
    for j in range(len(FB)):
        if not FB.le(ext[res[j]], j):
            raise AdjunctionFailure("extension after restriction exceeds the identity", FB.name(j))
    for i in range(len(FA)):
        for i2 in range(len(FA)):
            if ext[FA.join(i, i2)] != FB.join(ext[i], ext[i2]):
                raise AdjunctionFailure("extension does not preserve joins", (FA.name(i), FA.name(i2)))
    for j in range(len(FB)):
        for j2 in range(len(FB)):
            if res[FB.meet(j, j2)] != FA.meet(res[j], res[j2]):
                raise AdjunctionFailure("restriction does not preserve meets", (FB.name(j), FB.name(j2)))
    injective = len(set(ext)) == len(ext)
    if not injective:
        raise AdjunctionFailure("extension is not injective", None)
    rad2 = {x: closure(T, 1 << x, k2) for x in keep}
    hypothesis = all(closure(T, 1 << int(T.tensor[x, y]), k2) == rad2[x] & rad2[y] for x in keep for y in keep)
    details = {
        "source": len(FA),
        "target": len(FB),
        "injective": injective,
        "tensor_hypothesis": hypothesis,
        "extension": {FA.name(i): FB.name(ext[i]) for i in range(len(FA))},
    }
    if hypothesis:
        witness = morphism_violation(FA, FB, ext)
        if witness is not None:
            raise AdjunctionFailure("extension is not a frame morphism", witness)
        if is_spatial(FB) and not is_spatial(FA):
            raise AdjunctionFailure("spatiality does not descend", None)
        details["frame_morphism"] = True
        details["points"] = {
            x.name: points(FA)[i].name for x, i in zip(points(FB), point_map(FrameMorphism(FA, FB, ext, check=False)))
        }
    return Report(True, None, details)


# quotients ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Quotient:
    frame: Frame
    surjection: FrameMorphism
    points: dict[str, str]


def quotient_frame(T: TTPresentation, S: int, arity=OMEGA) -> Quotient:
    """``{I ⊇ S}`` with ``I -> I ∨ S``; its points are the ambient points outside ``U(S)``."""
    RF = rad_lattice(T, arity)
    s = RF.position(S)
    F = RF.frame
    above = [i for i in range(len(F)) if F.le(s, i)]
    Q = Frame.from_sets([RF.ideals[i] for i in above], [F.name(i) for i in above])
    q = FrameMorphism(F, Q, [Q.index(F.name(F.join(i, s))) for i in range(len(F))])
    if not q.surjective:
        raise PropositionFailure("quotient map is not surjective", None)
    ambient = points(F)
    image = point_map(q)
    embedded = _union(1 << i for i in image)
    complement = sum(1 << i for i in range(len(ambient))) & ~open_of(F, s, ambient)
    if len(set(image)) != len(image):
        raise PropositionFailure("quotient points do not embed", None)
    if embedded != complement:
        raise PropositionFailure(
            "quotient points differ from the complement of U(S)",
            sorted(ambient[i].name for i in bits(embedded ^ complement)),
        )
    if not point_space(F).is_closed(embedded):
        raise PropositionFailure("embedded points are not closed", None)
    return Quotient(Q, q, {y.name: ambient[i].name for y, i in zip(points(Q), image)})
