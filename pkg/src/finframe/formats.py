"""Line-oriented text formats.

``.poset``::

    elem 0 a b 1
    cover 0 a          # a covers 0
    cover a 1

``.space``::

    point x y
    open               # the empty open
    open x
    open x y

``.frmmap`` (paths relative to the map file)::

    source c3.poset
    target b2.poset
    map 0 0
    map m a
    map 1 1

``.ttg``::

    object e 1 2 12
    unit 12
    zero e
    tensor 1 2 e       # 1 ⊗ 2 = e; the symmetric entry is implied
    shift 1 1          # Σ1 = 1; omitted objects are fixed
    triangle 1 12 2
    summand 1 12       # 1 is a direct summand of 12
    coprod 12 = 1 2

``.support``::

    frame b2.poset     # relative to the support file
    sigma 1 a

Blank lines and ``#`` comments are ignored everywhere; unknown directives are
``FormatError``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .errors import DuplicateElement, FormatError
from .frame import Frame
from .poset import FinitePoset, poset_from_covers
from .refine import FrameMorphism
from .stone import FiniteSpace
from .ttg import SupportDatum, TTPresentation


def _lines(text: str) -> Iterator[tuple[int, str, list[str]]]:
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            head, *rest = line.split()
            yield number, head, rest


def _expect(number: int, head: str, rest: list[str], count: int) -> None:
    if len(rest) != count:
        raise FormatError(f"{head} expects {count} argument(s), got {len(rest)}", number)


def parse_poset(text: str) -> FinitePoset:
    elements: list[str] = []
    covers: list[tuple[str, str]] = []
    for number, head, rest in _lines(text):
        if head == "elem":
            if not rest:
                raise FormatError("elem expects at least one name", number)
            elements.extend(rest)
        elif head in ("cover", "leq"):
            _expect(number, head, rest, 2)
            covers.append((rest[0], rest[1]))
        else:
            raise FormatError(f"unknown directive {head!r}", number)
    return poset_from_covers(elements, covers)


def parse_space(text: str) -> FiniteSpace:
    pts: list[str] = []
    opens: list[list[str]] = []
    for number, head, rest in _lines(text):
        if head == "point":
            pts.extend(rest)
        elif head == "open":
            opens.append(rest)
        else:
            raise FormatError(f"unknown directive {head!r}", number)
    if len(set(pts)) != len(pts):
        raise DuplicateElement("duplicate point name")
    return FiniteSpace.from_names(pts, opens)


def parse_ttg(text: str) -> TTPresentation:
    objects: list[str] = []
    unit = zero = None
    tensor: dict[tuple[str, str], str] = {}
    shift: dict[str, str] = {}
    triangles: list[tuple[str, str, str]] = []
    summands: list[tuple[str, str]] = []
    coproducts: dict[tuple[str, ...], str] = {}
    for number, head, rest in _lines(text):
        if head == "object":
            if not rest:
                raise FormatError("object expects at least one name", number)
            for name in rest:
                if name in objects:
                    raise DuplicateElement(f"object {name!r} declared twice")
                objects.append(name)
        elif head in ("unit", "zero"):
            _expect(number, head, rest, 1)
            if head == "unit":
                unit = rest[0]
            else:
                zero = rest[0]
        elif head == "tensor":
            _expect(number, head, rest, 3)
            a, b, c = rest
            if tensor.get((b, a), c) != c or tensor.get((a, b), c) != c:
                raise FormatError(f"tensor {a} {b} given two values", number)
            tensor[(a, b)] = c
        elif head == "shift":
            _expect(number, head, rest, 2)
            shift[rest[0]] = rest[1]
        elif head == "triangle":
            _expect(number, head, rest, 3)
            triangles.append((rest[0], rest[1], rest[2]))
        elif head == "summand":
            _expect(number, head, rest, 2)
            summands.append((rest[0], rest[1]))
        elif head == "coprod":
            if len(rest) < 2 or rest[1] != "=":
                raise FormatError("coprod expects '<c> = <a> <b> ...'", number)
            coproducts[tuple(sorted(rest[2:]))] = rest[0]
        else:
            raise FormatError(f"unknown directive {head!r}", number)
    if unit is None or zero is None:
        raise FormatError("presentation needs both unit and zero")
    return TTPresentation.from_names(objects, unit, zero, tensor, shift, triangles, summands, coproducts)


@dataclass(frozen=True)
class MapSpec:
    source: Path
    target: Path
    mapping: dict[str, str]


def parse_frmmap(text: str, base: Path = Path(".")) -> MapSpec:
    source = target = None
    mapping: dict[str, str] = {}
    for number, head, rest in _lines(text):
        if head in ("source", "target"):
            _expect(number, head, rest, 1)
            path = base / rest[0]
            if head == "source":
                source = path
            else:
                target = path
        elif head == "map":
            _expect(number, head, rest, 2)
            if rest[0] in mapping:
                raise DuplicateElement(f"{rest[0]!r} mapped twice")
            mapping[rest[0]] = rest[1]
        else:
            raise FormatError(f"unknown directive {head!r}", number)
    if source is None or target is None:
        raise FormatError("map needs both source and target")
    return MapSpec(source, target, mapping)


def parse_support(text: str, T: TTPresentation, base: Path = Path(".")) -> SupportDatum:
    frame_path = None
    sigma: dict[str, str] = {}
    for number, head, rest in _lines(text):
        if head == "frame":
            _expect(number, head, rest, 1)
            frame_path = base / rest[0]
        elif head == "sigma":
            _expect(number, head, rest, 2)
            sigma[rest[0]] = rest[1]
        else:
            raise FormatError(f"unknown directive {head!r}", number)
    if frame_path is None:
        raise FormatError("support needs a frame")
    F = Frame.from_poset(load_poset(frame_path))
    return SupportDatum.from_names(T, F, sigma)


# file loaders --------------------------------------------------------------------


def _read(path: Path | str) -> str:
    return Path(path).read_text(encoding="utf-8")


def load_poset(path) -> FinitePoset:
    return parse_poset(_read(path))


def load_space(path) -> FiniteSpace:
    return parse_space(_read(path))


def load_ttg(path) -> TTPresentation:
    return parse_ttg(_read(path))


def load_support(path, T: TTPresentation) -> SupportDatum:
    return parse_support(_read(path), T, Path(path).parent)


def load_frmmap(path, frames: dict[Path, Frame] | None = None) -> FrameMorphism:
    """Load a map and its two frames; ``frames`` caches frames by resolved path so
    that consecutive maps in a chain share them."""
    frames = {} if frames is None else frames
    spec = parse_frmmap(_read(path), Path(path).parent)

    def frame(p: Path) -> Frame:
        key = p.resolve()
        if key not in frames:
            frames[key] = Frame.from_poset(load_poset(p))
        return frames[key]

    return FrameMorphism.from_mapping(frame(spec.source), frame(spec.target), spec.mapping)


def dump_poset(P: FinitePoset) -> str:
    lines = ["elem " + " ".join(P.elements)]
    lines += [f"cover {P.elements[a]} {P.elements[b]}" for a, b in P.covers()]
    return "\n".join(lines) + "\n"


def dump_ttg(T: TTPresentation) -> str:
    o = T.objects
    lines = ["object " + " ".join(o), f"unit {o[T.unit]}", f"zero {o[T.zero]}"]
    for i in range(len(o)):
        for j in range(i, len(o)):
            lines.append(f"tensor {o[i]} {o[j]} {o[int(T.tensor[i, j])]}")
    lines += [f"shift {o[i]} {o[s]}" for i, s in enumerate(T.shift) if s != i]
    lines += [f"triangle {o[x]} {o[y]} {o[z]}" for x, y, z in T.triangles]
    lines += [f"summand {o[a]} {o[b]}" for a, b in sorted(T.summands)]
    lines += [
        f"coprod {o[c]} = " + " ".join(o[m] for m in members) for members, c in sorted(T.coproducts.items())
    ]
    return "\n".join(lines) + "\n"
