"""Command-line front end.

Every subcommand prints ``{"version":1,"results":[...]}`` on stdout (or DOT text
with ``render --dot``). Exit status: 0 when every check passes, 1 when a
mathematical check fails (the JSON carries the witness), 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .errors import CheckFailure, FinFrameError, HypothesisViolated, InputError, InvalidTopology, ValidationFailure
from .formats import load_frmmap, load_poset, load_space, load_support, load_ttg
from .frame import Arity, Frame, k_ideals
from .generate import random_presentations
from .hochster import dual_point_bijection, double_dual_check, hochster_dual, thomason_correspondence
from .poset import FinitePoset, as_lattice, hasse_dot, is_distributive
from .refine import StratChain, dimension_table, height, pt_of_morphism, strat_chain_check
from .report import Report, _plain
from .stone import (
    FiniteSpace,
    frame_morphisms_to_two,
    is_sober,
    is_spatial,
    point_space,
    points,
    stone_round_trip,
)
from .ttg import (
    TTPresentation,
    closure,
    coproduct_join_check,
    ext_res,
    prime_tensor_ideals,
    principal_compact_check,
    quotient_frame,
    rad_lattice,
    spc,
    tensor_property_check,
    universal_morphism,
    validate_support,
)

SCHEMA_VERSION = 1

# output ------------------------------------------------------------------------------


def emit_json(results: Sequence[dict]) -> str:
    """Stable JSON: version first, then results with sorted keys."""
    body = json.dumps(_plain(list(results)), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return f'{{"version":{SCHEMA_VERSION},"results":{body}}}\n'


def emit_dot(P: FinitePoset, graph_name: str = "poset") -> str:
    return hasse_dot(P, graph_name)


def _covers(P: FinitePoset) -> list[list[str]]:
    return [[P.elements[a], P.elements[b]] for a, b in P.covers()]


def _frame_of(path: str) -> Frame:
    return Frame.from_poset(load_poset(path))


def _space_of(path: str) -> FiniteSpace:
    if path.endswith(".space"):
        return load_space(path)
    return point_space(_frame_of(path))


def _objects(T: TTPresentation, text: str | None) -> int:
    if text is None:
        return T.full
    names = [x for x in text.split(",") if x]
    return T.mask(names)


# subcommands --------------------------------------------------------------------------

Result = tuple[dict, bool]


def cmd_check(args) -> Result:
    P = load_poset(args.file)
    out: dict[str, Any] = {"elements": len(P)}
    try:
        L = as_lattice(P)
    except CheckFailure as err:
        out.update(lattice=False, distributive=None, frame=False, witness=err.witness)
        return out, False
    verdict = is_distributive(L)
    out.update(lattice=True, distributive=verdict.ok, frame=verdict.ok, witness=verdict.witness)
    if verdict.ok:
        F = Frame(L)
        out["points"] = len(points(F))
    return out, verdict.ok


def cmd_idl(args) -> Result:
    P = load_poset(args.file)
    IL = k_ideals(P, args.arity)
    Q = IL.poset
    verdict = is_distributive(IL.lattice())
    out = {
        "arity": str(args.arity),
        "size": len(IL),
        "elements": list(Q.elements),
        "covers": _covers(Q),
        "distributive": verdict.ok,
        "witness": verdict.witness,
    }
    return out, verdict.ok


def cmd_points(args) -> Result:
    F = _frame_of(args.file)
    pts = points(F)
    oracle = sorted(frame_morphisms_to_two(F))
    agrees = oracle == sorted(x.table() for x in pts)
    spatial = is_spatial(F)
    out = {
        "count": len(pts),
        "points": [{"name": x.name, "prime": F.name(x.prime)} for x in pts],
        "oracle_agrees": agrees,
        "spatial": spatial.ok,
        "witness": spatial.witness,
    }
    return out, agrees and spatial.ok


def cmd_space(args) -> Result:
    X = _space_of(args.file)
    sober = is_sober(X)
    round_trip = stone_round_trip(X=X)
    out = {
        "points": list(X.points),
        "opens": [X.label(U) for U in X.sorted_opens()],
        "specialization": _covers(X.specialization()),
        "sober": sober.ok,
        "witness": sober.witness,
        "round_trip": round_trip.ok,
    }
    return out, sober.ok and round_trip.ok


def cmd_dual(args) -> Result:
    F = _frame_of(args.file)
    D = hochster_dual(F).frame
    out = {
        "elements": list(D.elements),
        "covers": _covers(D.poset),
        "double_dual": double_dual_check(F).ok,
        "point_bijection": dual_point_bijection(F),
        "thomason": thomason_correspondence(F).details,
    }
    return out, True


def cmd_dim(args) -> Result:
    F = _frame_of(args.file)
    return {"height": height(F), "dimension": dimension_table(F)}, True


def cmd_refine(args) -> Result:
    cache: dict = {}
    links = [load_frmmap(p, cache) for p in args.maps]
    report = strat_chain_check(StratChain(tuple(links)))
    out = {"links": len(links), "point_maps": [pt_of_morphism(phi) for phi in links], **report.details}
    return out, report.ok


def _rad_summary(T: TTPresentation, arity: Arity) -> dict:
    RF = rad_lattice(T, arity)
    return {
        "ideals": list(RF.frame.elements),
        "principal": {x: RF.frame.name(RF.principal(i)) for i, x in enumerate(T.objects)},
    }


def cmd_ttg(args) -> Result:
    T = load_ttg(args.file)
    k = args.arity
    out: dict[str, Any] = {"verb": args.verb, "arity": str(k)}
    ok = True
    if args.verb == "rad":
        out.update(_rad_summary(T, k))
        tp = tensor_property_check(T, k)
        out["tensor_property"] = tp.ok
        out["witness"] = tp.witness
        ok = tp.ok
    elif args.verb == "frame":
        RF = rad_lattice(T, k)
        out["elements"] = list(RF.frame.elements)
        out["covers"] = _covers(RF.frame.poset)
        out["coproduct_join"] = coproduct_join_check(T, k).details
        try:
            out["principal_compact"] = principal_compact_check(T, k).details
        except HypothesisViolated as err:
            out["principal_compact"] = {"skipped": str(err), "witness": err.witness}
    elif args.verb == "spc":
        X = spc(T, k)
        out["points"] = list(X.points)
        out["opens"] = [X.label(U) for U in X.sorted_opens()]
        out["specialization"] = _covers(X.specialization())
        out["primes"] = [P.label for P in prime_tensor_ideals(T, k)]
    elif args.verb == "support":
        if not args.target:
            raise InputError("support needs a datum file")
        D = load_support(args.target, T)
        verdict = validate_support(T, D, k)
        out["axioms"] = verdict.details
        out["witness"] = verdict.witness
        ok = verdict.ok
        if ok:
            out["morphism"] = universal_morphism(T, D, k).mapping()
    elif args.verb == "quotient":
        if args.target is None:
            raise InputError("quotient needs a comma-separated ideal")
        S = _objects(T, args.target)
        if args.close:
            S = closure(T, S, k)
        Q = quotient_frame(T, S, k)
        out["ideal"] = T.label(S)
        out["elements"] = list(Q.frame.elements)
        out["points"] = Q.points
    elif args.verb == "extres":
        report = ext_res(T, _objects(T, args.sub), k, args.arity2)
        out["arity2"] = str(args.arity2)
        out.update(report.details)
    return out, ok


def cmd_render(args) -> Result:
    path = args.file
    if path.endswith(".ttg"):
        T = load_ttg(path)
        P = spc(T, args.arity).specialization() if args.spectrum else rad_lattice(T, args.arity).frame.poset
    elif path.endswith(".space"):
        P = load_space(path).specialization()
    else:
        P = load_poset(path)
        if args.spectrum:
            P = point_space(Frame.from_poset(P)).specialization()
    name = "spectrum" if args.spectrum or path.endswith(".space") else "poset"
    return {"dot": emit_dot(P, name), "nodes": len(P), "edges": len(P.covers())}, True


def cmd_search(args) -> Result:
    """Randomized search for a failure of the tensor property at a finite arity."""
    candidates = []
    checked = 0
    for sparse in (False, True):
        for T in random_presentations(args.count, args.seed, all_coproducts=not sparse):
            checked += 1
            verdict = tensor_property_check(T, args.arity)
            if not verdict:
                candidates.append({"objects": list(T.objects), "witness": verdict.witness})
    return {"arity": str(args.arity), "seed": args.seed, "checked": checked, "candidates": candidates}, True


# parser -----------------------------------------------------------------------------


def _arity(text: str) -> Arity:
    try:
        return Arity.parse(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finframe", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches (default 0)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable, help_text: str, **kw) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text, **kw)
        p.set_defaults(handler=handler)
        return p

    add("check", cmd_check, "lattice, distributivity and frame report").add_argument("file")
    p = add("idl", cmd_idl, "lattice of k-ideals")
    p.add_argument("file")
    p.add_argument("--arity", type=_arity, default=Arity.parse("omega"))
    add("points", cmd_points, "points of a frame").add_argument("file")
    add("space", cmd_space, "point space with its topology").add_argument("file")
    add("dual", cmd_dual, "Hochster dual").add_argument("file")
    add("dim", cmd_dim, "heights and dimensions").add_argument("file")
    add("refine", cmd_refine, "chain of frame maps").add_argument("maps", nargs="+")
    p = add("ttg", cmd_ttg, "tensor-triangulated presentation")
    p.add_argument("file")
    p.add_argument("verb", choices=["rad", "frame", "spc", "support", "quotient", "extres"])
    p.add_argument("target", nargs="?", help="support datum file, or comma-separated objects for quotient")
    p.add_argument("--arity", type=_arity, default=Arity.parse("omega"))
    p.add_argument("--arity2", type=_arity, default=Arity.parse("omega"))
    p.add_argument("--sub", help="comma-separated sub-objects for extres (default all)")
    p.add_argument("--close", action="store_true", help="take the radical closure of the quotient objects")
    p = add("render", cmd_render, "Hasse diagram as DOT")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", help="print DOT text instead of JSON")
    p.add_argument("--spectrum", action="store_true", help="draw the specialization order of the points")
    p.add_argument("--arity", type=_arity, default=Arity.parse("omega"))
    p = add("search", cmd_search, "random search for tensor-property failures")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--arity", type=_arity, default=Arity.parse(3))
    return parser


def _failure(err: Exception) -> dict:
    out: dict[str, Any] = {"error": type(err).__name__, "message": str(err)}
    out["witness"] = getattr(err, "witness", None)
    return out


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Exit code and stdout text for ``argv``."""
    args = build_parser().parse_args(argv)
    head = {"command": args.command}
    if getattr(args, "file", None):
        head["file"] = Path(args.file).name
    try:
        result, ok = args.handler(args)
        code = 0 if ok else 1
    except (InputError, ValidationFailure, InvalidTopology, OSError) as err:
        result, code = _failure(err), 2
    except FinFrameError as err:
        result, code = _failure(err), 1
    if isinstance(result, Report):
        result = result.as_dict()
    if args.command == "render" and code == 0 and args.dot:
        return code, result["dot"]
    return code, emit_json([{**head, **result}])


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
