"""Command-line front end.

Every subcommand prints one JSON document on stdout.  Exit status: 0 when
a verdict or report was produced, 2 on malformed input, 3 when a
precondition on otherwise valid input fails.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, List, Optional

from . import lattice
from .fillhomology import homology_report
from .grouppres import PresentationSyntaxError, compile_presentation
from .obstruct import (
    OBSTRUCTED,
    detect_bad_configuration,
    enumerate_sphere_classes,
    etnyre_obstruction,
    no_minus_one_class,
)
from .page import FactorizationParseError, factorization_from_json
from .plumbing import (
    GraphParseError,
    classify_singularity_link,
    graph_from_json,
    parse_rational,
    seifert_graph,
    seifert_planarity_check,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3


class InputError(Exception):
    pass


class PreconditionError(Exception):
    pass


def _read(path: Optional[str]) -> str:
    try:
        if path in (None, "-"):
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")


def _load_json(path: Optional[str]) -> Any:
    text = _read(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")


def _render(obj: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict) and v:
                sub = _render(v, indent + 1)
                lines.append(f"{pad}- {sub[0].lstrip()}")
                lines.extend(sub[1:])
            elif isinstance(v, list) and not _is_flat(v):
                lines.append(f"{pad}-")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(pad + _inline(obj))
    return lines


def _is_flat(v: Any) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _is_flat(x)) for x in v)
    return False


def _inline(v: Any) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _emit(report: dict, pretty: bool):
    if pretty:
        print("\n".join(_render(report)))
    else:
        print(json.dumps(report, indent=2))


# ---------------------------------------------------------------------------


def cmd_check_graph(args) -> dict:
    try:
        G = graph_from_json(_load_json(args.path))
    except GraphParseError as exc:
        raise InputError(str(exc))
    if not G.is_connected():
        raise InputError("$.edges: resolution graph is not connected")
    cls = classify_singularity_link(G)
    primary = cls.to_verdict()
    report = {
        "verdict": primary.verdict,
        "reasons": [primary.reason],
        "witnesses": {"classification": primary.witness},
        "caveats": list(primary.caveats),
        "assumptions": {"lspace": bool(args.assume_lspace)},
    }
    Q = G.gram()
    if lattice.is_negative_definite(Q):
        config = detect_bad_configuration(G.intersection_graph())
        if config is not None:
            report["reasons"].append("star configuration: a center meets more (-2)/(-3) arms than minus its square")
            report["witnesses"]["configuration"] = config.to_json()
        # a negative definite plumbing has det != 0, so its boundary is a QHS^3
        etn = etnyre_obstruction(Q, boundary_is_qhs3=True)
        report["witnesses"]["diagonal_lattice"] = {"verdict": etn.verdict, "reason": etn.reason, **etn.witness}
        if etn.verdict == OBSTRUCTED:
            report["reasons"].append(etn.reason)
    return report


def cmd_check_fibration(args) -> dict:
    try:
        f = factorization_from_json(_load_json(args.path))
    except FactorizationParseError as exc:
        raise InputError(str(exc))
    rep = homology_report(f, verify=True)
    cert = no_minus_one_class(f)
    return {
        "holes": f.holes,
        "cycles": len(f),
        "report": rep.to_json(),
        "basis": [list(b) for b in rep.lattice.basis],
        "sphere_classes": [{"plus": s.plus, "minus": list(s.minus), "square": s.square} for s in enumerate_sphere_classes(f)],
        "no_minus_one_class": {
            "holds": cert.holds,
            "argument": cert.argument,
            "min_square": cert.min_square,
        },
    }


def cmd_seifert(args) -> dict:
    try:
        rs = [parse_rational(r) for r in args.r]
        G = seifert_graph(args.e0, rs)
        verdict = seifert_planarity_check(args.e0, rs, args.lspace)
    except ValueError as exc:
        raise InputError(str(exc))
    out = {"graph": G.to_json()}
    out.update(verdict.to_json())
    out["witness"].pop("graph", None)
    return out


def cmd_compile(args) -> dict:
    text = _read(args.path)
    try:
        bundle = compile_presentation(text)
    except PresentationSyntaxError as exc:
        raise InputError(str(exc))
    out = bundle.to_json()
    if args.emit_fibration:
        with open(args.emit_fibration, "w", encoding="utf-8") as fh:
            json.dump(bundle.factorization.to_json(), fh, indent=2)
            fh.write("\n")
    return out


def cmd_embed(args) -> dict:
    data = _load_json(args.path)
    Q = data.get("gram") if isinstance(data, dict) else data
    if not (isinstance(Q, list) and all(isinstance(r, list) for r in Q)):
        raise InputError("$: expected a matrix or {\"gram\": matrix}")
    n = len(Q)
    for i, row in enumerate(Q):
        if len(row) != n or not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
            raise InputError(f"$[{i}]: rows must be {n} integers")
    if not lattice.is_symmetric(Q):
        raise InputError("$: matrix is not symmetric")
    if not lattice.is_negative_definite(Q):
        raise PreconditionError("matrix is not negative definite")
    try:
        result = lattice.diagonal_embedding(Q, args.bound)
    except ValueError as exc:
        raise InputError(str(exc))
    if isinstance(result, lattice.NotEmbeddable):
        return {"embeddable": False, "bound": result.bound, "reason": result.reason}
    return {"embeddable": True, "rank": result.rank, "images": [list(v) for v in result.images]}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planarcheck", description="Planarity obstructions for contact 3-manifolds.")
    fmt = argparse.ArgumentParser(add_help=False)
    g = fmt.add_mutually_exclusive_group()
    g.add_argument("--json", dest="pretty", action="store_false", default=False, help="JSON output (default)")
    g.add_argument("--pretty", dest="pretty", action="store_true", default=False, help="human-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-graph", parents=[fmt], help="classify a plumbing/resolution graph")
    s.add_argument("path")
    s.add_argument("--assume-lspace", action="store_true")
    s.set_defaults(func=cmd_check_graph)

    s = sub.add_parser("check-fibration", parents=[fmt], help="homology of a planar Lefschetz fibration")
    s.add_argument("path")
    s.set_defaults(func=cmd_check_fibration)

    s = sub.add_parser("seifert", parents=[fmt], help="small Seifert fibered space M(e0; r1, r2, r3)")
    s.add_argument("--e0", type=int, required=True)
    s.add_argument("--r", nargs=3, required=True, metavar="P/Q")
    s.add_argument("--lspace", action="store_true")
    s.set_defaults(func=cmd_seifert)

    s = sub.add_parser("compile", parents=[fmt], help="compile a group presentation into a planar fibration")
    s.add_argument("path", nargs="?", default="-")
    s.add_argument("--emit-fibration", metavar="OUT")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("embed", parents=[fmt], help="embed a Gram matrix in a negative diagonal lattice")
    s.add_argument("path")
    s.add_argument("--bound", type=int)
    s.set_defaults(func=cmd_embed)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        report = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    _emit(report, args.pretty)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
