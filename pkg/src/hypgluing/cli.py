"""Command-line interface: ``hypgluing {validate,subdivide,solve,holonomy,spin}``.

Exit codes: 0 success, 1 negative validation verdict, 2 input error,
3 no solutions found, 4 degenerate development.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import fields
from pathlib import Path

import numpy as np

from .equations import gluing_system
from .fixtures import NAMES, fixture_text
from .holonomy import (
    DevelopmentError,
    characters,
    develop,
    generator_maps,
    presentation,
    relator_deviations,
)
from .hypgeom import GeometryError
from .solver import COMPLETENESS_CAVEAT, SolverOptions, max_volume, solve_all
from .spinning import model_scenario, scenario_from_dict, spin_report, symmetric_scenario
from .triangulation import (
    Triangulation,
    TriangulationError,
    barycentric_subdivide,
    parse_triangulation,
    validate,
)

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_EMPTY, EXIT_DEGENERATE = 0, 1, 2, 3, 4

TOL_KEYS = ("residual_tol", "dedup_tol", "rank_tol", "degenerate_tol")
SCENARIOS = {"symmetric": symmetric_scenario, "model": model_scenario}


class InputError(Exception):
    """Bad command-line input; maps to exit code 2."""


# --- serialization ----------------------------------------------------------------


def _encode(obj, indent: int = 0) -> str:
    # floats at 17 significant digits, NaN and infinities as null
    pad = "  " * (indent + 1)
    end = "  " * indent
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return format(x, ".17g") if math.isfinite(x) else "null"
    if isinstance(obj, complex):
        return _encode({"re": obj.real, "im": obj.imag}, indent)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(isinstance(v, (int, float, bool, np.number, np.bool_)) or v is None for v in seq):
            return "[" + ", ".join(_encode(v) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + _encode(v, indent + 1) for v in seq) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return _encode(obj) + "\n"


def _emit(text: str, output: str | None, suffix: str = "") -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
        return
    path = Path(output)
    if suffix:
        path = path.with_suffix(suffix)
    path.write_text(text, encoding="utf-8")


# --- input ------------------------------------------------------------------------


def _read_triangulation(source: str, subdivide: bool) -> Triangulation:
    """``source`` is a file path or ``@name`` for a bundled fixture."""
    try:
        if source.startswith("@"):
            text = fixture_text(source[1:])
        else:
            text = Path(source).read_text(encoding="utf-8")
    except (OSError, KeyError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc
    try:
        T = parse_triangulation(text)
    except TriangulationError as exc:
        raise InputError(f"{source}: {exc}") from exc
    if subdivide:
        if not (T.is_closed and T.is_oriented):
            raise InputError("subdivision needs a closed oriented triangulation")
        T = barycentric_subdivide(T)
    return T


def _parse_tol(items) -> dict[str, float]:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or key not in TOL_KEYS:
            raise InputError(f"--tol expects KEY=VALUE with KEY in {', '.join(TOL_KEYS)}; got {item!r}")
        try:
            x = float(value)
        except ValueError as exc:
            raise InputError(f"--tol {key}: not a number") from exc
        if not (math.isfinite(x) and x > 0):
            raise InputError(f"--tol {key} must be positive")
        out[key] = x
    return out


def _options(args) -> SolverOptions:
    try:
        return SolverOptions(seed=args.seed, restarts=args.restarts, threads=args.threads, **_parse_tol(args.tol))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _options_dict(opts: SolverOptions) -> dict:
    return {f.name: getattr(opts, f.name) for f in fields(opts)}


# --- subcommands --------------------------------------------------------------------


def cmd_validate(args) -> int:
    T = _read_triangulation(args.path, args.subdivide)
    report = validate(T)
    _emit(dumps(report.to_dict()), args.output)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_subdivide(args) -> int:
    T = _read_triangulation(args.path, True)
    _emit(T.to_json() + "\n", args.output)
    return EXIT_OK


def _solve(args):
    """Validate, then solve. Returns ``(exit code, triangulation, records, options, doc)``."""
    T = _read_triangulation(args.path, args.subdivide)
    report = validate(T)
    if not report.ok:
        _emit(dumps({"validation": report.to_dict()}), args.output)
        return EXIT_INVALID, T, [], None, None
    opts = _options(args)
    S = gluing_system(T)
    records = solve_all(S, opts)
    print(f"caveat: {COMPLETENESS_CAVEAT}", file=sys.stderr)
    top = max_volume(records)
    doc = {
        "caveat": COMPLETENESS_CAVEAT,
        "options": _options_dict(opts),
        "tet_count": T.tet_count,
        "solution_count": len(records),
        "max_volume_index": records.index(top) if top is not None else None,
        "max_volume": top.to_dict() if top is not None else None,
        "solutions": [rec.to_dict() for rec in records],
    }
    return (EXIT_OK if records else EXIT_EMPTY), T, records, opts, doc


def cmd_solve(args) -> int:
    code, _, _, _, doc = _solve(args)
    if doc is not None:
        _emit(dumps(doc), args.output)
    return code


def _select(records, selector: str):
    if selector == "max":
        return max_volume(records)
    try:
        i = int(selector)
    except ValueError as exc:
        raise InputError(f"selector must be 'max' or a record index, got {selector!r}") from exc
    if not 0 <= i < len(records):
        raise InputError(f"selector {i} out of range: {len(records)} records")
    return records[i]


def cmd_holonomy(args) -> int:
    if args.select != "max":
        try:
            int(args.select)
        except ValueError as exc:
            raise InputError(f"selector must be 'max' or a record index, got {args.select!r}") from exc
    code, T, records, _, _ = _solve(args)
    if code != EXIT_OK:
        return code
    rec = _select(records, args.select)
    pres = presentation(T)
    try:
        dev = develop(T, rec.z, pres=pres)
        gens = generator_maps(T, dev, pres)
    except DevelopmentError as exc:
        print(f"degenerate development: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    devs = relator_deviations(pres, gens)
    doc = {
        "solution_index": records.index(rec),
        "solution": rec.to_dict(),
        "generators": [
            {"face_pair": list(key), "matrix": [[complex(x) for x in row] for row in g]}
            for key, g in zip(pres.generators, gens)
        ],
        "relators": [list(w) for w in pres.relators],
        "relator_deviations": devs,
        "max_relator_deviation": max(devs, default=0.0),
        "max_cross_ratio_error": dev.max_cross_ratio_error(),
        "characters": characters(gens),
    }
    _emit(dumps(doc), args.output)
    return EXIT_OK


def _load_scenario(name: str):
    if name in SCENARIOS:
        return SCENARIOS[name]()
    try:
        doc = json.loads(Path(name).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read scenario {name}: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("scenario must be a JSON object")
    try:
        return scenario_from_dict(doc)
    except (GeometryError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid scenario: {exc}") from exc


def cmd_spin(args) -> int:
    report = spin_report(_load_scenario(args.scenario))
    doc = dumps(report.to_dict())
    if args.output is None or args.output == "-":
        sys.stdout.write(doc)
        return EXIT_OK
    _emit(doc, args.output, ".json")
    _emit(report.to_csv(), args.output, ".csv")
    return EXIT_OK


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypgluing",
        description="Solve the hyperbolic gluing equations of a closed oriented triangulation.",
        epilog="Exit codes: 0 ok, 1 validation failed, 2 input error, 3 no solutions, 4 degenerate development.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def triangulation_cmd(name, help_text, subdivide=True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path", help=f"triangulation JSON file, or @NAME for a bundled fixture ({', '.join(NAMES)})")
        if subdivide:
            p.add_argument("--subdivide", action="store_true", help="apply barycentric subdivision first")
        p.add_argument("--output", "-o", help="output file (default: stdout)")
        return p

    def solver_flags(p):
        p.add_argument("--seed", type=int, default=0, help="random seed for the starting points (default 0)")
        p.add_argument("--restarts", type=int, default=512, help="number of random starts (default 512)")
        p.add_argument(
            "--tol",
            action="append",
            metavar="KEY=VALUE",
            help=f"tolerance override, repeatable; KEY in {', '.join(TOL_KEYS)}",
        )
        p.add_argument("--threads", type=int, default=1, help="worker threads for the Newton runs (default 1)")

    p = triangulation_cmd("validate", "check closedness, orientation and vertex links")
    p.set_defaults(func=cmd_validate)
    p = triangulation_cmd("subdivide", "write the barycentric subdivision", subdivide=False)
    p.set_defaults(func=cmd_subdivide)
    p = triangulation_cmd("solve", "find solutions of the gluing equations")
    solver_flags(p)
    p.set_defaults(func=cmd_solve)
    p = triangulation_cmd("holonomy", "holonomy representation of a solution")
    solver_flags(p)
    p.add_argument("--select", default="max", help="'max' (default) or the index of a solve record")
    p.set_defaults(func=cmd_holonomy)

    p = sub.add_parser("spin", help="convergence table for a spinning simplex")
    p.add_argument(
        "--scenario",
        default="symmetric",
        help=f"bundled scenario ({', '.join(SCENARIOS)}) or a scenario JSON file (default symmetric)",
    )
    p.add_argument("--output", "-o", help="output stem; writes STEM.json and STEM.csv (default: JSON to stdout)")
    p.set_defaults(func=cmd_spin)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
