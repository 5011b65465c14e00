"""Command-line entry point: ``pgsat <command> ...``.

Exit codes: 0 success, 1 verification mismatch (or non-equivalent sets for
``equivalent``), 2 usage, input or resource error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import constructions
from .covercode import covering_radius, format_matrix, from_set, is_locally_optimal, parse_matrix
from .enumeration import (
    EnumerationError,
    EnumerationIncomplete,
    enumerate_classes,
    format_table,
    read_checkpoint,
    records_from_json,
    records_to_json,
    summarize,
)
from .geometry import GeometryError, format_sets, parse_sets
from .projgroup import are_equivalent, canonical_form, stabilizer_order
from .verify import attach_labels, set_properties, verify_summary, verify_tables

EXIT_OK, EXIT_MISMATCH, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _read_set(path: str, v: int | None):
    _, sets = parse_sets(Path(path).read_text(), v)
    if not sets:
        raise UsageError(f"{path} holds no set")
    return sets[0]


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=1))
    else:
        print(text)


def _cmd_verify_tables(args) -> int:
    report = verify_tables(seed=args.seed, random_maps=args.random_maps)
    _emit(args, report.to_json(), report.to_text())
    return EXIT_OK if report.passed else EXIT_MISMATCH


def _cmd_verify_summary(args) -> int:
    records = None
    if args.records:
        records = records_from_json(Path(args.records).read_text())
    report = verify_summary(args.v, args.kmax, records, threads=args.threads)
    _emit(args, report.to_json(), report.to_text())
    return EXIT_OK if report.passed else EXIT_MISMATCH


def _cmd_enumerate(args) -> int:
    try:
        records = enumerate_classes(
            args.v,
            args.kmax,
            threads=args.threads,
            split_depth=args.split_depth,
            checkpoint=args.checkpoint,
            resume=args.resume,
            time_limit=args.time_limit,
        )
    except EnumerationIncomplete as exc:
        if args.out:
            Path(args.out).write_text(records_to_json(exc.records) + "\n")
        print(f"incomplete: {exc}", file=sys.stderr)
        return EXIT_ERROR
    records = attach_labels(records)
    if args.out:
        Path(args.out).write_text(records_to_json(records) + "\n")
    if not records:
        _emit(args, {"v": args.v, "classes": 0}, "no classes found")
        return EXIT_OK
    k_max = args.kmax
    if args.resume:
        k_max = read_checkpoint(Path(args.resume))[1]
    summary = summarize(records, k_max)
    _emit(args, summary.to_json(), format_table(summary))
    return EXIT_OK


def _set_report(s) -> dict:
    props = set_properties(s)
    return {"v": s.v, "set": list(s.points), **props}


def _cmd_construct(args) -> int:
    kind = args.kind
    if kind == "gl":
        result = constructions.construct("gl", s=_read_set(args.set, args.v), pivot=args.pivot)
    elif kind == "double":
        result = constructions.construct("double", s=_read_set(args.set, args.v))
    elif kind == "hyperplane-complement":
        result = constructions.construct(kind, v=args.v, f=args.f)
    else:
        result = constructions.construct(kind, v=args.v, f=args.f, p=args.p)
    out = result.output
    payload = {**_set_report(out), "input": result.input_description, "verified": list(result.claimed_properties)}
    text = format_sets([out]) + f"# from: {result.input_description}\n# verified: {', '.join(result.claimed_properties) or 'none claimed'}"
    _emit(args, payload, text)
    return EXIT_OK


def _cmd_code(args) -> int:
    if args.action == "export":
        code = from_set(_read_set(args.set, args.v))
        _emit(args, {"r": code.r, "n": code.n, "rows": format_matrix(code).split()}, format_matrix(code).rstrip())
        return EXIT_OK
    code = parse_matrix(Path(args.matrix).read_text())
    radius = covering_radius(code)
    radius_out = None if radius == float("inf") else radius
    if args.action == "radius":
        _emit(args, {"r": code.r, "n": code.n, "covering_radius": radius_out},
              "infinite" if radius_out is None else str(radius_out))
    else:
        ok = is_locally_optimal(code)
        _emit(args, {"r": code.r, "n": code.n, "covering_radius": radius_out, "locally_optimal": ok},
              "locally optimal" if ok else "not locally optimal")
    return EXIT_OK


def _cmd_stabilizer(args) -> int:
    s = _read_set(args.set, args.v)
    order = stabilizer_order(s)
    _emit(args, {"v": s.v, "set": list(s.points), "stab_order": order}, str(order))
    return EXIT_OK


def _cmd_equivalent(args) -> int:
    a, b = _read_set(args.a, args.v), _read_set(args.b, args.v)
    same = are_equivalent(a, b)
    _emit(args, {"equivalent": same}, "equivalent" if same else "not equivalent")
    return EXIT_OK if same else EXIT_MISMATCH


def _cmd_canonical(args) -> int:
    s = _read_set(args.set, args.v)
    canon = canonical_form(s)
    payload = {"v": s.v, "canonical": list(canon.points), "witness_rows": list(canon.witness.rows)}
    _emit(args, payload, format_sets([canon.as_set()]).rstrip())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pgsat", description="Minimal 1-saturating sets in PG(v,2).", allow_abbrev=False)
    ap.add_argument("--format", choices=["text", "json"], default="text")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    ap.add_argument("--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def set_args(p, *names):
        for name in names:
            p.add_argument(f"--{name}", required=True, help="file in set text format")
        p.add_argument("--v", type=int, help="dimension when the file has no v=<n> header")

    verify = sub.add_parser("verify", help="check results against the bundled tables")
    vsub = verify.add_subparsers(dest="what", required=True)
    vt = vsub.add_parser("tables")
    vt.add_argument("--random-maps", type=int, default=0, help="also check invariance under this many random maps per set")
    vt.set_defaults(func=_cmd_verify_tables)
    vs = vsub.add_parser("summary")
    vs.add_argument("--v", type=int, required=True)
    vs.add_argument("--kmax", type=int)
    vs.add_argument("--threads", type=int, default=1)
    vs.add_argument("--records", help="JSON output of a previous enumerate run")
    vs.set_defaults(func=_cmd_verify_summary)

    en = sub.add_parser("enumerate", help="classify minimal 1-saturating sets")
    en.add_argument("--v", type=int, required=False)
    en.add_argument("--kmax", type=int)
    en.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    en.add_argument("--split-depth", type=int, default=4)
    en.add_argument("--checkpoint")
    en.add_argument("--resume")
    en.add_argument("--time-limit", type=float, help="seconds before stopping with a resumable checkpoint")
    en.add_argument("--out")
    en.set_defaults(func=_cmd_enumerate)

    co = sub.add_parser("construct", help="build sets from known constructions")
    csub = co.add_subparsers(dest="kind", required=True)
    gl = csub.add_parser("gl")
    set_args(gl, "set")
    gl.add_argument("--pivot", type=int, required=True)
    dbl = csub.add_parser("double")
    set_args(dbl, "set")
    hc = csub.add_parser("hyperplane-complement")
    hc.add_argument("--v", type=int, required=True)
    hc.add_argument("--f", type=int, required=True)
    hp = csub.add_parser("hyperplane-plus-point")
    hp.add_argument("--v", type=int, required=True)
    hp.add_argument("--f", type=int, required=True)
    hp.add_argument("--p", type=int, required=True)
    for p in (gl, dbl, hc, hp):
        p.set_defaults(func=_cmd_construct)

    code = sub.add_parser("code", help="covering-code view of a set")
    cdsub = code.add_subparsers(dest="action", required=True)
    ex = cdsub.add_parser("export")
    set_args(ex, "set")
    for action in ("radius", "local-optimal"):
        p = cdsub.add_parser(action)
        p.add_argument("--matrix", required=True)
    for p in cdsub.choices.values():
        p.set_defaults(func=_cmd_code)

    st = sub.add_parser("stabilizer")
    set_args(st, "set")
    st.set_defaults(func=_cmd_stabilizer)
    eq = sub.add_parser("equivalent")
    set_args(eq, "a", "b")
    eq.set_defaults(func=_cmd_equivalent)
    ca = sub.add_parser("canonical")
    set_args(ca, "set")
    ca.set_defaults(func=_cmd_canonical)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.command == "enumerate" and args.v is None and args.resume is None:
        ap.error("enumerate needs --v unless --resume is given")
    try:
        return args.func(args)
    except (GeometryError, EnumerationError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
