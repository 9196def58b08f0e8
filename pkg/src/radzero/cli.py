"""Command line front end.

Exit codes: 0 success, 1 a check failed, 2 parse or flag error, 3 the quiver
has structural defects, 4 domain error (e.g. vertex out of range).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import dsl
from .invariants import InvariantReport, extended_to_json, full_report
from .quiver import ValuedQuiver, validate
from .syzygy import INFINITY
from .verify import ALL_CHECKS, MAX_ENUMERATION_VERTICES, FuzzConfig, enumerate_report, fuzz, run_checks

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DEFECTS = 3
EXIT_DOMAIN = 4

SCHEMA_VERSION = 1


class _Exit(Exception):
    def __init__(self, code, message=""):
        super().__init__(message)
        self.code = code
        self.message = message


def _load(path: str) -> dsl.QuiverDocument:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise _Exit(EXIT_USAGE, f"error: cannot read {path}: {exc.strerror}")
    try:
        doc = dsl.parse(text)
    except dsl.ParseError as exc:
        raise _Exit(EXIT_USAGE, f"{path}: parse error: {exc}")
    defects = validate(doc.quiver)
    if defects:
        raise _Exit(EXIT_DEFECTS, "\n".join(f"{path}: {d}" for d in defects))
    return doc


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def report_json(q: ValuedQuiver, report: InvariantReport) -> dict:
    per_simple = {}
    for v, cert in report.dell_per_simple.items():
        per_simple[str(v)] = {
            "level": extended_to_json(cert.level),
            "failures": [{"n": n, "vertex": j} for n, j in cert.failures],
            "escapes": [
                {"vertex": e.vertex, "source": e.is_source, "path": list(e.path or ())}
                for e in cert.escapes
            ],
        }
    return {
        "schema_version": SCHEMA_VERSION,
        "quiver": dsl.serialize(q),
        "s": report.s.value,
        "s_witnesses": [{"vertex": j, "length": length} for j, length in report.s.witnesses],
        "findim_left_big": report.findim_left_big,
        "dell_algebra": extended_to_json(report.dell_algebra),
        "dell_per_simple": per_simple,
    }


def report_text(doc: dsl.QuiverDocument, report: InvariantReport) -> str:
    s = report.s
    lines = [
        f"vertices: {doc.quiver.vertex_count}, arrows: {len(doc.quiver.arrows)}",
        f"s = {'undefined' if s.value is None else s.value}"
        + (f" (witnesses: {', '.join(doc.label(j) for j, _ in s.witnesses)})" if s.witnesses else ""),
        f"Findim (left, big) = {report.findim_left_big}",
        f"dell = {report.dell_algebra}",
    ]
    for v, cert in report.dell_per_simple.items():
        lines.append(f"  dell(S_{doc.label(v)}) = {cert.level}")
    return "\n".join(lines)


def explain_dell(doc: dsl.QuiverDocument, v: int, report: InvariantReport) -> str:
    cert = report.dell_per_simple[v]
    name = doc.label
    parts = [f"dell(S_{name(v)}) = {cert.level}"]
    if cert.level == 0:
        reason = "a source" if v in doc.quiver.sources else "not a sink"
        parts.append(f"vertex {name(v)} is {reason}")
        return "; ".join(parts)
    # level 0 always fails at v itself once the level is positive
    for n, j in cert.failures:
        if n > 0:
            parts.append(f"n={n} fails at j={name(j)}")
    if cert.level is INFINITY:
        parts.append(f"no level up to n={cert.horizon} works, and the pattern repeats")
        return "; ".join(parts)
    for e in cert.escapes:
        if e.is_source:
            parts.append(f"n={cert.level}: j={name(e.vertex)} is a source")
        else:
            walk = "→".join(name(u) for u in e.path)
            parts.append(
                f"n={cert.level}: j={name(e.vertex)} escapes via {walk} "
                f"({name(e.path[-1])} not a sink)"
            )
    if not cert.escapes:
        parts.append(f"n={cert.level}: no paths of length {cert.level} end at {name(v)}")
    return "; ".join(parts)


# --- subcommands ------------------------------------------------------------


def cmd_compute(args) -> int:
    doc = _load(args.file)
    report = full_report(doc.quiver)
    print(_dump(report_json(doc.quiver, report)) if args.json else report_text(doc, report))
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = _load(args.file)
    result = run_checks(doc.quiver, max_val=args.max_val, oracle_depth=args.oracle_depth)
    if args.json:
        print(_dump({
            "schema_version": SCHEMA_VERSION,
            "quiver": result.quiver,
            "passed": result.passed,
            "checks": {
                name: {"passed": c.passed, "detail": c.detail, "values": c.values}
                for name, c in result.checks.items()
            },
        }))
    else:
        for name, c in result.checks.items():
            print(f"{name}: {'PASS' if c.passed else 'FAIL'} ({c.detail})")
    return EXIT_OK if result.passed else EXIT_CHECK_FAILED


def _family_text(report: dict, header: str) -> str:
    lines = [header]
    for name, count in report["passes"].items():
        lines.append(f"  {name}: {count}/{report['cases_run']} pass")
    for f in report["failures"]:
        lines.append(f"FAIL case {f['index']} {f['check']}: {f['detail']}")
        lines.append("  " + f["quiver"].rstrip("\n").replace("\n", "\n  "))
    if report.get("timing_ms") is not None:
        lines.append(f"time: {report['timing_ms']} ms")
    return "\n".join(lines)


def cmd_fuzz(args) -> int:
    try:
        cfg = FuzzConfig(
            count=args.count,
            min_vertices=args.min_vertices,
            max_vertices=args.max_vertices,
            arrow_prob=args.arrow_prob,
            loop_prob=args.loop_prob,
            max_val=args.max_val,
            seed=args.seed,
            oracle_depth=args.oracle_depth,
        )
    except ValueError as exc:
        raise _Exit(EXIT_USAGE, f"error: {exc}")
    report = fuzz(cfg, args.checks, timing=args.timing)
    if args.json:
        print(_dump(report))
    else:
        clean = "0 counterexamples" if not report["failures"] else f"{len(report['failures'])} failures"
        print(_family_text(report, f"{report['cases_run']} quivers (seed {cfg.seed}), {clean}"))
    return EXIT_CHECK_FAILED if report["failures"] else EXIT_OK


def cmd_enumerate(args) -> int:
    if not 0 <= args.vertices <= MAX_ENUMERATION_VERTICES:
        raise _Exit(EXIT_USAGE, f"error: --vertices must be in 0..{MAX_ENUMERATION_VERTICES}")
    report = enumerate_report(args.vertices, args.checks, timing=args.timing)
    passed = report["cases_run"] - len({f["index"] for f in report["failures"]})
    if args.json:
        print(_dump(report))
    else:
        print(_family_text(report, f"{report['cases_run']} quivers, {passed} pass"))
    return EXIT_CHECK_FAILED if report["failures"] else EXIT_OK


def cmd_export_dot(args) -> int:
    doc = _load(args.file)
    text = dsl.export_dot(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_explain(args) -> int:
    doc = _load(args.file)
    q = doc.quiver
    if not 1 <= args.vertex <= q.vertex_count:
        raise _Exit(EXIT_DOMAIN, f"error: vertex {args.vertex} not in 1..{q.vertex_count}")
    print(explain_dell(doc, args.vertex, full_report(q)))
    return EXIT_OK


def _checks_arg(text: str) -> tuple[str, ...]:
    names = tuple(n.strip() for n in text.split(",") if n.strip())
    unknown = [n for n in names if n not in ALL_CHECKS]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown checks: {', '.join(unknown)}")
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radzero",
        description="Homological invariants of radical-square-zero algebras from valued quivers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="print s, Findim and dell for a quiver")
    p.add_argument("file", help="a .quiver file, or - for stdin")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="run every check on one quiver")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--max-val", type=int, default=3)
    p.add_argument("--oracle-depth", type=int, default=4)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fuzz", help="run the checks on seeded random quivers")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--min-vertices", type=int, default=1)
    p.add_argument("--max-vertices", type=int, default=8)
    p.add_argument("--arrow-prob", type=float, default=0.25)
    p.add_argument("--loop-prob", type=float, default=None)
    p.add_argument("--max-val", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle-depth", type=int, default=4)
    p.add_argument("--checks", type=_checks_arg, default=ALL_CHECKS,
                   help="comma-separated subset of: " + ", ".join(ALL_CHECKS))
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-stability)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("enumerate", help="run the checks on every digraph with n vertices")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--checks", type=_checks_arg, default=ALL_CHECKS)
    p.add_argument("--timing", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("export-dot", help="write the quiver as a Graphviz digraph")
    p.add_argument("file")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("explain", help="show the certificate behind an invariant")
    p.add_argument("file")
    p.add_argument("invariant", choices=["dell"])
    p.add_argument("vertex", type=int)
    p.set_defaults(func=cmd_explain)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        if exc.message:
            print(exc.message, file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
