"""Command-line front end: ``shuttlec compile|schedule|verify|reduce``.

Exit codes: 0 success, 1 a verification check failed, 2 bad usage or input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Sequence

from . import hardness, oracle
from .circuits import CircuitError, SyndromeCircuit, build_circuit, combined_circuit
from .codes import CodeError, CssCode, code_from_name, load_css
from .compiler import CompileError, ahr, blanks_schedule, compile_best, gate_shuffle, sssc
from .verify import run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

REPORT_FIELDS = (
    "code",
    "n",
    "style",
    "basis",
    "s",
    "uncompiled",
    "gate_shuffled",
    "ahr",
    "ahr_heuristic",
    "sssc",
    "num_chains",
    "blanks",
    "gap_runs",
    "best_pass",
    "best",
)


class UsageError(Exception):
    pass


def resolve_code(target: str) -> CssCode:
    """Built-in name, or ``file:X[,Z]`` / a path to a matrix file."""
    if target.startswith("file:"):
        paths = target[5:].split(",")
    elif os.path.exists(target):
        paths = [target]
    else:
        return code_from_name(target)
    if len(paths) > 2 or not all(paths):
        raise UsageError(f"expected file:X or file:X,Z, got {target!r}")
    try:
        return load_css(*paths)
    except OSError as exc:
        raise UsageError(f"cannot read {exc.filename}: {exc.strerror}") from None


def _circuits(code: CssCode, style: str, basis: str, combined: bool) -> list[tuple[str, SyndromeCircuit]]:
    if combined:
        return [("XZ", combined_circuit(code, style))]  # type: ignore[arg-type]
    picks = ["X", "Z"] if basis == "both" else [basis.upper()]
    return [(b, build_circuit(code.matrix(b), style, b)) for b in picks]  # type: ignore[arg-type]


def compile_code(target: str, style: str, basis: str, combined: bool) -> list[dict[str, Any]]:
    code = resolve_code(target)
    rows = []
    for b, circuit in _circuits(code, style, basis, combined):
        result = compile_best(circuit, allow_mixed=combined)
        row = {"code": code.name, "n": code.n, "style": style, "basis": b, "s": circuit.s}
        row.update(result.counts())
        row["reindexing"] = list(result.best.reindexing.pi)
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# output formats


def _cell(v: Any) -> str:
    return "-" if v is None else str(v)


def format_rows(rows: list[dict[str, Any]], fmt: str, fields: Sequence[str] = REPORT_FIELDS) -> str:
    if fmt == "json":
        return json.dumps({"reports": rows}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(fields), extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        w.writerows({k: ("" if r.get(k) is None else r.get(k)) for k in fields} for r in rows)
        return buf.getvalue()
    table = [list(fields)] + [[_cell(r.get(k)) for k in fields] for r in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(fields))]
    return "".join(
        "  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip() + "\n" for line in table
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_compile(args: argparse.Namespace) -> int:
    if args.pedagogical_combined and args.basis != "both":
        raise UsageError("--pedagogical-combined compiles both bases together; drop --basis")
    specs = [c for group in args.code for c in group]
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        batches = list(
            pool.map(
                lambda c: compile_code(c, args.style, args.basis, args.pedagogical_combined), specs
            )
        )
    rows = [r for batch in batches for r in batch]
    _emit(format_rows(rows, args.format), args.out)
    return EXIT_OK


def cmd_schedule(args: argparse.Namespace) -> int:
    code = resolve_code(args.code)
    if args.pedagogical_combined:
        circuit = combined_circuit(code, args.style)
    else:
        circuit = build_circuit(code.matrix(args.basis.upper()), args.style, args.basis.upper())
    if args.pass_name in ("sssc", "blanks") and not circuit.is_singleton():
        raise UsageError(f"--pass {args.pass_name} needs --style shor")
    mixed = args.pedagogical_combined
    if args.pass_name == "shuffle":
        schedule = gate_shuffle(circuit, allow_mixed=mixed)
    elif args.pass_name == "ahr":
        _, schedule = ahr(circuit, allow_mixed=mixed)
    elif args.pass_name == "sssc":
        _, schedule = sssc(circuit, allow_mixed=mixed)
    else:
        _, schedule = blanks_schedule(circuit, allow_mixed=mixed)
    schedule.validate(circuit)

    if args.format == "text":
        body = schedule.to_text()
    else:
        doc = {"code": code.name, "n": code.n, "style": args.style, **schedule.to_dict()}
        body = json.dumps(doc, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(body, encoding="utf-8")
        print(f"shuttles={schedule.shuttles} blanks={schedule.blanks} -> {args.out}")
    else:
        sys.stdout.write(body)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.random < 0:
        raise UsageError("--random must be non-negative")
    limit = args.limit if args.limit is not None else oracle.default_limit()
    if args.max_s > limit:
        raise UsageError(f"--max-s {args.max_s} exceeds the brute-force limit {limit}")
    suites = run_all(args.random, args.max_s, args.seed, limit)
    rows = [s.to_dict() for s in suites]
    if args.format == "json":
        sys.stdout.write(json.dumps({"ok": all(s.ok for s in suites), "suites": rows}, indent=2) + "\n")
    else:
        fields = ("suite", "checked", "violations")
        sys.stdout.write(format_rows(rows, "csv" if args.format == "csv" else "table", fields))
        for s in suites:
            for v in s.violations[:5]:
                print(f"{s.name}: {v}", file=sys.stderr)
    return EXIT_OK if all(s.ok for s in suites) else EXIT_FAIL


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def cmd_reduce(args: argparse.Namespace) -> int:
    if args.demo:
        inst, triples = hardness.DEMO, hardness.DEMO_TRIPLES
    else:
        inst = hardness.parse_instance(_read(args.instance))
        triples = hardness.parse_triples(_read(args.partition)) if args.partition else None

    r = hardness.reduce(inst, enforce_bounds=not args.allow_loose_bounds)
    report = hardness.verify_lemmas(r)
    doc: dict[str, Any] = {
        "instance": {"m": inst.m, "t": inst.t, "a": list(inst.a)},
        "a_star": r.a_star,
        "size": r.size,
        "target": r.target,
        "c0": list(r.c0),
        "s_multiset": list(r.s_multiset),
        "lemmas": report.to_dict(),
    }
    ok = report.ok
    if triples is not None:
        pi = hardness.pack_from_partition(r, triples)
        outputs = hardness.count_outputs(r.s_multiset, pi.pi)
        recovered = hardness.extract_partition(r, pi)
        doc["packing"] = {
            "distinct_outputs": outputs,
            "reindexing": list(pi.pi),
            "triples": [list(t) for t in triples],
            "recovered": [list(t) for t in recovered],
        }
        ok = ok and outputs == r.target and sorted(recovered) == sorted(map(tuple, triples))
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def _add_code_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--style", choices=("naive", "shor"), default="shor")
    p.add_argument(
        "--pedagogical-combined",
        action="store_true",
        help="put X and Z checks in one circuit (illustration only; not a valid schedule)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shuttlec", description="Shuttle-count compiler for 2xN quantum-dot syndrome circuits."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="shuttle counts for every pass, one row per basis")
    p.add_argument(
        "--code",
        action="append",
        nargs="+",
        required=True,
        metavar="CODE",
        help="steane, shor9, toric:L, surface:L, gross, gb48, qcghp882, "
        "bb:l,m:A:B, gb:l:a:b, or file:X[,Z]",
    )
    _add_code_flags(p)
    p.add_argument("--basis", choices=("x", "z", "both"), default="both")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("schedule", help="dump one pass's grouped gate schedule")
    p.add_argument("--code", required=True)
    _add_code_flags(p)
    p.add_argument("--basis", choices=("x", "z"), default="x")
    p.add_argument(
        "--pass", dest="pass_name", choices=("shuffle", "ahr", "sssc", "blanks"), default="sssc"
    )
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("verify", help="seeded oracle-vs-heuristic checks on random instances")
    p.add_argument("--random", type=int, default=100, metavar="COUNT")
    p.add_argument("--max-s", type=int, default=7)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int, help=f"brute-force cap (default ${oracle.LIMIT_ENV} or 9)")
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", help="3-partition reduction and lemma report as JSON")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--instance", help="file with 'm T' followed by 3m integers")
    src.add_argument("--demo", action="store_true")
    p.add_argument("--partition", help="file with one index triple per line (1-based)")
    p.add_argument(
        "--allow-loose-bounds",
        action="store_true",
        help="accept values outside T/4 < a_i < T/2",
    )
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "partition", None) and args.demo:
            raise UsageError("--partition needs --instance")
        return args.func(args)
    except (
        UsageError,
        CodeError,
        CircuitError,
        CompileError,
        hardness.ReductionError,
        oracle.OracleLimitError,
    ) as exc:
        print(f"shuttlec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
