"""Command line front end.

Subcommands: cover, primes, decompose, witness, verify-csv, split.  Output
is deterministic for fixed inputs except the timing lines, which carry the
fixed prefix "time:" so tooling can strip them before comparing runs.

Exit codes: 0 success, 1 invalid CSV row, 2 unsolved q remained, 3 witness
search exhausted, 5 strict distinctness violated, 64 usage, 65 malformed
file, 74 I/O failure.
"""

from __future__ import annotations

import argparse
import os
import signal
import sys
from pathlib import Path

from .batch import (
    BatchConfig,
    ResumeError,
    ScanCancelled,
    ScanMode,
    checkpoint_resume,
    run_coverage,
    run_prime_coverage,
)
from .decompose import UnsolvedError, decompose_any, verify_exact
from .families import PolyId, eval_poly, WitnessTriple
from .numutil import is_prime
from .reports import ReportFormatError, read_results, split_by_family
from .search import staged_search

EX_UNSOLVED = 2
EX_EXHAUSTED = 3
EX_NONDISTINCT = 5
EX_USAGE = 64
EX_DATAERR = 65
EX_IOERR = 74


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit 2
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _default_out_dir() -> Path:
    return Path(os.environ.get("ERDOS_STRAUS_OUT_DIR", "."))


def build_parser() -> _Parser:
    p = _Parser(prog="erdos-straus", description=__doc__.split("\n")[1])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_range_flags(sp, step=True):
        sp.add_argument("--q-start", type=int, default=1)
        sp.add_argument("--q-max", type=int, required=True)
        if step:
            sp.add_argument("--step", type=int, default=1)
        sp.add_argument("--batch-size", type=int, default=1_000_000)
        sp.add_argument("--workers", type=int, default=os.cpu_count() or 1)
        sp.add_argument("--out-dir", type=Path, default=_default_out_dir())
        sp.add_argument("--resume", action="store_true", help="skip batches recorded complete")

    sp = sub.add_parser("cover", help="classify every q in a range")
    add_range_flags(sp)

    sp = sub.add_parser("primes", help="prime-coverage scan over q = 6c")
    add_range_flags(sp, step=False)

    sp = sub.add_parser("decompose", help="unit-fraction decomposition of 4/a")
    sp.add_argument("a", type=int)
    sp.add_argument("--strict-distinct", action="store_true")

    sp = sub.add_parser("witness", help="family witness for one q")
    sp.add_argument("q", type=int)

    sp = sub.add_parser("verify-csv", help="revalidate every row of a results file")
    sp.add_argument("path", type=Path)

    sp = sub.add_parser("split", help="split a coverage file by family")
    sp.add_argument("path", type=Path)
    sp.add_argument("--out-dir", type=Path, default=_default_out_dir())
    return p


def _install_cancel():
    flag = {"stop": False}

    def handler(signum, frame):
        flag["stop"] = True

    try:
        signal.signal(signal.SIGINT, handler)
        signal.signal(signal.SIGTERM, handler)
    except ValueError:
        pass  # not the main thread (tests)
    return lambda: flag["stop"]


def _cmd_cover(args) -> int:
    if args.q_start > args.q_max:
        print("error: q-start must not exceed q-max", file=sys.stderr)
        return EX_USAGE
    cfg = BatchConfig(
        q_start=args.q_start,
        q_max=args.q_max,
        step=args.step,
        batch_size=args.batch_size,
        mode=ScanMode.COVERAGE,
        worker_count=args.workers,
        output_dir=args.out_dir,
    )
    if args.resume:
        cfg = checkpoint_resume(cfg)
    print(f"qStart = {cfg.q_start}, qMax = {cfg.q_max}, step = {cfg.step}")
    print(f"Batch size (number of q values per batch) = {cfg.batch_size}")
    reports = run_coverage(cfg, cancel=_install_cancel())
    for r in reports:
        print(f"Batch {r.batch_index}: q in [{r.q_range[0]}, {r.q_range[1]}]")
        print(f"Unsolved q in batch {r.batch_index}: {len(r.unsolved)}")
        print(f"Solutions found: {r.solved_count}")
        print(f"time: {r.elapsed_seconds:.2f} sec")
        for poly in PolyId:
            if r.tallies.get(poly):
                print(f"   {poly.label}: {r.tallies[poly]}")
    print("Global unsolved q saved (CSV).")
    print("All batches complete.")
    return EX_UNSOLVED if any(r.unsolved for r in reports) else 0


def _cmd_primes(args) -> int:
    if args.q_start > args.q_max:
        print("error: q-start must not exceed q-max", file=sys.stderr)
        return EX_USAGE
    q_start = args.q_start + (-args.q_start) % 6  # align upward to 6c
    cfg = BatchConfig(
        q_start=max(q_start, 6),
        q_max=args.q_max,
        step=6,
        batch_size=args.batch_size,
        mode=ScanMode.PRIME_COVERAGE,
        worker_count=args.workers,
        output_dir=args.out_dir,
    )
    if args.resume:
        cfg = checkpoint_resume(cfg)
    print(f"qStart = {cfg.q_start}, qMax = {cfg.q_max}, step = {cfg.step}")
    print(f"Batch size = {cfg.batch_size}")
    reports = run_prime_coverage(cfg, cancel=_install_cancel())
    for r in reports:
        print(
            f"Processing batch {r.batch_index}/{len(reports)}: "
            f"q in [{r.q_range[0]}, {r.q_range[1]}]"
        )
        print(f"Solutions found: {r.solved_count}")
        print(f"Unsolved q: {len(r.unsolved)}")
        print(f"time: {r.elapsed_seconds:.2f} sec")
        print(f"Batch {r.batch_index} complete")
    print("Processing complete!")
    print(f"Total solutions found: {sum(r.solved_count for r in reports)}")
    print(f"Total unsolved q: {sum(len(r.unsolved) for r in reports)}")
    print(f"All results saved to: {cfg.output_dir / 'Results'}")
    return EX_UNSOLVED if any(r.unsolved for r in reports) else 0


def _cmd_decompose(args) -> int:
    if args.a < 2:
        print("error: a must be >= 2", file=sys.stderr)
        return EX_USAGE
    try:
        rec = decompose_any(args.a)
    except UnsolvedError as exc:
        print(f"unsolved: {exc}", file=sys.stderr)
        return EX_EXHAUSTED
    b, c, d = rec.triple
    assert verify_exact(rec.a, rec.triple)
    print(f"a = {rec.a}")
    print(f"provenance = {rec.provenance.value}")
    if rec.witness is not None:
        poly, t = rec.witness
        print(f"witness = {poly.label} ({t.x},{t.y},{t.z})")
    print(f"b c d = {b} {c} {d}")
    print(f"4/{rec.a} = 1/{b} + 1/{c} + 1/{d} (verified exact)")
    if not rec.triple.distinct:
        print("warning: denominators are not pairwise distinct")
        if args.strict_distinct:
            return EX_NONDISTINCT
    return 0


def _cmd_witness(args) -> int:
    if args.q < 1:
        print("error: q must be >= 1", file=sys.stderr)
        return EX_USAGE
    w = staged_search(args.q)
    if w is None:
        print(f"no witness found for q = {args.q}")
        return EX_EXHAUSTED
    x, y, z = w.triple
    if w.poly is PolyId.P4:
        print(f"{w.poly.label} x={x}")
    elif w.poly is PolyId.P3:
        print(f"{w.poly.label} x={x} y={y}")
    else:
        print(f"{w.poly.label} x={x} y={y} z={z}")
    return 0


def _verify_row(row) -> bool:
    if row.pi is None:  # prime schema
        ok = (4 * row.x - 1) * (4 * row.y * row.z - 1) - 4 * row.x * row.z == 4 * row.q + 1
        return ok and is_prime(4 * row.q + 1)
    poly = PolyId.from_label(row.pi)
    t = WitnessTriple(row.x, row.y if row.y is not None else 1, row.z if row.z is not None else 1)
    return eval_poly(poly, t) == row.q


def _cmd_verify_csv(args) -> int:
    rows = read_results(args.path)
    for lineno, row in enumerate(rows, start=2):
        if not _verify_row(row):
            print(f"{args.path}:{lineno}: invalid row {row}")
            return 1
    print(f"{args.path}: {len(rows)} rows verified")
    return 0


def _cmd_split(args) -> int:
    paths = split_by_family(args.path, args.out_dir)
    for p in paths:
        print(p)
    return 0


_COMMANDS = {
    "cover": _cmd_cover,
    "primes": _cmd_primes,
    "decompose": _cmd_decompose,
    "witness": _cmd_witness,
    "verify-csv": _cmd_verify_csv,
    "split": _cmd_split,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ReportFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DATAERR
    except ResumeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DATAERR
    except ScanCancelled as exc:
        print(f"cancelled: {exc}", file=sys.stderr)
        return 130
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EX_IOERR


if __name__ == "__main__":
    sys.exit(main())
