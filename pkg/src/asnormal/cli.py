"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import AsnormalError
from .report import RunConfig, emit, failed_theorem_rows, run_pencil, run_quadrics, run_single, run_sweep


def _pencil_grid(text: str):
    try:
        a, b, deltas = text.split(",")
        return int(a), int(b), tuple(int(d) for d in deltas.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("expected A,B,D1:D2:... e.g. 3,3,0:1:5") from None


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="asnormal", description=__doc__.splitlines()[0])
    ap.add_argument("--mode", choices=["single", "sweep", "pencil", "quadrics"], default="single")
    ap.add_argument("--p", type=int, help="characteristic")
    ap.add_argument("--k", type=int, default=1, help="extension degree, q = p^k")
    ap.add_argument("--m", type=int, help="degree of f")
    ap.add_argument("--t", type=int, help="CASE2 parameter t (m divides tq+1)")
    ap.add_argument("--t-max", type=int, default=2, help="largest t in a CASE2 sweep")
    ap.add_argument("--regime", choices=["CASE1", "CASE2"], default="CASE1")
    ap.add_argument("--f", default="x^m", help="'x^m', 'random', or comma-separated base-p codes low to high")
    ap.add_argument("--seed", type=_seed, help="64-bit seed for random f")
    ap.add_argument("--s-extra", type=int, default=2, help="extra s >= m values to spot-check")
    ap.add_argument("--max-q", type=int, default=64)
    ap.add_argument("--n-random", type=int, default=2, help="random f per curve in a sweep")
    ap.add_argument("--format", choices=["json", "csv"], default="json")
    ap.add_argument("--out", help="output file (default stdout)")
    ap.add_argument("--witnesses", action="store_true", help="include the witness table")
    ap.add_argument("--pencil-grid", type=_pencil_grid, default=(3, 3, (0, 1, 5)), metavar="A,B,D1:D2:...")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    ap.add_argument("--timing", action="store_true", help="record elapsed time (output no longer reproducible)")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    config = RunConfig(**{k: v for k, v in vars(args).items()})
    if config.format == "csv" and config.mode in ("pencil", "quadrics"):
        print("error: --format csv only applies to single and sweep modes", file=sys.stderr)
        return 2
    try:
        if config.mode == "single":
            docs = run_single(config)
            failed = docs["verdict"] == "FAILED"
        elif config.mode == "sweep":
            docs = run_sweep(config)
            failed = bool(failed_theorem_rows(docs))
        elif config.mode == "pencil":
            docs = run_pencil(config)
            failed = docs["verdict"] != "SURJECTIVE"
        else:
            docs = run_quadrics(config)
            failed = docs["verdict"] != "MATCH"
    except AsnormalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = emit(docs, config.format)
    if config.out:
        with open(config.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
