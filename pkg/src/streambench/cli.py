"""Command-line front end: run sweeps, fit the model, run selftests.

Owns the CSV and JSON wire formats shared with external plotters: CSV is
UTF-8, comma-separated, LF line endings, one header, floats printed with
17 significant digits (lossless round trip for float64).
"""

import argparse
import json
import math
import os
import sys

from . import parallel
from .core import BS_TESTS, vector_bytes_per_element
from .harness import (BandwidthSample, SweepError, SweepPlan, geometric_sizes,
                      run_sweep)
from .kernels import ReductionConfig
from .model import ModelFitError, efficiency_point, fit_model

CSV_HEADER = "test,order,K,n_elements,nl,ng,bytes,trials,elapsed_s,bandwidth_GBps"
_VECTOR_TESTS = ("bs1", "bs2", "bs3", "bs4", "bs5")


class UsageError(ValueError):
    """Bad flag values; maps to exit code 2."""


def _fmt_float(v: float) -> str:
    return f"{v:.17g}"


def sample_to_csv_row(s: BandwidthSample) -> str:
    cells = [
        s.test,
        "" if s.order is None else str(s.order),
        "" if s.K is None else str(s.K),
        "" if s.n is None else str(s.n),
        "" if s.nl is None else str(s.nl),
        "" if s.ng is None else str(s.ng),
        str(s.bytes),
        str(s.trials),
        _fmt_float(s.elapsed),
        _fmt_float(s.bandwidth),
    ]
    return ",".join(cells)


def write_samples_csv(samples, stream) -> None:
    stream.write(CSV_HEADER + "\n")
    for s in samples:
        stream.write(sample_to_csv_row(s) + "\n")


def write_samples_json(samples, stream) -> None:
    rows = [{"test": s.test, "order": s.order, "K": s.K, "n_elements": s.n,
             "nl": s.nl, "ng": s.ng, "bytes": s.bytes, "trials": s.trials,
             "elapsed_s": s.elapsed, "bandwidth_GBps": s.bandwidth}
            for s in samples]
    json.dump(rows, stream, indent=2)
    stream.write("\n")


class CSVFormatError(ValueError):
    pass


def read_samples_csv(path) -> list[BandwidthSample]:
    """Parse a sweep CSV back into samples; names the line of any bad cell."""
    samples = []
    with open(path, "r", encoding="utf-8", newline="") as f:
        header = f.readline().rstrip("\n").rstrip("\r")
        if header != CSV_HEADER:
            raise CSVFormatError(f"{path}: line 1: expected header "
                                 f"{CSV_HEADER!r}, got {header!r}")
        for lineno, line in enumerate(f, start=2):
            line = line.rstrip("\n").rstrip("\r")
            if not line:
                continue
            cells = line.split(",")
            if len(cells) != 10:
                raise CSVFormatError(
                    f"{path}: line {lineno}: expected 10 columns, got {len(cells)}")
            try:
                samples.append(BandwidthSample(
                    test=cells[0],
                    order=int(cells[1]) if cells[1] else None,
                    K=int(cells[2]) if cells[2] else None,
                    n=int(cells[3]) if cells[3] else None,
                    nl=int(cells[4]) if cells[4] else None,
                    ng=int(cells[5]) if cells[5] else None,
                    bytes=int(cells[6]),
                    trials=int(cells[7]),
                    elapsed=float(cells[8]),
                    bandwidth=float(cells[9]),
                ))
            except ValueError as exc:
                raise CSVFormatError(f"{path}: line {lineno}: {exc}") from None
    return samples


def _resolve_threads(value) -> int:
    if value is not None:
        return value
    env = os.environ.get("STREAMBENCH_THREADS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"STREAMBENCH_THREADS={env!r} is not an integer") from None
    return 1


def _vector_sizes(test, min_bytes, max_bytes, points):
    if min_bytes <= 0 or max_bytes < min_bytes:
        raise UsageError(f"need 0 < --min-bytes <= --max-bytes, got "
                         f"{min_bytes}..{max_bytes}")
    bpe = vector_bytes_per_element(test)
    n_min = max(1, math.ceil(min_bytes / bpe))
    n_max = max(n_min, math.floor(max_bytes / bpe))
    return geometric_sizes(n_min, n_max, points)


def cmd_run(args) -> int:
    tests = list(_VECTOR_TESTS) + ["bs6", "bs7"] if args.test == "all" else [args.test]
    threads = _resolve_threads(args.threads)
    if threads < 1:
        raise UsageError(f"--threads must be >= 1, got {threads}")
    if args.kmax < args.kmin:
        raise UsageError(f"--kmax must be >= --kmin, got {args.kmax} < {args.kmin}")
    parallel.set_num_workers(threads)
    cfg = ReductionConfig(block_size=args.block_size, n_blocks=args.n_blocks)

    all_samples = []
    for test in tests:
        if test in _VECTOR_TESTS:
            sizes = _vector_sizes(test, args.min_bytes, args.max_bytes, args.points)
        else:
            sizes = [(k, args.order) for k in range(args.kmin, args.kmax + 1)]
        plan = SweepPlan(test=test, sizes=sizes, trials=args.trials,
                         warmup=args.warmup, seed=args.seed)
        samples = run_sweep(plan, cfg, nodes_per_block=args.nodes_per_block)
        peak = max(s.bandwidth for s in samples)
        print(f"{test}: {len(samples)} sizes, {args.trials} trials each, "
              f"peak {peak:.2f} GB/s", file=sys.stderr)
        all_samples.extend(samples)

    writer = write_samples_json if args.format == "json" else write_samples_csv
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            writer(all_samples, f)
    else:
        writer(all_samples, sys.stdout)
    return 0


def cmd_fit(args) -> int:
    samples = read_samples_csv(args.csv)
    if args.min_bytes > 0:
        samples = [s for s in samples if s.bytes >= args.min_bytes]
    if not 0.0 < args.eff < 1.0:
        raise UsageError(f"--eff must lie in (0, 1), got {args.eff}")

    groups: dict[tuple, list] = {}
    for s in samples:
        groups.setdefault((s.test, s.order), []).append(s)
    if not groups:
        raise ModelFitError("no samples to fit")

    report = []
    for (test, order), group in groups.items():
        try:
            fit = fit_model(group, weighted=args.weighted)
        except ModelFitError as exc:
            raise ModelFitError(f"group test={test} order={order}: {exc}") from None
        report.append({
            "test": test,
            "order": order,
            "T0_s": fit.t0,
            "Wmax_Bps": fit.wmax,
            "B80_bytes": efficiency_point(fit, args.eff),
            "r2": fit.r2,
            "n_points": fit.n_points,
            "clamped_T0": fit.clamped_t0,
        })

    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            json.dump(report, f, indent=2)
            f.write("\n")
    else:
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write("\n")
    return 0


def cmd_selftest(args) -> int:
    from . import selftest

    if args.list:
        for name, _ in selftest.CHECKS:
            print(name)
        return 0
    if args.threads is not None:
        parallel.set_num_workers(args.threads)
    _, failed = selftest.run_checks(inject_fault=args.inject_fault)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="streambench",
        description="Memory-streaming benchmark suite with latency/bandwidth "
                    "model fitting")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run timed sweeps and emit samples")
    run.add_argument("--test", required=True, choices=list(BS_TESTS) + ["all"])
    run.add_argument("--min-bytes", type=float, default=1e3,
                     help="smallest data-moved target for bs1-bs5 (default 1e3)")
    run.add_argument("--max-bytes", type=float, default=1e8,
                     help="largest data-moved target for bs1-bs5 (default 1e8)")
    run.add_argument("--points", type=int, default=400)
    run.add_argument("--trials", type=int, default=20)
    run.add_argument("--warmup", type=int, default=1)
    run.add_argument("--order", type=int, default=7,
                     help="polynomial order for bs6/bs7 sweeps")
    run.add_argument("--kmin", type=int, default=2)
    run.add_argument("--kmax", type=int, default=16)
    run.add_argument("--threads", type=int, default=None,
                     help="worker threads (default: STREAMBENCH_THREADS or 1)")
    run.add_argument("--block-size", type=int, default=256)
    run.add_argument("--n-blocks", type=int, default=512)
    run.add_argument("--nodes-per-block", type=int, default=512)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--out", default=None, help="output path (default stdout)")
    run.add_argument("--format", choices=["csv", "json"], default="csv")
    run.set_defaults(func=cmd_run)

    fit = sub.add_parser("fit", help="fit the latency/bandwidth model to a sweep CSV")
    fit.add_argument("csv", help="input CSV produced by `run`")
    fit.add_argument("--min-bytes", type=float, default=0.0,
                     help="exclude rows moving fewer bytes from the regression")
    fit.add_argument("--eff", type=float, default=0.8,
                     help="efficiency fraction for the reported size (default 0.8)")
    fit.add_argument("--weighted", action="store_true",
                     help="weight the regression by 1/t^2 (relative-error fit)")
    fit.add_argument("--out", default=None, help="output path (default stdout)")
    fit.set_defaults(func=cmd_fit)

    selftest = sub.add_parser("selftest", help="run the built-in oracle checks")
    selftest.add_argument("--list", action="store_true",
                          help="print check names without running")
    selftest.add_argument("--threads", type=int, default=None)
    selftest.add_argument("--inject-fault", action="store_true",
                          help=argparse.SUPPRESS)
    selftest.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"streambench: error: {exc}", file=sys.stderr)
        return 2
    except (SweepError, ModelFitError, CSVFormatError, OSError, ValueError) as exc:
        print(f"streambench: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
