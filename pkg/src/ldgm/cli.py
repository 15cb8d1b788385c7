"""Command-line entry point.

Subcommands: bound, curve, threshold, simulate, xorsat, check.  All rates
are reported in bits per source bit, distortion is normalized Hamming
distortion in [0, 1/2], and clause density is alpha = n/m (checks per
information bit).  Exit status 0 on success, 1 when an oracle check fails,
2 on usage errors.  Output is deterministic: the same invocation always
produces the same bytes.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .bounds import (DegreeParams, EXACT_XORSAT_THRESHOLDS,
                     compound_rate_upper_bound, rate_upper_bound,
                     xorsat_threshold)
from .experiments import (CsvTable, ExperimentConfig, load_config,
                          run_bound_sweep, run_distortion_experiment,
                          run_oracle_checks, run_xorsat_experiment)

_UNITS = ("Units: rates in bits per source bit; distortion is normalized "
          "Hamming distortion; clause density alpha = n/m (checks per "
          "information bit).")


def _int_flag(text: str) -> int:
    # Rejects decimal degrees like "4.0" instead of truncating them.
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")


def _parse_grid(text: str) -> tuple[float, ...]:
    """Grid syntax: 'min:max:count' (inclusive) or a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(
                f"range must be min:max:count, got {text!r}")
        lo, hi = float(parts[0]), float(parts[1])
        count = int(parts[2])
        if count < 1 or hi < lo:
            raise argparse.ArgumentTypeError(f"bad range {text!r}")
        if count == 1:
            return (lo,)
        step = (hi - lo) / (count - 1)
        return tuple(lo + i * step for i in range(count))
    return tuple(float(tok) for tok in text.split(","))


def _parse_degrees(text: str) -> tuple[int, ...]:
    """Degree list syntax: '3,4,6' or an inclusive integer range '3:10'."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 2:
            raise argparse.ArgumentTypeError(
                f"degree range must be lo:hi, got {text!r}")
        lo, hi = _int_flag(parts[0]), _int_flag(parts[1])
        if hi < lo:
            raise argparse.ArgumentTypeError(f"bad degree range {text!r}")
        return tuple(range(lo, hi + 1))
    return tuple(_int_flag(tok) for tok in text.split(","))


def _emit(table: CsvTable, fmt: str, out: str | None) -> None:
    if fmt == "csv":
        payload = table.text()
    else:
        payload = json.dumps(
            {"comment": table.comment, "columns": list(table.columns),
             "rows": [list(r) for r in table.rows]}) + "\n"
    sys.stdout.write(payload)
    if out:
        with open(out, "w") as fh:
            fh.write(payload)


class SystemExit2(Exception):
    """Usage error surfaced with exit status 2."""


def _ldpc_pair(args) -> tuple[int, int] | None:
    if (args.dv is None) != (args.dc is None):
        raise SystemExit2("--dv and --dc must be given together")
    return (args.dv, args.dc) if args.dv is not None else None


def _degree_params(args) -> DegreeParams:
    deg = DegreeParams(args.degree, _ldpc_pair(args))
    if args.rate_h is not None:
        if deg.ldpc is None:
            raise SystemExit2("--rate-h requires --dv/--dc")
        if abs(args.rate_h - deg.rate_h) > 1e-9:
            raise SystemExit2(
                f"--rate-h {args.rate_h} inconsistent with 1 - dv/dc = {deg.rate_h}")
    return deg


def _cmd_bound(args) -> int:
    deg = _degree_params(args)
    if deg.ldpc is None:
        res = rate_upper_bound(args.distortion, deg.c)
    else:
        res = compound_rate_upper_bound(args.distortion, deg)
    record = {
        "distortion": round(args.distortion, 6),
        "degree": deg.c,
        "dv": deg.ldpc[0] if deg.ldpc else None,
        "dc": deg.ldpc[1] if deg.ldpc else None,
        "value": round(res.value, 6),
        "argmax_w": round(res.argmax_w, 6),
        "argmax_u": round(res.argmax_u, 6),
        "shannon": round(res.shannon, 6),
        "gap": round(res.gap, 6),
        "evaluations": res.evaluations,
    }
    if args.distortion == 0.0:
        record["alpha_star"] = round(1.0 / res.value, 5)
    if args.format == "json":
        sys.stdout.write(json.dumps(record) + "\n")
    else:
        table = CsvTable("# bound", tuple(record.keys()),
                         (tuple(record.values()),))
        sys.stdout.write(table.text())
    return 0


def _cmd_threshold(args) -> int:
    rows = []
    for c in args.degrees:
        if c < 2:
            raise SystemExit2(f"degree must be >= 2, got {c}")
        rate0, alpha = xorsat_threshold(c)
        exact = EXACT_XORSAT_THRESHOLDS.get(c)
        rows.append((c, round(alpha, 5), round(rate0, 6),
                     round(exact, 5) if exact is not None else None))
    table = CsvTable("# xorsat satisfiability lower bounds",
                     ("c", "alpha_star", "rate_at_zero", "exact_threshold"),
                     tuple(rows))
    _emit(table, args.format, args.out)
    return 0


def _cmd_curve(args) -> int:
    ldpc = _ldpc_pair(args)
    degrees = tuple(DegreeParams(c, ldpc) for c in args.degrees)
    if args.d_range is not None:
        distortions = args.d_range
    else:
        count = args.points
        if count < 2:
            distortions = (0.11,)
        else:
            step = (0.49 - 0.01) / (count - 1)
            distortions = tuple(0.01 + i * step for i in range(count))
    config = ExperimentConfig(
        kind="bound-sweep", seed=0, distortions=tuple(sorted(distortions)),
        degrees=degrees, profile_distortion=args.profile_distortion,
        profile_points=args.profile_points)
    _emit(run_bound_sweep(config), args.format, args.out)
    return 0


def _cmd_simulate(args) -> int:
    if args.config:
        config = load_config(args.config)
        if args.seed is not None:
            config = dataclasses.replace(config, seed=args.seed)
    else:
        if args.seed is None:
            raise SystemExit2("--seed is required")
        config = ExperimentConfig(
            kind="distortion", seed=args.seed, trials=args.trials,
            n_values=tuple(int(n) for n in args.n),
            rates=tuple(args.rate),
            degrees=(DegreeParams(args.degree, _ldpc_pair(args)),))
    _emit(run_distortion_experiment(config), args.format,
          args.out or config.out_path)
    return 0


def _cmd_xorsat(args) -> int:
    if args.config:
        config = load_config(args.config)
        if args.seed is not None:
            config = dataclasses.replace(config, seed=args.seed)
    else:
        if args.seed is None:
            raise SystemExit2("--seed is required")
        config = ExperimentConfig(
            kind="xorsat", seed=args.seed, trials=args.trials,
            n_values=tuple(int(n) for n in args.n),
            alphas=tuple(args.alpha),
            degrees=(DegreeParams(args.degree),))
    _emit(run_xorsat_experiment(config), args.format,
          args.out or config.out_path)
    return 0


def _cmd_check(args) -> int:
    config = ExperimentConfig(kind="oracle-check", seed=args.seed,
                              trials=args.trials, samples=args.samples)
    checks = run_oracle_checks(config)
    rows = tuple((c.name, c.passed, round(c.statistic, 6),
                  round(c.threshold, 6), c.detail) for c in checks)
    table = CsvTable("# oracle checks",
                     ("check", "passed", "statistic", "threshold", "detail"),
                     rows)
    if args.format == "json":
        payload = [
            {"check": c.name, "passed": c.passed,
             "statistic": round(c.statistic, 6),
             "threshold": round(c.threshold, 6), "detail": c.detail}
            for c in checks]
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(table.text())
    n_pass = sum(c.passed for c in checks)
    sys.stdout.write(f"# {n_pass}/{len(checks)} oracle checks passed\n")
    return 0 if n_pass == len(checks) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ldgm",
        description=("Rate bounds and exact small-instance experiments for "
                     "sparse-generator codes. " + _UNITS))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", description="Rate upper bound at one "
                       "distortion, for the plain or compound ensemble. "
                       + _UNITS)
    p.add_argument("--distortion", type=float, required=True,
                   help="target normalized distortion in [0, 1/2]")
    p.add_argument("--degree", type=_int_flag, required=True,
                   help="generator check degree c (integer >= 2)")
    p.add_argument("--dv", type=_int_flag, help="precode variable degree")
    p.add_argument("--dc", type=_int_flag, help="precode check degree")
    p.add_argument("--rate-h", type=float, dest="rate_h",
                   help="precode design rate; must equal 1 - dv/dc")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("threshold", description="Satisfiability-threshold "
                       "lower bounds alpha*(c) with exact reference values "
                       "where known. " + _UNITS)
    p.add_argument("--degrees", type=_parse_degrees, default=(3, 4, 6),
                   help="comma list '3,4,6' or inclusive range '3:10'")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--out", help="also write the table to this path")
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("curve", description="Bound sweep over a distortion "
                       "grid: figure-source CSV with shannon/ldgm/compound "
                       "rows and optional per-weight profiles. " + _UNITS)
    p.add_argument("--degrees", type=_parse_degrees, default=(3, 4, 6))
    p.add_argument("--points", type=_int_flag, default=25,
                   help="number of distortion grid points on [0.01, 0.49]")
    p.add_argument("--d-range", type=_parse_grid, dest="d_range",
                   help="explicit distortion grid 'min:max:count'")
    p.add_argument("--dv", type=_int_flag, help="precode variable degree")
    p.add_argument("--dc", type=_int_flag, help="precode check degree")
    p.add_argument("--profile-distortion", type=float,
                   help="emit per-weight objective rows at this distortion")
    p.add_argument("--profile-points", type=_int_flag, default=201)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--out", help="also write the CSV to this path")
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("simulate", description="Monte Carlo distortion of "
                       "exact optimal encoding on sampled codes. " + _UNITS)
    p.add_argument("--n", type=_parse_degrees, default=(24,),
                   help="source lengths, comma list")
    p.add_argument("--rate", type=_parse_grid, default=(0.5,),
                   help="code rates m/n, comma list or min:max:count")
    p.add_argument("--degree", type=_int_flag, default=4)
    p.add_argument("--dv", type=_int_flag)
    p.add_argument("--dc", type=_int_flag)
    p.add_argument("--trials", type=_int_flag, default=100)
    p.add_argument("--seed", type=_int_flag, required=False,
                   help="master seed (required unless --config provides one)")
    p.add_argument("--config", help="flat key-value config file")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--out", help="also write the CSV to this path")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("xorsat", description="Empirical solvability of "
                       "random parity systems across clause densities "
                       "alpha = n/m. " + _UNITS)
    p.add_argument("--n", type=_parse_degrees, default=(1000,))
    p.add_argument("--degree", type=_int_flag, default=3)
    p.add_argument("--alpha", type=_parse_grid, default=(0.8, 0.9, 1.0),
                   help="clause densities, 'min:max:count' or comma list")
    p.add_argument("--trials", type=_int_flag, default=100)
    p.add_argument("--seed", type=_int_flag, required=False)
    p.add_argument("--config", help="flat key-value config file")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--out", help="also write the CSV to this path")
    p.set_defaults(func=_cmd_xorsat)

    p = sub.add_parser("check", description="Self-validating oracles: "
                       "induced distribution, first and second moments, "
                       "overlap exponent. Exit 1 on any failure. " + _UNITS)
    p.add_argument("--seed", type=_int_flag, required=True)
    p.add_argument("--trials", type=_int_flag, default=10_000,
                   help="Monte Carlo trials for the moment checks")
    p.add_argument("--samples", type=_int_flag, default=100_000,
                   help="codeword samples for the distribution check")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(func=_cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit2 as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
