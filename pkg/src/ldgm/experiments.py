"""Reproducible Monte Carlo campaigns tying the bounds to sampled codes.

Every run is driven by an :class:`ExperimentConfig` with a mandatory master
seed.  Per-trial generators are derived from (master seed, point index,
trial index) through ``numpy.random.SeedSequence``, so results are
bit-exact regardless of execution order.  Expectations are over both the
source and the code: each trial draws a fresh generator (and precode) and a
fresh source word.  Budget violations are rejected at config validation,
before any sampling.
"""

from __future__ import annotations

import hashlib
import math
import time
from dataclasses import dataclass, field, fields

import numpy as np

from .bounds import (DegreeParams, binary_entropy, compound_rate_objective,
                     compound_rate_upper_bound, ldgm_rate_objective,
                     overlap_exponent, induced_weight, rate_upper_bound)
from .codes import (ML_SEARCH_MAX_BITS, OracleCheck, BudgetError,
                    conditional_overlap_prob_exact, count_D_optimal,
                    first_moment_exact, induced_distribution_check,
                    ml_encode, ml_encode_compound, sample_ldgm, sample_ldpc,
                    second_moment_decomposition_check, xorsat_solvable)

EXPERIMENT_KINDS = ("distortion", "xorsat", "bound-sweep", "oracle-check")


@dataclass(frozen=True)
class ExperimentConfig:
    """Description of one campaign; see EXPERIMENT_KINDS for the variants.

    Grid fields are used by the kinds that need them: ``rates`` by
    distortion runs (information bits m = round(rate * n)), ``alphas`` by
    xorsat runs (clause density alpha = n/m, so m = round(n / alpha)),
    ``distortions`` by bound sweeps.  ``seed`` is mandatory; there is no
    wall-clock default anywhere.
    """

    kind: str
    seed: int
    trials: int = 1
    n_values: tuple[int, ...] = ()
    degrees: tuple[DegreeParams, ...] = ()
    rates: tuple[float, ...] = ()
    alphas: tuple[float, ...] = ()
    distortions: tuple[float, ...] = ()
    profile_distortion: float | None = None
    profile_points: int = 201
    samples: int = 100_000
    out_path: str | None = None

    def __post_init__(self):
        if self.kind not in EXPERIMENT_KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if not isinstance(self.seed, int):
            raise ValueError("seed must be an integer (no wall-clock default)")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        for name in ("n_values", "rates", "alphas", "distortions"):
            grid = getattr(self, name)
            if list(grid) != sorted(grid):
                raise ValueError(f"{name} must be sorted ascending: {grid}")
        if self.kind == "distortion":
            if not (self.n_values and self.rates and self.degrees):
                raise ValueError("distortion runs need n_values, rates, degrees")
            for n in self.n_values:
                for r in self.rates:
                    if not 0.0 < r <= 1.0:
                        raise ValueError(f"rate outside (0, 1]: {r}")
                    m = round(r * n)
                    if m < 1:
                        raise ValueError(f"rate {r} gives no information bits at n={n}")
                    if m > ML_SEARCH_MAX_BITS:
                        raise BudgetError(
                            f"m = {m} at (n={n}, rate={r}) exceeds the exhaustive "
                            f"budget of {ML_SEARCH_MAX_BITS} bits")
        elif self.kind == "xorsat":
            if not (self.n_values and self.alphas and self.degrees):
                raise ValueError("xorsat runs need n_values, alphas, degrees")
            if any(a <= 0 for a in self.alphas):
                raise ValueError(f"clause densities must be positive: {self.alphas}")
        elif self.kind == "bound-sweep":
            if not (self.distortions and self.degrees):
                raise ValueError("bound sweeps need distortions and degrees")
            if any(not 0.0 <= d <= 0.5 for d in self.distortions):
                raise ValueError(f"distortions outside [0, 1/2]: {self.distortions}")

    def config_hash(self) -> str:
        parts = []
        for f in fields(self):
            if f.name == "out_path":
                continue
            parts.append(f"{f.name}={getattr(self, f.name)!r}")
        digest = hashlib.sha256(";".join(parts).encode()).hexdigest()
        return digest[:12]


@dataclass(frozen=True)
class TrialRecord:
    """One Monte Carlo trial: where it came from and what it measured."""

    config_hash: str
    point: tuple
    point_index: int
    trial_index: int
    seed: int
    values: tuple
    wall_time: float


@dataclass(frozen=True)
class CsvTable:
    """Deterministic CSV payload: metadata comment, header, rows."""

    comment: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    records: tuple[TrialRecord, ...] = ()

    def text(self) -> str:
        lines = [self.comment, ",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(_format_cell(v) for v in row))
        return "\n".join(lines) + "\n"

    def write(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.text())


def _format_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def derive_seed(master: int, point_index: int, trial_index: int,
                stream: int = 0) -> int:
    """Order-independent per-trial seed from (master, point, trial, stream)."""
    ss = np.random.SeedSequence((master, point_index, trial_index, stream))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def derive_rng(master: int, point_index: int, trial_index: int,
               stream: int = 0) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence((master, point_index, trial_index, stream)))


def _stderr(values: np.ndarray) -> float:
    if len(values) < 2:
        return 0.0
    return float(values.std(ddof=1) / math.sqrt(len(values)))


def run_distortion_experiment(config: ExperimentConfig) -> CsvTable:
    """Exact optimal-encoding distortion per trial, plus per-point summaries.

    Each trial draws a fresh generator (stream 0), source (stream 1), and,
    for compound degrees, precode (stream 2) so plain and compound runs with
    the same seed see identical generators and sources.
    """
    if config.kind != "distortion":
        raise ValueError(f"expected a distortion config, got {config.kind!r}")
    chash = config.config_hash()
    columns = ("n", "m", "c", "dv", "dc", "rate", "trial", "distortion",
               "mean", "stderr")
    rows, records = [], []
    points = [(n, r, deg) for n in config.n_values for r in config.rates
              for deg in config.degrees]
    for p_idx, (n, rate, deg) in enumerate(points):
        m = round(rate * n)
        trial_vals = []
        trial_recs = []
        for t_idx in range(config.trials):
            t0 = time.perf_counter()
            g_seed = derive_seed(config.seed, p_idx, t_idx, stream=0)
            y_seed = derive_seed(config.seed, p_idx, t_idx, stream=1)
            g = sample_ldgm(m, n, deg.c, g_seed)
            y = np.random.default_rng(y_seed).integers(0, 2, size=n,
                                                       dtype=np.uint8)
            if deg.ldpc is None:
                enc = ml_encode(g, y)
            else:
                h_seed = derive_seed(config.seed, p_idx, t_idx, stream=2)
                h = sample_ldpc(m, deg.ldpc[0], deg.ldpc[1], h_seed)
                enc = ml_encode_compound(g, h, y)
            d = enc.normalized_distortion
            trial_vals.append(d)
            trial_recs.append(TrialRecord(
                config_hash=chash, point=(n, rate, deg.c, deg.ldpc),
                point_index=p_idx, trial_index=t_idx, seed=g_seed,
                values=(d,), wall_time=time.perf_counter() - t0))
        vals = np.array(trial_vals)
        mean, se = float(vals.mean()), _stderr(vals)
        dv, dc = deg.ldpc if deg.ldpc is not None else (None, None)
        for t_idx, d in enumerate(trial_vals):
            rows.append((n, m, deg.c, dv, dc, rate, t_idx, d, mean, se))
        records.extend(trial_recs)
    comment = f"# config-hash={chash} seed={config.seed}"
    return CsvTable(comment, columns, tuple(rows), tuple(records))


def run_xorsat_experiment(config: ExperimentConfig) -> CsvTable:
    """Empirical solvability of z'G = y' across a clause-density grid.

    Clause density is alpha = n/m (checks per information bit), so each
    grid point uses m = round(n / alpha) information bits.
    """
    if config.kind != "xorsat":
        raise ValueError(f"expected a xorsat config, got {config.kind!r}")
    chash = config.config_hash()
    columns = ("n", "c", "alpha", "trials", "sat_fraction", "stderr")
    rows, records = [], []
    points = [(n, deg.c, a) for n in config.n_values for deg in config.degrees
              for a in config.alphas]
    for p_idx, (n, c, alpha) in enumerate(points):
        m = max(1, round(n / alpha))
        hits = 0
        for t_idx in range(config.trials):
            t0 = time.perf_counter()
            g = sample_ldgm(m, n, c, derive_seed(config.seed, p_idx, t_idx, 0))
            y = np.random.default_rng(
                derive_seed(config.seed, p_idx, t_idx, 1)).integers(
                    0, 2, size=n, dtype=np.uint8)
            ok = xorsat_solvable(g, y)
            hits += int(ok)
            records.append(TrialRecord(
                config_hash=chash, point=(n, c, alpha), point_index=p_idx,
                trial_index=t_idx, seed=derive_seed(config.seed, p_idx, t_idx, 0),
                values=(int(ok),), wall_time=time.perf_counter() - t0))
        frac = hits / config.trials
        se = math.sqrt(frac * (1.0 - frac) / config.trials)
        rows.append((n, c, alpha, config.trials, frac, se))
    comment = f"# config-hash={chash} seed={config.seed}"
    return CsvTable(comment, columns, tuple(rows), tuple(records))


def run_bound_sweep(config: ExperimentConfig) -> CsvTable:
    """Shannon, plain, and compound bounds over a distortion grid.

    Emits one ``shannon`` row per distortion, one ``ldgm``/``compound``
    bound row per (distortion, degrees), and, when ``profile_distortion``
    is set, per-weight ``*-profile`` rows (the objective traced over w)
    that serve as figure source data.  Optimizer failures are recorded in
    the row's variant field rather than aborting the sweep.
    """
    if config.kind != "bound-sweep":
        raise ValueError(f"expected a bound-sweep config, got {config.kind!r}")
    columns = ("variant", "c", "dv", "dc", "D", "R", "argmax_w", "w")
    rows = []
    for d in config.distortions:
        rows.append(("shannon", None, None, None, d,
                     1.0 - binary_entropy(d), None, None))
        for deg in config.degrees:
            dv, dc = deg.ldpc if deg.ldpc is not None else (None, None)
            variant = "ldgm" if deg.ldpc is None else "compound"
            try:
                res = (rate_upper_bound(d, deg.c) if deg.ldpc is None
                       else compound_rate_upper_bound(d, deg))
                rows.append((variant, deg.c, dv, dc, d, res.value,
                             res.argmax_w, None))
            except Exception as exc:  # recorded, sweep continues
                rows.append((f"{variant}-failed:{type(exc).__name__}", deg.c,
                             dv, dc, d, None, None, None))
    if config.profile_distortion is not None:
        d = config.profile_distortion
        for deg in config.degrees:
            dv, dc = deg.ldpc if deg.ldpc is not None else (None, None)
            hi = 0.5 if deg.c % 2 == 0 else 1.0
            ws = np.linspace(0.0, hi, config.profile_points)
            if deg.ldpc is None:
                for w in ws:
                    rows.append(("ldgm-profile", deg.c, None, None, d,
                                 ldgm_rate_objective(float(w), d, deg.c),
                                 None, float(w)))
            else:
                for w in ws[1:]:
                    rows.append(("compound-profile", deg.c, dv, dc, d,
                                 compound_rate_objective(float(w), d, deg),
                                 None, float(w)))
    comment = f"# config-hash={config.config_hash()} seed={config.seed}"
    return CsvTable(comment, columns, tuple(rows))


def run_oracle_checks(config: ExperimentConfig,
                      tamper_delta: float = 0.0) -> list[OracleCheck]:
    """Run the four self-validating oracles; one pass/fail row each.

    Individual failures are reported in the returned rows; the run never
    aborts early.  ``tamper_delta`` shifts the expected codeword flip
    probability in the distribution check (negative-control hook).
    """
    if config.kind != "oracle-check":
        raise ValueError(f"expected an oracle-check config, got {config.kind!r}")
    checks = []
    checks.append(_induced_distribution_oracle(config, tamper_delta))
    checks.append(_first_moment_oracle(config))
    checks.append(_second_moment_oracle(config))
    checks.append(_overlap_exponent_oracle(config))
    return checks


def _induced_distribution_oracle(config: ExperimentConfig,
                                 tamper_delta: float) -> OracleCheck:
    subs = []
    for i, (c, w) in enumerate([(3, 0.1), (3, 0.3), (4, 0.1), (4, 0.3)]):
        subs.append(induced_distribution_check(
            m=1000, c=c, w=w, samples=config.samples,
            seed=derive_seed(config.seed, 0, i), tamper_delta=tamper_delta))
    worst = max(subs, key=lambda s: s.statistic)
    return OracleCheck(
        name="induced-distribution", passed=all(s.passed for s in subs),
        statistic=worst.statistic, threshold=1.0,
        detail="; ".join(f"{s.name}: {'ok' if s.passed else 'FAIL'}"
                         for s in subs))


def _first_moment_oracle(config: ExperimentConfig) -> OracleCheck:
    # Sandwich identity on a deterministic grid, then Monte Carlo agreement
    # of the exhaustive count with the closed form.
    try:
        for n in (8, 16, 32, 64):
            for m in (max(1, n // 4), n // 2, n):
                for d in (0.05, 0.1, 0.25, 0.4, 0.5):
                    first_moment_exact(m, n, d)
    except ArithmeticError as exc:
        return OracleCheck("first-moment", False, math.inf, 3.0, str(exc))
    m, n, d = 8, 16, 0.25
    exact = first_moment_exact(m, n, d)
    counts = np.empty(config.trials)
    for t in range(config.trials):
        g = sample_ldgm(m, n, 3, derive_seed(config.seed, 1, t, 0))
        y = np.random.default_rng(derive_seed(config.seed, 1, t, 1)).integers(
            0, 2, size=n, dtype=np.uint8)
        counts[t] = count_D_optimal(g, y, d)
    se = _stderr(counts)
    z = abs(float(counts.mean()) - exact) / se if se > 0 else math.inf
    return OracleCheck(
        name="first-moment", passed=bool(z <= 3.0), statistic=float(z),
        threshold=3.0,
        detail=(f"sandwich grid ok; mc mean={counts.mean():.4f} vs "
                f"exact={exact:.4f} ({config.trials} trials, z={z:.2f})"))


def _second_moment_oracle(config: ExperimentConfig) -> OracleCheck:
    rep = second_moment_decomposition_check(
        m=8, n=16, c=3, distortion=0.25, trials=config.trials,
        seed=derive_seed(config.seed, 2, 0))
    if not rep.conclusive:
        return OracleCheck("second-moment", False, math.inf, 3.0,
                           "inconclusive: too few conditioning events")
    z = (abs(rep.direct_mean - rep.decomposed_mean) / rep.combined_stderr
         if rep.combined_stderr > 0 else 0.0)
    passed = rep.agree(3.0) and rep.jensen_ok
    return OracleCheck(
        name="second-moment", passed=bool(passed), statistic=float(z),
        threshold=3.0,
        detail=(f"direct={rep.direct_mean:.2f}+/-{rep.direct_stderr:.2f}, "
                f"decomposed={rep.decomposed_mean:.2f}+/-"
                f"{rep.decomposed_stderr:.2f}, jensen_ok={rep.jensen_ok}"))


def _overlap_exponent_oracle(config: ExperimentConfig) -> OracleCheck:
    # The exact tail exponent must stay below the variational exponent plus
    # a provable 2*log2(n+1)/n slack, and converge within 0.02 bits.
    w, c, d = 0.2, 3, 0.11
    target = overlap_exponent(d, induced_weight(w, c))
    gaps = {}
    ok = True
    for n in (50, 100, 200, 400):
        p = conditional_overlap_prob_exact(n, w, c, d)
        exponent = math.log2(p) / n
        gaps[n] = exponent - target
        if exponent > target + 2.0 * math.log2(n + 1) / n:
            ok = False
    fitted = max(g * n / math.log2(n + 1) for n, g in gaps.items())
    converged = abs(gaps[400]) <= 0.02
    mags = [abs(gaps[n]) for n in (50, 100, 200, 400)]
    monotone = all(a >= b for a, b in zip(mags, mags[1:]))
    passed = ok and converged and monotone
    return OracleCheck(
        name="overlap-exponent", passed=bool(passed),
        statistic=float(abs(gaps[400])), threshold=0.02,
        detail=(f"gaps={{{', '.join(f'{n}: {g:.4f}' for n, g in gaps.items())}}}, "
                f"fitted slack constant C={fitted:.2f} (bound 2.0)"))


def load_config(path) -> ExperimentConfig:
    """Parse the flat key-value config format.

    One ``key = value`` pair per line; ``#`` starts a comment.  Keys mirror
    the ExperimentConfig fields: kind, seed, trials, n (comma list), rates,
    alphas, distortions, degrees (comma list of c values), dv, dc,
    profile_distortion, profile_points, samples, out.
    """
    raw = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"malformed config line: {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            raw[key] = value
    if "kind" not in raw or "seed" not in raw:
        raise ValueError("config must set kind and seed")

    def ints(key):
        return tuple(int(tok) for tok in raw[key].split(",")) if key in raw else ()

    def floats(key):
        return tuple(float(tok) for tok in raw[key].split(",")) if key in raw else ()

    ldpc = None
    if "dv" in raw or "dc" in raw:
        if not ("dv" in raw and "dc" in raw):
            raise ValueError("dv and dc must be given together")
        ldpc = (int(raw["dv"]), int(raw["dc"]))
    degrees = tuple(DegreeParams(c, ldpc) for c in ints("degrees"))
    return ExperimentConfig(
        kind=raw["kind"], seed=int(raw["seed"]),
        trials=int(raw.get("trials", 1)), n_values=ints("n"),
        degrees=degrees, rates=floats("rates"), alphas=floats("alphas"),
        distortions=floats("distortions"),
        profile_distortion=(float(raw["profile_distortion"])
                            if "profile_distortion" in raw else None),
        profile_points=int(raw.get("profile_points", 201)),
        samples=int(raw.get("samples", 100_000)),
        out_path=raw.get("out"))
