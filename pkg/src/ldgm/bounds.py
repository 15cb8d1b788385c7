"""Rate bounds for check-regular sparse-generator ensembles.

Everything in this module is a pure function of its arguments.  The unit
convention is fixed once: all moment-generating / tilt algebra is done in
nats (natural logs), and results are converted to bits exactly once, at the
boundary where exponents are combined with binary entropies.  All rates and
exponents returned by public functions are in bits per source bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

LN2 = math.log(2.0)

#: Exact satisfiability thresholds for random c-XORSAT, kept for display
#: next to the second-moment values alpha*(c).  Never used in computation.
EXACT_XORSAT_THRESHOLDS = {3: 0.91794, 6: 0.99738}

# Optimizer knobs.  The inner maximization runs golden-section search to a
# bracket width of _U_TOL and is cross-checked against a refined grid scan;
# the two must agree to _AGREE_TOL (in bits) or the search is declared
# non-convergent.  The outer maximization scans _W_GRID+1 points and then
# refines the best bracket.
_U_TOL = 1e-10
_AGREE_TOL = 1e-6
_U_GRID = 256
_W_GRID = 2000
_W_TOL = 1e-12


class OptimizationError(RuntimeError):
    """Raised when an inner or outer maximization fails its convergence check."""


@dataclass(frozen=True)
class DegreeParams:
    """Ensemble degrees: generator check degree c, optional precode degrees.

    ``ldpc`` is a ``(d_v, d_c)`` pair for a regular parity precode, or None
    for the plain construction.  ``rate_h`` is the precode design rate
    1 - d_v/d_c (1.0 when there is no precode).
    """

    c: int
    ldpc: tuple[int, int] | None = None

    def __post_init__(self):
        if self.c < 1:
            raise ValueError(f"check degree must be >= 1, got {self.c}")
        if self.ldpc is not None:
            d_v, d_c = self.ldpc
            if not (2 <= d_v < d_c):
                raise ValueError(f"need 2 <= d_v < d_c, got ({d_v}, {d_c})")

    @property
    def rate_h(self) -> float:
        if self.ldpc is None:
            return 1.0
        d_v, d_c = self.ldpc
        return 1.0 - d_v / d_c


@dataclass(frozen=True)
class ExponentParams:
    """Tilt solution for the overlap-deviation exponent at one (delta, D, u).

    ``rho_star`` is the unique positive root of the stationarity quadratic
    coeff_a * x^2 + coeff_b * x + coeff_c, and ``lambda_star`` is the capped
    log-root min(0, log rho_star).  For delta == 0 the convention is
    lambda_star = 0 (rho_star is +inf: the cap is always active).
    """

    distortion: float
    delta: float
    overlap: float
    coeff_a: float
    coeff_b: float
    coeff_c: float
    rho_star: float
    lambda_star: float


@dataclass(frozen=True)
class BoundResult:
    """Outcome of a rate-bound maximization.

    ``value`` is in bits per source bit; ``argmax_w`` is the maximizing
    codeword-weight fraction; ``argmax_u`` the inner overlap maximizer at
    that weight; ``gap`` is value minus the Shannon rate 1 - h(D).
    ``evaluations`` and ``bracket`` record optimizer effort and the refined
    search bracket so regressions in the search strategy stay visible.
    """

    value: float
    argmax_w: float
    argmax_u: float
    shannon: float
    gap: float
    evaluations: int
    bracket: tuple[float, float]


@dataclass(frozen=True)
class CurvePoint:
    """One point of a rate-distortion curve: variant is shannon | ldgm | compound."""

    distortion: float
    rate: float
    degree: int
    variant: str


def binary_entropy(t: float) -> float:
    """Entropy of a Bernoulli(t) bit in bits, with 0 log 0 = 0."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"probability outside [0, 1]: {t}")
    if t == 0.0 or t == 1.0:
        return 0.0
    return -(t * math.log2(t) + (1.0 - t) * math.log2(1.0 - t))


def binary_entropy_inverse(y: float) -> float:
    """Inverse of ``binary_entropy`` on [0, 1/2]."""
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"entropy outside [0, 1]: {y}")
    lo, hi = 0.0, 0.5
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if binary_entropy(mid) < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _entropy_nats(t: float) -> float:
    if t <= 0.0 or t >= 1.0:
        return 0.0
    return -(t * math.log(t) + (1.0 - t) * math.log(1.0 - t))


def _entropy_nats_vec(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -(np.where(t > 0, t * np.log(t), 0.0)
                + np.where(t < 1, (1 - t) * np.log1p(-t), 0.0))
    return out


def induced_weight(w: float, c: int) -> float:
    """Flip probability of a codeword bit given information weight fraction w.

    Equals (1 - (1 - 2w)^c) / 2: the parity of c i.i.d. index draws hitting
    the support of a weight-w word.  Lands in [0, 1/2] for w <= 1/2 and in
    [1/2, 1] for w >= 1/2 with odd c.
    """
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"weight fraction outside [0, 1]: {w}")
    if c < 1:
        raise ValueError(f"check degree must be >= 1, got {c}")
    return 0.5 * (1.0 - (1.0 - 2.0 * w) ** c)


def optimal_tilt(delta: float, distortion: float, overlap: float) -> ExponentParams:
    """Solve the tilted-mean stationarity condition for the overlap exponent.

    Returns the quadratic coefficients, the unique positive root rho*, and
    the capped tilt lambda* = min(0, log rho*).  When lambda* < 0 the tilted
    mean of the mixed Bernoulli sum equals the distortion exactly (see
    ``tilted_mean``).  delta == 0 returns lambda* = 0 by convention.
    """
    if not 0.0 <= delta < 1.0:
        raise ValueError(f"flip probability outside [0, 1): {delta}")
    if not 0.0 < distortion <= 0.5:
        raise ValueError(f"distortion outside (0, 1/2]: {distortion}")
    if not 0.0 <= overlap <= distortion:
        raise ValueError(f"overlap outside [0, D]: {overlap}")
    if delta == 0.0:
        return ExponentParams(distortion, delta, overlap, 0.0, overlap - distortion,
                              0.0, math.inf, 0.0)
    a = delta * (1.0 - delta) * (1.0 - distortion)
    b = (overlap * (1.0 - delta) ** 2 + (1.0 - overlap) * delta ** 2
         - distortion * (delta ** 2 + (1.0 - delta) ** 2))
    cq = -distortion * delta * (1.0 - delta)
    disc = b * b - 4.0 * a * cq
    if disc < 0.0:
        if disc < -1e-12:
            raise OptimizationError(
                f"negative discriminant {disc} at delta={delta}, D={distortion}, u={overlap}")
        disc = 0.0
    sq = math.sqrt(disc)
    # Both forms give the positive root; pick the one avoiding cancellation.
    rho = (-b + sq) / (2.0 * a) if b <= 0.0 else (-2.0 * cq) / (b + sq)
    lam = min(0.0, math.log(rho)) if rho > 0.0 else -math.inf
    return ExponentParams(distortion, delta, overlap, a, b, cq, rho, lam)


def tilted_mean(overlap: float, tilt: float, delta: float) -> float:
    """Mean of the mixed Bernoulli sum under exponential tilt, per bit."""
    r = math.exp(tilt)
    return (overlap * (1.0 - delta) * r / ((1.0 - delta) * r + delta)
            + (1.0 - overlap) * delta * r / ((1.0 - delta) + delta * r))


def tilted_exponent(overlap: float, tilt: float, distortion: float,
                    delta: float) -> float:
    """Chernoff objective for the conditional overlap probability, in nats.

    h(u) - h(D) + u log[(1-d)e^t + d] + (1-u) log[(1-d) + d e^t] - t D, with
    natural logs throughout.  Strictly convex in the tilt and strictly
    concave in the overlap on interior points.
    """
    if tilt > 0.0:
        raise ValueError(f"tilt must be <= 0, got {tilt}")
    r = math.exp(tilt)
    return (_entropy_nats(overlap) - _entropy_nats(distortion)
            + overlap * math.log((1.0 - delta) * r + delta)
            + (1.0 - overlap) * math.log((1.0 - delta) + delta * r)
            - tilt * distortion)


def _tilted_value(overlap: float, distortion: float, delta: float) -> float:
    """Chernoff objective at the optimal tilt, in nats."""
    tp = optimal_tilt(delta, distortion, overlap)
    r = min(1.0, tp.rho_star)
    return (_entropy_nats(overlap) - _entropy_nats(distortion)
            + overlap * math.log((1.0 - delta) * r + delta)
            + (1.0 - overlap) * math.log((1.0 - delta) + delta * r)
            - math.log(r) * distortion)


def _golden_max(f, lo: float, hi: float, tol: float):
    """Golden-section maximization; returns (x, f(x), evaluations)."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    evals = 2
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
        evals += 1
    x = c if fc > fd else d
    fx = max(fc, fd)
    return x, fx, evals


def _overlap_exponent_detail(distortion: float, delta: float):
    """Overlap exponent in bits plus the inner maximizer and evaluation count.

    Maximizes the tilted objective over u in [0, D] by golden-section search
    and cross-checks against a grid scan refined in its best cell; the two
    must agree to _AGREE_TOL bits.
    """
    if not 0.0 <= distortion <= 0.5:
        raise ValueError(f"distortion outside [0, 1/2]: {distortion}")
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"flip probability outside [0, 1]: {delta}")
    if delta == 0.0:
        return 0.0, distortion, 0
    if delta == 1.0:
        # Every bit of the second word disagrees with the reference; the
        # overlap event is unreachable below D = 1/2.
        return (0.0 if distortion >= 0.5 else -math.inf), 0.0, 0
    if distortion == 0.0:
        # Exact-satisfaction specialization: the exponent collapses to the
        # relative entropy of the all-agree event, log2(1 - delta).
        return math.log2(1.0 - delta), 0.0, 0

    f = lambda u: _tilted_value(u, distortion, delta)
    x1, v1, e1 = _golden_max(f, 0.0, distortion, _U_TOL)
    # Independent scan: coarse grid plus golden refinement in the best cell.
    us = np.linspace(0.0, distortion, _U_GRID)
    vals = np.array([f(u) for u in us])
    k = int(np.argmax(vals))
    lo = us[max(0, k - 1)]
    hi = us[min(_U_GRID - 1, k + 1)]
    x2, v2, e2 = _golden_max(f, lo, hi, _U_TOL)
    v2 = max(v2, float(vals[k]))
    if abs(v1 - v2) / LN2 > _AGREE_TOL:
        raise OptimizationError(
            f"inner maximization disagreement {abs(v1 - v2) / LN2:.3g} bits "
            f"at D={distortion}, delta={delta}")
    # Boundary values are cheap insurance against a one-sided bracket.
    v_end = max(f(0.0), f(distortion))
    best = max(v1, v2, v_end)
    x = x1 if v1 >= v2 else x2
    if v_end > max(v1, v2):
        x = 0.0 if f(0.0) >= f(distortion) else distortion
    return float(best) / LN2, float(x), e1 + e2 + _U_GRID + 2


def overlap_exponent(distortion: float, delta: float) -> float:
    """Large-deviation exponent of the conditional overlap probability, in bits.

    Always <= 0.  Evaluates to 0 at delta = 0, to log2(1 - delta) at D = 0,
    and to h(D) - 1 at delta = 1/2.
    """
    value, _, _ = _overlap_exponent_detail(distortion, delta)
    return value


def _overlap_exponent_vec(distortion: float, deltas: np.ndarray,
                          n_u: int = _U_GRID) -> np.ndarray:
    """Vectorized grid version of ``overlap_exponent`` for coarse sweeps (bits)."""
    deltas = np.asarray(deltas, dtype=float)
    out = np.zeros_like(deltas)
    if distortion == 0.0:
        with np.errstate(divide="ignore"):
            out = np.where(deltas < 1.0, np.log2(1.0 - deltas), -np.inf)
        return np.where(deltas == 0.0, 0.0, out)
    interior = (deltas > 0.0) & (deltas < 1.0)
    d = deltas[interior][:, None]
    u = np.linspace(0.0, distortion, n_u)[None, :]
    a = d * (1.0 - d) * (1.0 - distortion)
    b = (u * (1.0 - d) ** 2 + (1.0 - u) * d ** 2
         - distortion * (d ** 2 + (1.0 - d) ** 2))
    cq = -distortion * d * (1.0 - d)
    sq = np.sqrt(np.maximum(b * b - 4.0 * a * cq, 0.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        rho = np.where(b <= 0.0, (-b + sq) / (2.0 * a), (-2.0 * cq) / (b + sq))
    r = np.minimum(1.0, rho)
    g = (_entropy_nats_vec(u) - _entropy_nats(distortion)
         + u * np.log((1.0 - d) * r + d)
         + (1.0 - u) * np.log((1.0 - d) + d * r)
         - np.log(r) * distortion)
    out[interior] = g.max(axis=1) / LN2
    out[deltas == 1.0] = 0.0 if distortion >= 0.5 else -np.inf
    return out


def ldgm_rate_objective(w: float, distortion: float, c: int) -> float:
    """Weight-w term of the plain-ensemble rate bound, in bits.

    (1 - h(D) + overlap_exponent(D, induced_weight(w; c))) / (1 - h(w)).
    At w = 0 this is exactly 1 - h(D).  At w = 1/2 the ratio is 0/0; the
    numerator vanishes at order |w - 1/2|^c against the denominator's
    |w - 1/2|^2, so the limit is 0 for c >= 3 (declared exactly); for c = 2
    the finite limit is computed from one-sided evaluations.
    """
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"weight fraction outside [0, 1]: {w}")
    if w == 0.0:
        return 1.0 - binary_entropy(distortion)
    if w == 0.5:
        if c >= 3:
            return 0.0
        return _half_weight_limit(lambda t: ldgm_rate_objective(t, distortion, c))
    num = 1.0 - binary_entropy(distortion) + overlap_exponent(
        distortion, induced_weight(w, c))
    return num / (1.0 - binary_entropy(w))


def _half_weight_limit(f, eps: float = 1e-4) -> float:
    # Richardson extrapolation of f(1/2 - eps); the ratio behaves like
    # L + const * eps^2 near the removable singularity.
    f1 = f(0.5 - eps)
    f2 = f(0.5 - eps / 2.0)
    return (4.0 * f2 - f1) / 3.0


def ldpc_weight_enumerator(w: float, d_v: int, d_c: int) -> float:
    """Asymptotic growth rate (bits per variable) of regular-code words at weight w.

    A(w) = inf_{x>0} [ (d_v/d_c) log2 q(x) - d_v w log2 x ] - (d_v - 1) h(w)
    with q(x) = ((1+x)^{d_c} + (1-x)^{d_c}) / 2.  The infimum is attained at
    the root of x q'(x)/q(x) = w d_c, found by bracketed root-finding on
    [1e-12, 1e6].  A(0) = 0; A(1) is 0 for even d_c and -inf for odd d_c.
    """
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"weight fraction outside [0, 1]: {w}")
    if not 2 <= d_v < d_c:
        raise ValueError(f"need 2 <= d_v < d_c, got ({d_v}, {d_c})")
    if w == 0.0:
        return 0.0
    if w == 1.0:
        return 0.0 if d_c % 2 == 0 else -math.inf

    def socket_ratio(x):
        # x q'(x)/q(x), evaluated through y = (1-x)/(1+x) in (-1, 1] so that
        # large d_c powers cannot overflow.
        y = (1.0 - x) / (1.0 + x)
        return d_c * (x / (1.0 + x)) * (1.0 - y ** (d_c - 1)) / (1.0 + y ** d_c)

    lo, hi = 1e-12, 1e6
    target = w * d_c
    if socket_ratio(hi) <= target:
        # Only reachable for odd d_c at w > (d_c-1)/d_c: no words there.
        return -math.inf
    try:
        x_star = brentq(lambda x: socket_ratio(x) - target, lo, hi,
                        xtol=1e-15, rtol=8.9e-16, maxiter=200)
    except (ValueError, RuntimeError) as exc:
        raise OptimizationError(
            f"enumerator root-finding failed at w={w}, ({d_v},{d_c})") from exc
    y = (1.0 - x_star) / (1.0 + x_star)
    log2_q = d_c * math.log2(1.0 + x_star) + math.log2((1.0 + y ** d_c) / 2.0)
    return ((d_v / d_c) * log2_q - d_v * w * math.log2(x_star)
            - (d_v - 1) * binary_entropy(w))


def compound_rate_objective(w: float, distortion: float,
                            degrees: DegreeParams) -> float:
    """Weight-w term of the compound-construction rate bound, in bits.

    (1 - h(D) + overlap_exponent(D, induced_weight(w; c))) divided by
    (1 - A(w)/rate_h).  Without a precode, rate_h = 1 and A(w) = h(w) and
    the expression reduces exactly to ``ldgm_rate_objective``.  The pole
    where A(w) = rate_h (w = 1/2 for regular precodes) is handled as in the
    plain objective: limit 0 for c >= 3, one-sided numerics for c = 2.
    """
    if not 0.0 < w < 1.0:
        if w in (0.0, 1.0) and degrees.ldpc is None:
            return ldgm_rate_objective(w, distortion, degrees.c)
        raise ValueError(f"weight fraction outside (0, 1): {w}")
    c = degrees.c
    if degrees.ldpc is None:
        enum = binary_entropy(w)
    else:
        enum = ldpc_weight_enumerator(w, *degrees.ldpc)
    den = 1.0 - enum / degrees.rate_h
    if abs(den) < 1e-13 or w == 0.5:
        if c >= 3:
            return 0.0
        return _half_weight_limit(
            lambda t: compound_rate_objective(t, distortion, degrees))
    num = 1.0 - binary_entropy(distortion) + overlap_exponent(
        distortion, induced_weight(w, c))
    return num / den


def _search_domain(distortion: float, degrees: DegreeParams, compound: bool):
    """Outer grid for the weight search.

    Even-degree objectives are symmetric about 1/2, so only [0, 1/2] is
    scanned (for the compound case this additionally needs an even d_c).
    The compound grid drops w = 0: the zero-weight term is the reference
    word itself and is excluded from the pair count, and the objective's
    one-sided limit there (1 - h(D)) does not bound the construction.
    """
    c = degrees.c
    symmetric = c % 2 == 0 and (degrees.ldpc is None or degrees.ldpc[1] % 2 == 0)
    hi = 0.5 if symmetric else 1.0
    ws = np.linspace(0.0, hi, _W_GRID + 1)
    if compound:
        ws = ws[1:]
        if not symmetric:
            ws = ws[:-1]
    return ws


def _maximize_weight(objective, coarse_values: np.ndarray, ws: np.ndarray):
    """Refine the best coarse bracket with golden-section search."""
    k = int(np.argmax(coarse_values))
    lo = float(ws[max(0, k - 1)])
    hi = float(ws[min(len(ws) - 1, k + 1)])
    x, fx, evals = _golden_max(objective, lo, hi, _W_TOL)
    anchor = objective(float(ws[k]))
    evals += 1
    if anchor > fx:
        x, fx = float(ws[k]), anchor
    return float(x), float(fx), evals, (lo, hi)


def rate_upper_bound(distortion: float, c: int) -> BoundResult:
    """Best rate bound for the plain c-regular ensemble at distortion D.

    Maximizes ``ldgm_rate_objective`` over the weight fraction (restricted
    to [0, 1/2] for even c by symmetry).  The result is always at least the
    Shannon rate 1 - h(D), with equality only in degenerate corners.
    """
    if not 0.0 <= distortion <= 0.5:
        raise ValueError(f"distortion outside [0, 1/2]: {distortion}")
    if c < 2:
        raise ValueError(f"check degree must be >= 2, got {c}")
    shannon = 1.0 - binary_entropy(distortion)
    degrees = DegreeParams(c)
    ws = _search_domain(distortion, degrees, compound=False)
    deltas = induced_weight_vec(ws, c)
    nums = shannon + _overlap_exponent_vec(distortion, deltas)
    dens = 1.0 - _entropy_nats_vec(ws) / LN2
    with np.errstate(divide="ignore", invalid="ignore"):
        coarse = np.where(dens > 1e-13, nums / dens, -np.inf)
    coarse[ws == 0.0] = shannon
    if c == 2:
        half = np.isclose(ws, 0.5)
        if half.any():
            coarse[half] = _half_weight_limit(
                lambda t: ldgm_rate_objective(t, distortion, c))

    objective = lambda w: ldgm_rate_objective(w, distortion, c)
    x, fx, evals, bracket = _maximize_weight(objective, coarse, ws)
    if shannon > fx:
        x, fx, bracket = 0.0, shannon, (0.0, bracket[1])
    _, u_star, _ = _overlap_exponent_detail(distortion, induced_weight(x, c))
    return BoundResult(value=float(fx), argmax_w=float(x),
                       argmax_u=float(u_star), shannon=float(shannon),
                       gap=float(fx - shannon), evaluations=len(ws) + evals,
                       bracket=bracket)


def compound_rate_upper_bound(distortion: float,
                              degrees: DegreeParams) -> BoundResult:
    """Best rate bound for the compound construction at distortion D.

    Same search strategy as ``rate_upper_bound``; with no precode it returns
    the identical plain result.  With a precode whose enumerator is negative
    near zero weight the value can reach the Shannon rate times rate_h, so
    no gap >= 0 invariant applies here.
    """
    if degrees.ldpc is None:
        return rate_upper_bound(distortion, degrees.c)
    if not 0.0 <= distortion <= 0.5:
        raise ValueError(f"distortion outside [0, 1/2]: {distortion}")
    c = degrees.c
    if c < 2:
        raise ValueError(f"check degree must be >= 2, got {c}")
    shannon = 1.0 - binary_entropy(distortion)
    ws = _search_domain(distortion, degrees, compound=True)
    deltas = induced_weight_vec(ws, c)
    nums = shannon + _overlap_exponent_vec(distortion, deltas)
    enums = np.array([ldpc_weight_enumerator(float(w), *degrees.ldpc) for w in ws])
    dens = 1.0 - enums / degrees.rate_h
    with np.errstate(divide="ignore", invalid="ignore"):
        coarse = np.where(np.abs(dens) > 1e-13, nums / dens, -np.inf)
    if c == 2:
        half = np.isclose(ws, 0.5)
        if half.any():
            coarse[half] = _half_weight_limit(
                lambda t: compound_rate_objective(t, distortion, degrees))

    objective = lambda w: compound_rate_objective(w, distortion, degrees)
    x, fx, evals, bracket = _maximize_weight(objective, coarse, ws)
    _, u_star, _ = _overlap_exponent_detail(distortion, induced_weight(x, c))
    return BoundResult(value=float(fx), argmax_w=float(x),
                       argmax_u=float(u_star), shannon=float(shannon),
                       gap=float(fx - shannon), evaluations=len(ws) + evals,
                       bracket=bracket)


def induced_weight_vec(ws: np.ndarray, c: int) -> np.ndarray:
    ws = np.asarray(ws, dtype=float)
    return 0.5 * (1.0 - (1.0 - 2.0 * ws) ** c)


def xorsat_threshold(c: int) -> tuple[float, float]:
    """Zero-distortion rate bound and the implied satisfiability lower bound.

    Returns (rate_at_zero_distortion, alpha_star) where alpha_star is the
    reciprocal: the clause density below which random c-ary parity systems
    are satisfiable with high probability.
    """
    result = rate_upper_bound(0.0, c)
    return result.value, 1.0 / result.value


def distortion_curve(c: int, rate_grid) -> list[CurvePoint]:
    """Invert the plain-ensemble bound to distortion as a function of rate.

    For each target rate this bisects ``rate_upper_bound`` in D (after
    asserting monotonicity on a checkpoint grid) and also emits the Shannon
    point at the same rate.  Rates must lie strictly inside
    (0, rate_at_zero_distortion).
    """
    rates = [float(r) for r in rate_grid]
    if not rates:
        raise ValueError("rate grid is empty")
    top = rate_upper_bound(0.0, c).value
    bad = [r for r in rates if not 0.0 < r < top]
    if bad:
        raise ValueError(f"rates outside invertible range (0, {top:.6f}): {bad}")
    checkpoints = [rate_upper_bound(d, c).value for d in (0.0, 0.15, 0.3, 0.45, 0.5)]
    if any(b > a + 1e-12 for a, b in zip(checkpoints, checkpoints[1:])):
        raise OptimizationError(f"bound not monotone in D for c={c}: {checkpoints}")
    points = []
    for r in rates:
        lo, hi = 0.0, 0.5
        # bound(lo) >= r >= bound(hi) by the range check above
        while hi - lo > 1e-9:
            mid = 0.5 * (lo + hi)
            if rate_upper_bound(mid, c).value > r:
                lo = mid
            else:
                hi = mid
        points.append(CurvePoint(0.5 * (lo + hi), r, c, "ldgm"))
        if r <= 1.0:
            # rates above 1 (possible near zero distortion) have no Shannon point
            points.append(CurvePoint(binary_entropy_inverse(1.0 - r), r, c,
                                     "shannon"))
    return points
