"""Exact finite-size machinery for sparse-generator codes over GF(2).

Ensemble sampling, encoding, exhaustive optimal-encoding search, linear
solving, and the small-instance counting oracles used to cross-validate the
asymptotic bounds in :mod:`ldgm.bounds`.

Bit sequences are numpy uint8 arrays of 0/1.  Exhaustive searches pack
codewords into machine words and walk the candidate space in Gray-code
order, so each candidate costs one vectorized XOR.  All samplers are pure
functions of (parameters, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np
from scipy.stats import binom, chi2

from .bounds import binary_entropy, induced_weight

# Exhaustive-search budgets: beyond these the operations refuse outright
# rather than silently approximate.
ML_SEARCH_MAX_BITS = 28
COUNT_MAX_BITS = 24
PAIR_ENUM_MAX_BITS = 12

_CHUNK_BITS = 20


class BudgetError(ValueError):
    """An exhaustive operation was asked to exceed its search budget."""


def distortion_threshold(distortion: float, n: int) -> int:
    """Integer distance threshold floor(D*n), guarded against float dust."""
    if not 0.0 <= distortion <= 1.0:
        raise ValueError(f"distortion outside [0, 1]: {distortion}")
    return int(math.floor(distortion * n + 1e-9))


def _as_bits(y, n: int) -> np.ndarray:
    if isinstance(y, SourceSequence):
        y = y.bits
    bits = np.asarray(y, dtype=np.uint8)
    if bits.shape != (n,):
        raise ValueError(f"expected {n} bits, got shape {bits.shape}")
    if np.any(bits > 1):
        raise ValueError("bits must be 0/1")
    return bits


def _pack_words(bits: np.ndarray) -> np.ndarray:
    """Pack a 0/1 array into little-endian uint64 words (bit i of word i//64)."""
    n = len(bits)
    n_words = max(1, (n + 63) // 64)
    padded = np.zeros(n_words * 64, dtype=np.uint8)
    padded[:n] = bits
    as_bytes = np.packbits(padded, bitorder="little")
    return as_bytes.view(np.uint64)


def _unpack_words(words: np.ndarray, n: int) -> np.ndarray:
    as_bytes = words.view(np.uint8)
    return np.unpackbits(as_bytes, bitorder="little")[:n].astype(np.uint8)


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    """Sparse generator matrix: n checks, each wired to c of the m info bits.

    ``columns`` has shape (n, c): the row indices picked by each check,
    drawn with replacement; repeated indices cancel (XOR) at evaluation.
    Immutable after construction.
    """

    m: int
    n: int
    c: int
    columns: np.ndarray
    seed: int = 0

    def __post_init__(self):
        if self.m < 1 or self.n < 1 or self.c < 1:
            raise ValueError("m, n, c must all be >= 1")
        cols = np.asarray(self.columns, dtype=np.int64)
        if cols.shape != (self.n, self.c):
            raise ValueError(f"columns must have shape ({self.n}, {self.c})")
        if cols.min() < 0 or cols.max() >= self.m:
            raise ValueError("row index out of range")
        cols.flags.writeable = False
        object.__setattr__(self, "columns", cols)

    def __eq__(self, other):
        return (isinstance(other, GeneratorMatrix)
                and (self.m, self.n, self.c, self.seed)
                == (other.m, other.n, other.c, other.seed)
                and np.array_equal(self.columns, other.columns))

    @cached_property
    def _column_masks(self) -> list[int]:
        """Per-check parity mask over info bits (repeats XOR-collapsed)."""
        masks = []
        for col in self.columns:
            msk = 0
            for i in col:
                msk ^= 1 << int(i)
            masks.append(msk)
        return masks

    @cached_property
    def _row_words(self) -> np.ndarray:
        """(m, W) uint64: checks touched by each info bit, XOR-collapsed."""
        n_words = max(1, (self.n + 63) // 64)
        rows = np.zeros((self.m, n_words), dtype=np.uint64)
        for j, msk in enumerate(self._column_masks):
            w, b = divmod(j, 64)
            bit = np.uint64(1 << b)
            while msk:
                i = (msk & -msk).bit_length() - 1
                rows[i, w] ^= bit
                msk &= msk - 1
        return rows


@dataclass(frozen=True, eq=False)
class ParityMatrix:
    """Regular parity-check matrix from the configuration model.

    ``rows`` has shape (k, d_c): the variable indices constrained by each
    check, pre-collapse.  Parallel edges cancel (XOR) at evaluation, so a
    variable listed twice in a row drops out of that check.
    """

    k: int
    m: int
    d_v: int
    d_c: int
    rows: np.ndarray
    seed: int = 0

    def __post_init__(self):
        if self.d_v * self.m != self.d_c * self.k:
            raise ValueError("socket balance d_v*m == d_c*k violated")
        rows = np.asarray(self.rows, dtype=np.int64)
        if rows.shape != (self.k, self.d_c):
            raise ValueError(f"rows must have shape ({self.k}, {self.d_c})")
        if self.k and (rows.min() < 0 or rows.max() >= self.m):
            raise ValueError("variable index out of range")
        rows.flags.writeable = False
        object.__setattr__(self, "rows", rows)

    def __eq__(self, other):
        return (isinstance(other, ParityMatrix)
                and (self.k, self.m, self.d_v, self.d_c, self.seed)
                == (other.k, other.m, other.d_v, other.d_c, other.seed)
                and np.array_equal(self.rows, other.rows))

    @cached_property
    def row_masks(self) -> list[int]:
        """Per-check parity mask over variables (parallel edges collapsed)."""
        masks = []
        for row in self.rows:
            msk = 0
            for i in row:
                msk ^= 1 << int(i)
            masks.append(msk)
        return masks

    def satisfies(self, z) -> bool:
        """True iff every check has even parity on z."""
        bits = _as_bits(z, self.m)
        z_int = _bits_to_int(bits)
        return all((z_int & msk).bit_count() % 2 == 0 for msk in self.row_masks)


@dataclass(frozen=True)
class SourceSequence:
    """A length-n source word plus where it came from."""

    bits: np.ndarray
    origin: str = "user"

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=np.uint8)
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)

    def __len__(self):
        return len(self.bits)


@dataclass(frozen=True)
class EncodingResult:
    """Outcome of an exhaustive optimal-encoding search."""

    z_star: np.ndarray
    codeword: np.ndarray
    distortion_count: int
    normalized_distortion: float
    search_size: int


def _bits_to_int(bits: np.ndarray) -> int:
    out = 0
    for i in np.flatnonzero(bits):
        out |= 1 << int(i)
    return out


def _int_to_bits(x: int, n: int) -> np.ndarray:
    return np.array([(x >> i) & 1 for i in range(n)], dtype=np.uint8)


def sample_ldgm(m: int, n: int, c: int, seed: int) -> GeneratorMatrix:
    """Sample a check-regular generator: each check draws c row indices
    independently and uniformly WITH replacement.  Deterministic in seed."""
    if m < 1 or n < 1 or c < 1:
        raise ValueError("m, n, c must all be >= 1")
    rng = np.random.default_rng(seed)
    columns = rng.integers(0, m, size=(n, c), dtype=np.int64)
    return GeneratorMatrix(m=m, n=n, c=c, columns=columns, seed=seed)


def sample_ldpc(m: int, d_v: int, d_c: int, seed: int) -> ParityMatrix:
    """Sample a (d_v, d_c)-regular parity matrix by socket pairing.

    The d_v*m variable sockets are permuted and dealt d_c at a time to the
    checks; socket s belongs to variable s // d_v.  Requires d_v*m to be
    divisible by d_c.
    """
    if (d_v * m) % d_c != 0:
        raise ValueError(f"d_v*m = {d_v * m} not divisible by d_c = {d_c}")
    k = (d_v * m) // d_c
    rng = np.random.default_rng(seed)
    sockets = rng.permutation(d_v * m)
    rows = (sockets // d_v).reshape(k, d_c).astype(np.int64)
    return ParityMatrix(k=k, m=m, d_v=d_v, d_c=d_c, rows=rows, seed=seed)


def sample_source(n: int, seed: int) -> SourceSequence:
    """Length-n fair-coin source word; deterministic in seed."""
    rng = np.random.default_rng(seed)
    return SourceSequence(rng.integers(0, 2, size=n, dtype=np.uint8), "bernoulli")


def encode_codeword(z, G: GeneratorMatrix) -> np.ndarray:
    """Codeword bit j = XOR of z over column j's index list."""
    bits = _as_bits(z, G.m)
    return np.bitwise_xor.reduce(bits[G.columns], axis=1)


def _gray_flip_positions(idx: np.ndarray) -> np.ndarray:
    # Gray step i flips the position of the lowest set bit of i; float log2
    # is exact on powers of two in this range.
    low = idx & (~idx + np.uint64(1))
    return np.round(np.log2(low.astype(np.float64))).astype(np.int64)


def _gray_distortions(mask_words: np.ndarray, y_words: np.ndarray, nbits: int):
    """Yield (start_index, distortions) over all 2**nbits states in Gray order.

    State at Gray index i is the XOR of mask_words rows for the set bits of
    gray(i) = i ^ (i >> 1), further XORed with y_words; the distortion is
    its population count.
    """
    total = 1 << nbits
    cur = y_words.astype(np.uint64).reshape(1, -1).copy()
    lo = 0
    while lo < total:
        hi = min(total, lo + (1 << _CHUNK_BITS))
        idx = np.arange(max(lo, 1), hi, dtype=np.uint64)
        if idx.size:
            flips = _gray_flip_positions(idx)
            states = np.bitwise_xor.accumulate(mask_words[flips], axis=0)
            states ^= cur
        else:
            states = np.empty((0, mask_words.shape[1]), dtype=np.uint64)
        if lo == 0:
            states = np.concatenate([cur, states], axis=0)
        dists = np.bitwise_count(states).sum(axis=1, dtype=np.int64)
        yield lo, dists
        cur = states[-1:].copy()
        lo = hi


def _lex_keys(z_values: np.ndarray, nbits: int) -> np.ndarray:
    """Map bit-sequence integers to keys whose numeric order is the
    lexicographic order of the bit tuples (z_0, z_1, ...)."""
    keys = np.zeros_like(z_values)
    one = np.uint64(1)
    for b in range(nbits):
        keys = (keys << one) | ((z_values >> np.uint64(b)) & one)
    return keys


def ml_encode(G: GeneratorMatrix, y) -> EncodingResult:
    """Exact best encoding of y over all 2^m information words.

    Ties are broken toward the lexicographically smallest information
    sequence.  Refuses when m exceeds ML_SEARCH_MAX_BITS.
    """
    if G.m > ML_SEARCH_MAX_BITS:
        raise BudgetError(f"exhaustive search over 2^{G.m} words exceeds "
                          f"the 2^{ML_SEARCH_MAX_BITS} budget")
    y_bits = _as_bits(y, G.n)
    y_words = _pack_words(y_bits)
    best_dist, best_key, best_z = G.n + 1, None, 0
    for lo, dists in _gray_distortions(G._row_words, y_words, G.m):
        chunk_min = int(dists.min())
        if chunk_min > best_dist:
            continue
        cand = np.flatnonzero(dists == chunk_min)
        idx = cand.astype(np.uint64) + np.uint64(lo)
        z_vals = idx ^ (idx >> np.uint64(1))
        keys = _lex_keys(z_vals, G.m)
        j = int(np.argmin(keys))
        if chunk_min < best_dist or keys[j] < best_key:
            best_dist = chunk_min
            best_key = keys[j]
            best_z = int(z_vals[j])
    z_bits = _int_to_bits(best_z, G.m)
    return EncodingResult(z_star=z_bits, codeword=encode_codeword(z_bits, G),
                          distortion_count=best_dist,
                          normalized_distortion=best_dist / G.n,
                          search_size=1 << G.m)


def ml_encode_compound(G: GeneratorMatrix, H: ParityMatrix, y) -> EncodingResult:
    """Exact best encoding restricted to the precode's nullspace (Hz = 0).

    The nullspace is enumerated through a GF(2) basis; tie-breaking matches
    ``ml_encode``.  Refuses when the nullspace dimension exceeds
    ML_SEARCH_MAX_BITS.
    """
    if H.m != G.m:
        raise ValueError(f"precode is over {H.m} variables, generator has {G.m}")
    basis = gf2_nullspace(H.row_masks, H.m)
    dim = len(basis)
    if dim > ML_SEARCH_MAX_BITS:
        raise BudgetError(f"nullspace dimension {dim} exceeds the "
                          f"2^{ML_SEARCH_MAX_BITS} budget")
    y_bits = _as_bits(y, G.n)
    y_words = _pack_words(y_bits)
    if dim == 0:
        z_bits = np.zeros(G.m, dtype=np.uint8)
        return EncodingResult(z_star=z_bits, codeword=encode_codeword(z_bits, G),
                              distortion_count=int(y_bits.sum()),
                              normalized_distortion=float(y_bits.sum()) / G.n,
                              search_size=1)
    basis_enc = np.stack([_pack_words(encode_codeword(_int_to_bits(v, G.m), G))
                          for v in basis])
    best_dist, best_key, best_z = G.n + 1, None, 0
    for lo, dists in _gray_distortions(basis_enc, y_words, dim):
        chunk_min = int(dists.min())
        if chunk_min > best_dist:
            continue
        cand = np.flatnonzero(dists == chunk_min)
        idx = cand.astype(np.uint64) + np.uint64(lo)
        coef = idx ^ (idx >> np.uint64(1))
        for g in coef:
            g = int(g)
            z = 0
            for b in range(dim):
                if (g >> b) & 1:
                    z ^= basis[b]
            key = _lex_key_int(z, G.m)
            if chunk_min < best_dist or key < best_key:
                best_dist, best_key, best_z = chunk_min, key, z
    z_bits = _int_to_bits(best_z, G.m)
    return EncodingResult(z_star=z_bits, codeword=encode_codeword(z_bits, G),
                          distortion_count=best_dist,
                          normalized_distortion=best_dist / G.n,
                          search_size=1 << dim)


def _lex_key_int(z: int, nbits: int) -> int:
    key = 0
    for b in range(nbits):
        key = (key << 1) | ((z >> b) & 1)
    return key


def count_D_optimal(G: GeneratorMatrix, y, distortion: float) -> int:
    """Number of information words whose codeword is within floor(D*n) of y."""
    if G.m > COUNT_MAX_BITS:
        raise BudgetError(f"exhaustive count over 2^{G.m} words exceeds "
                          f"the 2^{COUNT_MAX_BITS} budget")
    y_words = _pack_words(_as_bits(y, G.n))
    thr = distortion_threshold(distortion, G.n)
    total = 0
    for _, dists in _gray_distortions(G._row_words, y_words, G.m):
        total += int((dists <= thr).sum())
    return total


# ---------------------------------------------------------------------------
# GF(2) linear algebra
# ---------------------------------------------------------------------------

def _gf2_eliminate(words: np.ndarray, ncols: int,
                   rhs: np.ndarray | None = None) -> int:
    """In-place Gaussian elimination on bit-packed rows; returns the rank.

    Every processed pivot column is cleared in all other rows, so on return
    rows at index >= rank are identically zero.
    """
    nrows = words.shape[0]
    rank = 0
    one = np.uint64(1)
    for col in range(ncols):
        if rank == nrows:
            break
        w, b = divmod(col, 64)
        shift = np.uint64(b)
        nz = np.nonzero((words[rank:, w] >> shift) & one)[0]
        if nz.size == 0:
            continue
        p = rank + int(nz[0])
        if p != rank:
            words[[rank, p]] = words[[p, rank]]
            if rhs is not None:
                rhs[[rank, p]] = rhs[[p, rank]]
        mask = ((words[:, w] >> shift) & one).astype(bool)
        mask[rank] = False
        if mask.any():
            words[mask] ^= words[rank]
            if rhs is not None:
                rhs[mask] ^= rhs[rank]
        rank += 1
    return rank


def _masks_to_words(masks, ncols: int) -> np.ndarray:
    n_words = max(1, (ncols + 63) // 64)
    out = np.zeros((len(masks), n_words), dtype=np.uint64)
    for r, msk in enumerate(masks):
        msk = int(msk)
        while msk:
            i = (msk & -msk).bit_length() - 1
            out[r, i // 64] |= np.uint64(1 << (i % 64))
            msk &= msk - 1
    return out


def gf2_rank(masks, ncols: int) -> int:
    """Rank over GF(2) of rows given as bit-mask integers."""
    words = _masks_to_words(list(masks), ncols)
    return _gf2_eliminate(words, ncols)


def gf2_nullspace(masks, ncols: int) -> list[int]:
    """Basis (bit-mask integers) of the right nullspace of the given rows."""
    pivots: dict[int, int] = {}
    for r in masks:
        r = int(r)
        for col, pr in pivots.items():
            if (r >> col) & 1:
                r ^= pr
        if r == 0:
            continue
        col = (r & -r).bit_length() - 1
        for c2 in list(pivots):
            if (pivots[c2] >> col) & 1:
                pivots[c2] ^= r
        pivots[col] = r
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = 1 << f
        for col, pr in pivots.items():
            if (pr >> f) & 1:
                v |= 1 << col
        basis.append(v)
    return basis


def xorsat_solvable(G: GeneratorMatrix, y) -> bool:
    """True iff z'G = y' has a solution over GF(2) (elimination, no search)."""
    y_bits = _as_bits(y, G.n)
    words = _masks_to_words(G._column_masks, G.m)
    rhs = y_bits.copy()
    rank = _gf2_eliminate(words, G.m, rhs)
    return not rhs[rank:].any()


# ---------------------------------------------------------------------------
# Moment oracles
# ---------------------------------------------------------------------------

def first_moment_exact(m: int, n: int, distortion: float) -> float:
    """Expected number of D-optimal words: 2^(m-n) * sum_{s<=floor(Dn)} C(n,s).

    The source is a fair coin, so each of the 2^m codewords independently
    lands within the radius-floor(Dn) ball with probability |ball|/2^n, and
    linearity of expectation gives the product form.  For thresholds at or
    below n/2 the result is checked against the (n+1)-factor entropy
    sandwich around 2^{n(R - 1 + h(t/n))} before returning.
    """
    t = distortion_threshold(distortion, n)
    ball = sum(math.comb(n, s) for s in range(t + 1))
    if m >= n:
        value = float(ball << (m - n))
    else:
        value = float(Fraction(ball, 1 << (n - m)))
    if t <= n // 2:
        log2_value = math.log2(ball) + (m - n)
        center = n * (m / n - 1.0 + binary_entropy(t / n))
        spread = math.log2(n + 1)
        if not (center - spread - 1e-9 <= log2_value <= center + spread + 1e-9):
            raise ArithmeticError(
                f"first-moment sandwich violated at m={m}, n={n}, t={t}: "
                f"log2(E)={log2_value:.6f} vs {center:.6f} +/- {spread:.6f}")
    return value


def _sample_ball_source(n: int, thr: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform draw from the radius-thr Hamming ball around zero."""
    weights = np.array([math.comb(n, t) for t in range(thr + 1)], dtype=float)
    t = int(rng.choice(thr + 1, p=weights / weights.sum()))
    bits = np.zeros(n, dtype=np.uint8)
    bits[rng.choice(n, size=t, replace=False)] = 1
    return bits


@dataclass(frozen=True)
class SecondMomentReport:
    """Direct vs decomposed estimates of E[N^2], with standard errors."""

    trials: int
    first_moment: float
    direct_mean: float
    direct_stderr: float
    decomposed_mean: float
    decomposed_stderr: float
    conclusive: bool

    @property
    def combined_stderr(self) -> float:
        return math.hypot(self.direct_stderr, self.decomposed_stderr)

    def agree(self, n_sigma: float = 3.0) -> bool:
        gap = abs(self.direct_mean - self.decomposed_mean)
        return gap <= n_sigma * self.combined_stderr + 1e-12

    @property
    def jensen_ok(self) -> bool:
        # E[N^2] >= E[N]^2; allow 3 sigma of estimation noise.
        return (self.direct_mean
                >= self.first_moment ** 2 - 3.0 * self.direct_stderr - 1e-12)


def second_moment_decomposition_check(m: int, n: int, c: int, distortion: float,
                                      trials: int, seed: int) -> SecondMomentReport:
    """Estimate E[N^2] directly and via E[N](1 + E[N-1 | word 0 optimal]).

    The conditional side resamples sources uniformly from the distortion
    ball (word 0 encodes to the zero word, so conditioning on its
    optimality constrains only the source), then counts the other optimal
    words.  Both estimates carry standard errors and should agree within a
    few combined sigmas.
    """
    if m > PAIR_ENUM_MAX_BITS:
        raise BudgetError(f"pair enumeration needs m <= {PAIR_ENUM_MAX_BITS}, got {m}")
    if trials < 2:
        raise ValueError("need at least 2 trials")
    rng = np.random.default_rng(seed)
    thr = distortion_threshold(distortion, n)
    e_n = first_moment_exact(m, n, distortion)

    direct = np.empty(trials)
    for i in range(trials):
        g = sample_ldgm(m, n, c, int(rng.integers(2 ** 63)))
        y = rng.integers(0, 2, size=n, dtype=np.uint8)
        direct[i] = count_D_optimal(g, y, distortion) ** 2

    excess = np.empty(trials)
    for i in range(trials):
        g = sample_ldgm(m, n, c, int(rng.integers(2 ** 63)))
        y = _sample_ball_source(n, thr, rng)
        excess[i] = count_D_optimal(g, y, distortion) - 1

    direct_mean = float(direct.mean())
    direct_se = float(direct.std(ddof=1) / math.sqrt(trials))
    decomposed_mean = e_n * (1.0 + float(excess.mean()))
    decomposed_se = e_n * float(excess.std(ddof=1) / math.sqrt(trials))
    return SecondMomentReport(trials=trials, first_moment=e_n,
                              direct_mean=direct_mean, direct_stderr=direct_se,
                              decomposed_mean=decomposed_mean,
                              decomposed_stderr=decomposed_se,
                              conclusive=True)


def conditional_overlap_prob_exact(n: int, w: float, c: int,
                                   distortion: float) -> float:
    """Exact P[second word also lands in the ball | first word optimal].

    The source's distance to the reference word is T, distributed over
    {0..floor(Dn)} proportionally to C(n, t); given T = t the distance of a
    weight-w alternative is Bin(t, 1-delta) + Bin(n-t, delta) with
    delta = induced_weight(w; c).  Evaluated by exact binomial convolution,
    no sampling.
    """
    if abs(w * n - round(w * n)) > 1e-9:
        raise ValueError(f"w*n must be an integer, got {w * n}")
    thr = distortion_threshold(distortion, n)
    delta = induced_weight(w, c)
    weights = [math.comb(n, t) for t in range(thr + 1)]
    total = sum(weights)
    prob = 0.0
    for t, wt in enumerate(weights):
        pmf_hit = binom.pmf(np.arange(t + 1), t, 1.0 - delta)
        pmf_miss = binom.pmf(np.arange(n - t + 1), n - t, delta)
        conv = np.convolve(pmf_hit, pmf_miss)
        prob += float(Fraction(wt, total)) * float(conv[:thr + 1].sum())
    return prob


# ---------------------------------------------------------------------------
# Distribution oracle for sampled codewords
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OracleCheck:
    """One structured pass/fail row of an oracle run."""

    name: str
    passed: bool
    statistic: float
    threshold: float
    detail: str


def induced_distribution_check(m: int, c: int, w: float, samples: int,
                               seed: int, tamper_delta: float = 0.0,
                               significance: float = 1e-3) -> OracleCheck:
    """Frequency and pairwise-independence test for sampled codeword bits.

    Encodes a fixed weight-w word through freshly drawn checks; each check's
    output bit should be an independent Bernoulli(induced_weight(w; c)).
    ``tamper_delta`` shifts the expected flip probability (negative-control
    hook for tests).  Both chi-square statistics must stay below their
    significance quantiles.
    """
    k = round(w * m)
    z = np.zeros(m, dtype=np.uint8)
    z[:k] = 1
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, m, size=(samples, c))
    bits = np.bitwise_xor.reduce(z[idx], axis=1)
    delta = induced_weight(k / m, c) + tamper_delta

    ones = int(bits.sum())
    expected = samples * delta
    stat_marginal = (ones - expected) ** 2 / (samples * delta * (1.0 - delta))
    thr_marginal = float(chi2.ppf(1.0 - significance, df=1))

    b1 = bits[0::2][: samples // 2]
    b2 = bits[1::2][: samples // 2]
    n_pairs = len(b1)
    counts = np.bincount(2 * b1.astype(int) + b2.astype(int), minlength=4)
    probs = np.array([(1 - delta) ** 2, (1 - delta) * delta,
                      delta * (1 - delta), delta ** 2])
    stat_pairs = float((((counts - n_pairs * probs) ** 2)
                        / (n_pairs * probs)).sum())
    thr_pairs = float(chi2.ppf(1.0 - significance, df=3))

    passed = stat_marginal < thr_marginal and stat_pairs < thr_pairs
    worst = max(stat_marginal / thr_marginal, stat_pairs / thr_pairs)
    return OracleCheck(
        name=f"induced-distribution(c={c},w={w})", passed=bool(passed),
        statistic=float(worst), threshold=1.0,
        detail=(f"marginal chi2={stat_marginal:.3f}/{thr_marginal:.3f}, "
                f"pairwise chi2={stat_pairs:.3f}/{thr_pairs:.3f}, "
                f"samples={samples}"))


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def write_matrix(mat, path) -> None:
    """Plain-text matrix format: header then one index line per check.

    ``LDGM m n c seed`` with n lines of c row indices, or
    ``LDPC k m d_v d_c seed`` with k lines of d_c variable indices.
    """
    if isinstance(mat, GeneratorMatrix):
        lines = [f"LDGM {mat.m} {mat.n} {mat.c} {mat.seed}"]
        lines += [" ".join(str(int(i)) for i in col) for col in mat.columns]
    elif isinstance(mat, ParityMatrix):
        lines = [f"LDPC {mat.k} {mat.m} {mat.d_v} {mat.d_c} {mat.seed}"]
        lines += [" ".join(str(int(i)) for i in row) for row in mat.rows]
    else:
        raise TypeError(f"cannot serialize {type(mat).__name__}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_matrix(path):
    """Inverse of ``write_matrix``; returns the matching matrix type."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    head = lines[0].split()
    body = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    if head[0] == "LDGM":
        m, n, c, seed = (int(tok) for tok in head[1:])
        return GeneratorMatrix(m=m, n=n, c=c, columns=np.array(body), seed=seed)
    if head[0] == "LDPC":
        k, m, d_v, d_c, seed = (int(tok) for tok in head[1:])
        return ParityMatrix(k=k, m=m, d_v=d_v, d_c=d_c, rows=np.array(body),
                            seed=seed)
    raise ValueError(f"unknown matrix header {head[0]!r}")
