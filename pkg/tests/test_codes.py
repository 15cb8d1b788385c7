"""Tests for the finite-size GF(2) machinery, with brute-force oracles."""

import math

import numpy as np
import pytest
from scipy.stats import binom, chi2, poisson

from ldgm.bounds import binary_entropy, induced_weight, overlap_exponent
from ldgm.codes import (BudgetError, GeneratorMatrix, ParityMatrix,
                        conditional_overlap_prob_exact, count_D_optimal,
                        distortion_threshold, encode_codeword,
                        first_moment_exact, gf2_nullspace, gf2_rank,
                        induced_distribution_check, ml_encode,
                        ml_encode_compound, read_matrix, sample_ldgm,
                        sample_ldpc, sample_source,
                        second_moment_decomposition_check, write_matrix,
                        xorsat_solvable)


def dense_matrix(g: GeneratorMatrix) -> np.ndarray:
    """Independent dense construction of the m x n matrix over GF(2)."""
    mat = np.zeros((g.m, g.n), dtype=np.uint8)
    for j, col in enumerate(g.columns):
        for i in col:
            mat[i, j] ^= 1
    return mat


def brute_force_encode(g: GeneratorMatrix, y: np.ndarray):
    """Oracle: dense enumeration with the same lexicographic tie-break."""
    best = None
    for bits in _all_bit_vectors(g.m):
        cw = (bits @ dense_matrix(g)) % 2
        d = int(np.abs(cw.astype(int) - y.astype(int)).sum())
        key = tuple(bits)
        if best is None or d < best[0] or (d == best[0] and key < best[1]):
            best = (d, key)
    return best


def _all_bit_vectors(m: int):
    for x in range(1 << m):
        yield np.array([(x >> i) & 1 for i in range(m)], dtype=np.uint8)


class TestSampling:
    def test_ldgm_deterministic(self):
        a = sample_ldgm(4, 8, 3, seed=11)
        b = sample_ldgm(4, 8, 3, seed=11)
        c = sample_ldgm(4, 8, 3, seed=12)
        assert a == b
        assert a != c

    def test_socket_count_gives_mean_row_degree(self):
        g = sample_ldgm(50, 200, 4, seed=0)
        degrees = np.bincount(g.columns.ravel(), minlength=g.m)
        assert degrees.sum() == g.n * g.c
        assert degrees.mean() == g.n * g.c / g.m

    def test_row_degrees_near_poisson(self):
        # Chi-square goodness of fit against Poisson(nc/m) at the 1e-3 level.
        g = sample_ldgm(1000, 1000, 4, seed=5)
        degrees = np.bincount(g.columns.ravel(), minlength=g.m)
        lam = g.n * g.c / g.m
        kmax = 12
        observed = np.bincount(np.minimum(degrees, kmax), minlength=kmax + 1)
        expected = poisson.pmf(np.arange(kmax), lam) * g.m
        expected = np.append(expected, g.m - expected.sum())
        stat = float(((observed - expected) ** 2 / expected).sum())
        assert stat < chi2.ppf(1.0 - 1e-3, df=kmax)

    def test_ldpc_shape_and_socket_balance(self):
        h = sample_ldpc(8, 2, 4, seed=3)
        assert h.k == 4
        counts = np.bincount(h.rows.ravel(), minlength=h.m)
        assert (counts == h.d_v).all()

    def test_ldpc_divisibility_rejected(self):
        with pytest.raises(ValueError):
            sample_ldpc(7, 2, 4, seed=0)

    def test_ldpc_rank_never_exceeds_checks(self):
        for seed in range(5):
            h = sample_ldpc(24, 3, 6, seed=seed)
            r = gf2_rank(h.row_masks, h.m)
            assert r <= h.k
            assert len(gf2_nullspace(h.row_masks, h.m)) == h.m - r

    def test_source_deterministic(self):
        s1 = sample_source(32, seed=9)
        s2 = sample_source(32, seed=9)
        assert np.array_equal(s1.bits, s2.bits)
        assert s1.origin == "bernoulli"
        assert len(s1) == 32


class TestEncoding:
    def test_zero_input_gives_zero_codeword(self):
        g = sample_ldgm(6, 12, 3, seed=1)
        assert not encode_codeword(np.zeros(6, dtype=np.uint8), g).any()

    def test_repeated_indices_cancel(self):
        g = GeneratorMatrix(m=2, n=1, c=3, columns=np.array([[0, 0, 1]]))
        assert encode_codeword(np.array([1, 0]), g)[0] == 0
        assert encode_codeword(np.array([1, 1]), g)[0] == 1

    def test_linearity_exhaustive(self):
        g = sample_ldgm(6, 10, 3, seed=2)
        table = [encode_codeword(z, g) for z in _all_bit_vectors(6)]
        for i in range(64):
            for j in range(64):
                assert np.array_equal(table[i ^ j], table[i] ^ table[j])

    def test_matches_dense_matrix(self):
        g = sample_ldgm(8, 20, 4, seed=7)
        dense = dense_matrix(g)
        rng = np.random.default_rng(0)
        for _ in range(20):
            z = rng.integers(0, 2, size=8, dtype=np.uint8)
            assert np.array_equal(encode_codeword(z, g), (z @ dense) % 2)

    def test_induced_distribution_check_passes(self):
        check = induced_distribution_check(m=200, c=3, w=0.2, samples=20000,
                                           seed=4)
        assert check.passed

    def test_induced_distribution_negative_control(self):
        check = induced_distribution_check(m=200, c=3, w=0.2, samples=20000,
                                           seed=4, tamper_delta=0.05)
        assert not check.passed


class TestMlEncode:
    def test_codeword_input_has_zero_distortion(self):
        g = sample_ldgm(8, 16, 3, seed=3)
        rng = np.random.default_rng(1)
        z = rng.integers(0, 2, size=8, dtype=np.uint8)
        res = ml_encode(g, encode_codeword(z, g))
        assert res.distortion_count == 0

    def test_never_worse_than_zero_word(self):
        rng = np.random.default_rng(2)
        for seed in range(10):
            g = sample_ldgm(6, 12, 3, seed=seed)
            y = rng.integers(0, 2, size=12, dtype=np.uint8)
            res = ml_encode(g, y)
            assert res.distortion_count <= int(y.sum())
            assert np.array_equal(res.codeword, encode_codeword(res.z_star, g))
            assert res.search_size == 64

    def test_matches_brute_force_with_tie_break(self):
        rng = np.random.default_rng(3)
        for seed in range(15):
            g = sample_ldgm(6, 9, 2, seed=100 + seed)
            y = rng.integers(0, 2, size=9, dtype=np.uint8)
            res = ml_encode(g, y)
            want_d, want_z = brute_force_encode(g, y)
            assert res.distortion_count == want_d
            assert tuple(res.z_star) == want_z

    def test_budget_refusal(self):
        g = GeneratorMatrix(m=29, n=2, c=1, columns=np.array([[0], [1]]))
        with pytest.raises(BudgetError):
            ml_encode(g, np.zeros(2, dtype=np.uint8))


class TestMlEncodeCompound:
    def test_unconstrained_precode_reduces_to_plain(self):
        g = sample_ldgm(8, 16, 3, seed=5)
        h = ParityMatrix(k=0, m=8, d_v=0, d_c=4,
                         rows=np.zeros((0, 4), dtype=np.int64))
        y = sample_source(16, seed=6)
        plain = ml_encode(g, y)
        comp = ml_encode_compound(g, h, y)
        assert comp.distortion_count == plain.distortion_count
        assert np.array_equal(comp.z_star, plain.z_star)

    def test_feasibility_and_ordering(self):
        rng = np.random.default_rng(4)
        for seed in range(8):
            g = sample_ldgm(12, 24, 4, seed=seed)
            h = sample_ldpc(12, 2, 4, seed=seed + 50)
            y = rng.integers(0, 2, size=24, dtype=np.uint8)
            comp = ml_encode_compound(g, h, y)
            plain = ml_encode(g, y)
            assert h.satisfies(comp.z_star)
            assert comp.distortion_count >= plain.distortion_count

    def test_budget_refusal(self):
        g = GeneratorMatrix(m=30, n=2, c=1, columns=np.array([[0], [1]]))
        h = ParityMatrix(k=0, m=30, d_v=0, d_c=4,
                         rows=np.zeros((0, 4), dtype=np.int64))
        with pytest.raises(BudgetError):
            ml_encode_compound(g, h, np.zeros(2, dtype=np.uint8))


class TestXorsatSolvable:
    def test_codeword_always_solvable(self):
        g = sample_ldgm(10, 20, 3, seed=8)
        z = sample_source(10, seed=9).bits
        assert xorsat_solvable(g, encode_codeword(z, g))

    def test_outside_rowspace_unsolvable(self):
        # Every check reads only bit 0, so the codewords are the two
        # constant words; anything else is infeasible.
        g = GeneratorMatrix(m=4, n=3, c=1, columns=np.array([[0], [0], [0]]))
        assert xorsat_solvable(g, np.array([1, 1, 1], dtype=np.uint8))
        assert not xorsat_solvable(g, np.array([1, 0, 0], dtype=np.uint8))

    def test_agrees_with_exhaustive_count(self):
        rng = np.random.default_rng(5)
        for m in (8, 12, 16):
            for seed in range(6):
                g = sample_ldgm(m, m + 4, 3, seed=seed)
                y = rng.integers(0, 2, size=m + 4, dtype=np.uint8)
                assert xorsat_solvable(g, y) == (count_D_optimal(g, y, 0.0) > 0)


class TestCounting:
    def test_full_ball_counts_everything(self):
        g = sample_ldgm(8, 12, 3, seed=10)
        y = sample_source(12, seed=11)
        assert count_D_optimal(g, y, 1.0) == 256

    def test_monotone_in_distortion(self):
        g = sample_ldgm(8, 16, 3, seed=12)
        y = sample_source(16, seed=13)
        counts = [count_D_optimal(g, y, d) for d in np.linspace(0, 1, 9)]
        assert all(a <= b for a, b in zip(counts, counts[1:]))

    def test_budget_refusal(self):
        g = GeneratorMatrix(m=25, n=2, c=1, columns=np.array([[0], [1]]))
        with pytest.raises(BudgetError):
            count_D_optimal(g, np.zeros(2, dtype=np.uint8), 0.5)

    def test_threshold_float_guard(self):
        assert distortion_threshold(0.3, 10) == 3
        assert distortion_threshold(0.11, 400) == 44
        assert distortion_threshold(0.11, 50) == 5


class TestFirstMoment:
    def test_full_ball(self):
        assert first_moment_exact(6, 6, 1.0) == 64.0

    def test_tiny_case(self):
        assert first_moment_exact(1, 2, 0.0) == 0.5

    def test_sandwich_grid(self):
        for n in (8, 16, 32, 64):
            for m in (1, n // 4, n // 2, n, n + 4):
                for d in (0.0, 0.05, 0.1, 0.25, 0.4, 0.5):
                    first_moment_exact(max(1, m), n, d)  # raises on violation

    def test_monte_carlo_agreement(self):
        m, n, d, trials = 8, 16, 0.25, 2000
        exact = first_moment_exact(m, n, d)
        rng = np.random.default_rng(14)
        counts = np.empty(trials)
        for t in range(trials):
            g = sample_ldgm(m, n, 3, seed=int(rng.integers(2 ** 63)))
            y = rng.integers(0, 2, size=n, dtype=np.uint8)
            counts[t] = count_D_optimal(g, y, d)
        se = counts.std(ddof=1) / math.sqrt(trials)
        assert abs(counts.mean() - exact) <= 3 * se


class TestSecondMoment:
    def test_all_qualify_is_exact(self):
        rep = second_moment_decomposition_check(m=5, n=8, c=3, distortion=1.0,
                                                trials=50, seed=15)
        assert rep.direct_mean == 2.0 ** 10
        assert rep.decomposed_mean == 2.0 ** 10
        assert rep.direct_stderr == 0.0
        assert rep.agree()

    def test_agreement_and_jensen(self):
        rep = second_moment_decomposition_check(m=8, n=16, c=3,
                                                distortion=0.25,
                                                trials=3000, seed=16)
        assert rep.conclusive
        assert rep.agree(3.0)
        assert rep.jensen_ok

    def test_budget_refusal(self):
        with pytest.raises(BudgetError):
            second_moment_decomposition_check(m=13, n=16, c=3,
                                              distortion=0.25, trials=10,
                                              seed=0)


def brute_overlap_probability(n: int, w: float, c: int, d: float) -> float:
    """Oracle: enumerate every source word in the ball and every flip
    pattern of the alternative word."""
    thr = distortion_threshold(d, n)
    delta = induced_weight(w, c)
    patterns = np.arange(1 << n, dtype=np.uint64)
    weights_e = np.bitwise_count(patterns).astype(int)
    p_e = delta ** weights_e * (1.0 - delta) ** (n - weights_e)
    ball = [y for y in range(1 << n) if bin(y).count("1") <= thr]
    total = 0.0
    for y in ball:
        dist = np.bitwise_count(patterns ^ np.uint64(y)).astype(int)
        total += float(p_e[dist <= thr].sum())
    return total / len(ball)


class TestConditionalOverlap:
    def test_half_weight_collapses_to_binomial_tail(self):
        # At w = 1/2 the mixture is independent of the source weight.
        n, d = 24, 0.25
        got = conditional_overlap_prob_exact(n, 0.5, 4, d)
        want = float(binom.cdf(distortion_threshold(d, n), n, 0.5))
        assert got == pytest.approx(want, rel=1e-12)

    def test_matches_brute_force_enumeration(self):
        got = conditional_overlap_prob_exact(10, 0.2, 3, 0.2)
        want = brute_overlap_probability(10, 0.2, 3, 0.2)
        assert got == pytest.approx(want, rel=1e-10)

    def test_exponent_below_variational_bound(self):
        w, c, d = 0.2, 3, 0.11
        target = overlap_exponent(d, induced_weight(w, c))
        for n in (50, 100):
            p = conditional_overlap_prob_exact(n, w, c, d)
            assert math.log2(p) / n <= target + 2 * math.log2(n + 1) / n

    def test_rejects_fractional_weight_count(self):
        with pytest.raises(ValueError):
            conditional_overlap_prob_exact(10, 0.15, 3, 0.2)


class TestSerialization:
    def test_ldgm_round_trip(self, tmp_path):
        g = sample_ldgm(6, 10, 3, seed=17)
        path = tmp_path / "g.txt"
        write_matrix(g, path)
        assert read_matrix(path) == g

    def test_ldpc_round_trip(self, tmp_path):
        h = sample_ldpc(12, 3, 6, seed=18)
        path = tmp_path / "h.txt"
        write_matrix(h, path)
        assert read_matrix(path) == h

    def test_unknown_header(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("WHAT 1 2 3 4\n")
        with pytest.raises(ValueError):
            read_matrix(path)
