"""Ky Fan norms/anti-norms, majorization predicates, and pinchings."""

import numpy as np
import pytest

from blockrange import gen, majorize, matcore
from blockrange.majorize import (
    MajorizationFailure,
    antinorm_dominance,
    block_diag_pinch,
    direct_sum,
    ky_fan_antinorm,
    ky_fan_norm,
    lemma1_direct_sum,
    majorization,
    pinch_to_diagonal,
    weak_majorization,
)
from blockrange.matcore import MatrixError, PositivityError


def rand_hermitian(rng, n):
    M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (M + M.conj().T) / 2.0


def rand_psd(rng, n):
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return G.conj().T @ G


class TestKyFanNorm:
    def test_diag_examples(self):
        A = np.diag([3.0, 1.0])
        assert ky_fan_norm(A, 1) == 3.0
        assert ky_fan_norm(A, 2) == 4.0

    def test_identity(self):
        assert ky_fan_norm(np.eye(4), 3) == 3.0

    def test_full_sum_is_trace(self):
        rng = np.random.default_rng(0)
        A = rand_psd(rng, 5)
        assert abs(ky_fan_norm(A, 5) - np.trace(A).real) < 1e-10

    def test_k_out_of_range(self):
        with pytest.raises(MatrixError):
            ky_fan_norm(np.eye(2), 3)
        with pytest.raises(MatrixError):
            ky_fan_norm(np.eye(2), 0)

    def test_rejects_indefinite(self):
        with pytest.raises(PositivityError):
            ky_fan_norm(np.diag([1.0, -1.0]), 1)


class TestKyFanAntinorm:
    def test_diag_examples(self):
        A = np.diag([3.0, 1.0])
        assert ky_fan_antinorm(A, 1) == 1.0
        assert ky_fan_antinorm(A, 2) == 4.0

    def test_trace_norm_equals_trace_antinorm(self):
        rng = np.random.default_rng(1)
        A = rand_psd(rng, 6)
        assert abs(ky_fan_antinorm(A, 6) - ky_fan_norm(A, 6)) < 1e-9

    def test_complementary_partial_sums(self):
        # ||A||_(k) + ||A||_(n-k)! = trace(A) for all k < n.
        rng = np.random.default_rng(2)
        for _ in range(20):
            n = int(rng.integers(2, 9))
            A = rand_psd(rng, n)
            tr = float(np.trace(A).real)
            for k in range(1, n):
                total = ky_fan_norm(A, k) + ky_fan_antinorm(A, n - k)
                assert abs(total - tr) < 1e-9 * max(1.0, tr)


class TestWeakMajorization:
    def test_reflexive(self):
        rng = np.random.default_rng(3)
        A = rand_psd(rng, 4)
        rep = weak_majorization(A, A)
        assert rep.verdict == "holds"
        assert abs(rep.min_slack) < 1e-9

    def test_holds_example(self):
        rep = weak_majorization(np.diag([1.0, 1.0]), np.diag([2.0, 0.0]))
        assert rep.verdict == "holds"

    def test_fails_at_k1(self):
        rep = weak_majorization(np.diag([3.0, 0.0]), np.diag([2.0, 2.0]))
        assert rep.verdict == "fails"
        assert rep.worst_k == 1

    def test_order_mismatch(self):
        with pytest.raises(MatrixError):
            weak_majorization(np.eye(2), np.eye(3))


class TestMajorization:
    def test_holds_example(self):
        rep = majorization(np.diag([1.0, 1.0]), np.diag([2.0, 0.0]))
        assert rep.verdict == "holds"
        assert abs(rep.trace_gap) < 1e-12

    def test_weak_only(self):
        rep = majorization(np.diag([1.0, 1.0]), np.diag([3.0, 0.0]))
        assert rep.verdict == "holds-weakly-only"
        assert abs(rep.trace_gap + 1.0) < 1e-12

    def test_pinched_majorized(self):
        rng = np.random.default_rng(4)
        H = rand_hermitian(rng, 5)
        Q = np.linalg.qr(
            rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        )[0]
        D = pinch_to_diagonal(H, Q)
        assert majorization(D, H).verdict == "holds"

    def test_transitivity_chain(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            C = rand_hermitian(rng, 4)
            Q1 = np.linalg.qr(
                rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            )[0]
            B = pinch_to_diagonal(C, Q1)
            Q2 = np.linalg.qr(
                rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            )[0]
            A = pinch_to_diagonal(B, Q2)
            assert majorization(A, B).verdict == "holds"
            assert majorization(B, C).verdict == "holds"
            assert majorization(A, C).verdict == "holds"


class TestAntinormDominance:
    def test_reflexive(self):
        rng = np.random.default_rng(6)
        A = rand_psd(rng, 4)
        assert antinorm_dominance(A, A).verdict == "holds"

    def test_holds_example(self):
        rep = antinorm_dominance(np.diag([2.0, 2.0]), np.diag([3.0, 1.0]))
        assert rep.verdict == "holds"

    def test_implied_by_majorization(self):
        # 1000 majorizing pairs built by pinching PSD matrices.
        rng = np.random.default_rng(7)
        for _ in range(1000):
            n = int(rng.integers(2, 7))
            B = rand_psd(rng, n)
            Q = np.linalg.qr(
                rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            )[0]
            A = pinch_to_diagonal(B, Q)
            assert majorization(A, B).verdict == "holds"
            assert antinorm_dominance(A, B).verdict == "holds"


class TestPinchToDiagonal:
    def test_standard_basis(self):
        H = np.ones((2, 2), dtype=complex)
        D = pinch_to_diagonal(H, np.eye(2))
        assert np.max(np.abs(D - np.eye(2))) < 1e-14
        assert majorization(D, H).verdict == "holds"

    def test_eigenbasis_is_tight(self):
        rng = np.random.default_rng(8)
        H = rand_hermitian(rng, 4)
        _, V = matcore.hermitian_eig(H)
        D = pinch_to_diagonal(H, V)
        assert np.max(
            np.abs(np.sort(np.diag(D).real) - np.sort(np.linalg.eigvalsh(H)))
        ) < 1e-10

    def test_trace_preserved(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            n = int(rng.integers(1, 9))
            H = rand_hermitian(rng, n)
            Q = np.linalg.qr(
                rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            )[0]
            D = pinch_to_diagonal(H, Q)
            scale = max(1.0, float(np.max(np.abs(H))))
            assert abs(np.trace(D).real - np.trace(H).real) < 1e-12 * scale

    def test_rejects_non_orthonormal(self):
        with pytest.raises(MatrixError):
            pinch_to_diagonal(np.eye(2), np.array([[1.0, 1.0], [0.0, 1.0]]))

    def test_random_bulk(self):
        rng = np.random.default_rng(10)
        for _ in range(200):
            n = int(rng.integers(2, 7))
            H = rand_hermitian(rng, n)
            Q = np.linalg.qr(
                rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            )[0]
            assert majorization(pinch_to_diagonal(H, Q), H).verdict == "holds"


class TestBlockDiagPinch:
    def test_fixed_point(self):
        M = direct_sum(np.eye(2), 2 * np.eye(2))
        assert np.max(np.abs(block_diag_pinch(M) - M)) < 1e-15

    def test_alpha_example_spectra(self):
        # [DERIVED]: the block-diagonal part of the alpha instance has
        # eigenvalues {4, 1/4} twice; the full matrix {4.25, 4.25, 0, 0}.
        b = gen.alpha_example(4.0)
        pinched = block_diag_pinch(b.full)
        w = np.sort(np.linalg.eigvalsh(pinched))
        assert np.max(np.abs(w - [0.25, 0.25, 4.0, 4.0])) < 1e-12
        assert majorization(pinched, b.full).verdict == "holds"

    def test_random_bulk(self):
        rng = np.random.default_rng(11)
        for seed in range(100):
            n = int(rng.integers(1, 6))
            b = gen.random_block_psd(n, seed=seed)
            assert majorization(block_diag_pinch(b.full), b.full).verdict == "holds"


class TestLemma1DirectSum:
    def test_single_pair(self):
        rep = lemma1_direct_sum([(np.diag([1.0, 1.0]), np.diag([2.0, 0.0]))])
        assert rep.verdict == "holds"

    def test_two_pairs_partial_sums(self):
        # [DERIVED]: combined descending sums (2, 4, 5, 6) vs (3, 5, 6, 6).
        pairs = [
            (np.diag([1.0, 1.0]), np.diag([2.0, 0.0])),
            (np.diag([2.0, 2.0]), np.diag([3.0, 1.0])),
        ]
        rep = lemma1_direct_sum(pairs)
        assert rep.verdict == "holds"
        assert np.allclose(rep.left_sums, [2.0, 4.0, 5.0, 6.0])
        assert np.allclose(rep.right_sums, [3.0, 5.0, 6.0, 6.0])

    def test_equal_pairs(self):
        rng = np.random.default_rng(12)
        A = rand_psd(rng, 3)
        rep = lemma1_direct_sum([(A, A)] * 4)
        assert rep.verdict == "holds"
        assert abs(rep.min_slack) < 1e-8

    def test_failing_pair_raises(self):
        pairs = [
            (np.diag([1.0, 1.0]), np.diag([2.0, 0.0])),
            (np.diag([5.0, 0.0]), np.diag([3.0, 2.0])),
        ]
        with pytest.raises(MajorizationFailure) as err:
            lemma1_direct_sum(pairs)
        assert "pair 1" in str(err.value)

    def test_empty_rejected(self):
        with pytest.raises(MatrixError):
            lemma1_direct_sum([])


def test_direct_sum_layout():
    out = direct_sum(np.eye(1), 2 * np.eye(2))
    assert out.shape == (3, 3)
    assert np.max(np.abs(out - np.diag([1.0, 2.0, 2.0]))) < 1e-15
