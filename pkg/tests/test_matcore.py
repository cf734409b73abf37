import numpy as np
import pytest

from entgeo import matcore
from entgeo.matcore import DimSplit

from conftest import random_hermitian


def kron_oracle(a, b):
    """Independent double-sum Kronecker product."""
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=complex)
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = a[i, j] * b[k, l]
    return out


def partial_trace_oracle_b(m, da, db):
    """Explicit index summation sum_k M[(i,k),(j,k)]."""
    out = np.zeros((da, da), dtype=complex)
    for i in range(da):
        for j in range(da):
            for k in range(db):
                out[i, j] += m[i * db + k, j * db + k]
    return out


class TestKron:
    def test_identity(self):
        assert np.array_equal(matcore.kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_basis_projectors(self):
        a = np.diag([1.0, 0.0])
        b = np.diag([0.0, 1.0])
        assert np.array_equal(matcore.kron(a, b), np.diag([0.0, 1.0, 0.0, 0.0]))

    def test_against_double_sum_oracle(self, rng):
        for _ in range(50):
            a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            # vectorized complex multiply may round differently from the
            # scalar loop, so compare at one-ulp scale
            np.testing.assert_allclose(
                matcore.kron(a, b), kron_oracle(a, b), atol=1e-14
            )
            assert np.isclose(
                np.trace(matcore.kron(a, b)), np.trace(a) * np.trace(b)
            )

    def test_associativity(self, rng):
        a, b, c = (rng.standard_normal((2, 2)) for _ in range(3))
        left = matcore.kron(matcore.kron(a, b), c)
        right = matcore.kron(a, matcore.kron(b, c))
        assert matcore.norm(left - right, "frobenius") <= 1e-14


class TestPartialTrace:
    def test_bell_marginal(self):
        s = 1 / np.sqrt(2)
        psi = np.array([s, 0, 0, s])
        rho = np.outer(psi, psi)
        out = matcore.partial_trace(rho, DimSplit(2, 2), over="b")
        np.testing.assert_allclose(out, np.eye(2) / 2, atol=1e-15)

    def test_product_recovery(self, rng):
        r1 = random_hermitian(rng, 2)
        r2 = random_hermitian(rng, 3)
        r2 = r2 / np.trace(r2)  # unit trace so the factor comes back unscaled
        got = matcore.partial_trace(matcore.kron(r1, r2), DimSplit(2, 3), over="b")
        np.testing.assert_allclose(got, r1, atol=1e-12)

    def test_index_summation_oracle(self, rng):
        m = random_hermitian(rng, 4)
        got = matcore.partial_trace(m, DimSplit(2, 2), over="b")
        np.testing.assert_allclose(got, partial_trace_oracle_b(m, 2, 2), atol=1e-14)

    def test_trace_preserved_and_linearity(self, rng):
        split = DimSplit(2, 3)
        m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        n = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        for over in ("a", "b"):
            assert np.isclose(
                np.trace(matcore.partial_trace(m, split, over)), np.trace(m)
            )
            lhs = matcore.partial_trace(2.0 * m + 3.0 * n, split, over)
            rhs = 2.0 * matcore.partial_trace(
                m, split, over
            ) + 3.0 * matcore.partial_trace(n, split, over)
            np.testing.assert_allclose(lhs, rhs, atol=1e-13)

    def test_marginals_of_psd_are_psd(self, rng):
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = g @ g.conj().T
        for over in ("a", "b"):
            red = matcore.partial_trace(rho, DimSplit(2, 2), over)
            assert matcore.is_hermitian(red)
            assert np.linalg.eigvalsh(red).min() >= -1e-10

    def test_shape_error(self):
        with pytest.raises(ValueError, match="incompatible"):
            matcore.partial_trace(np.eye(5), DimSplit(2, 2), over="b")


class TestPartialTranspose:
    def test_product_factorization(self, rng):
        r1 = random_hermitian(rng, 2)
        r2 = random_hermitian(rng, 2)
        got = matcore.partial_transpose(matcore.kron(r1, r2), DimSplit(2, 2), on="b")
        np.testing.assert_array_equal(got, matcore.kron(r1, r2.T))

    def test_involution_exact(self, rng):
        m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        for on in ("a", "b"):
            twice = matcore.partial_transpose(
                matcore.partial_transpose(m, DimSplit(2, 2), on), DimSplit(2, 2), on
            )
            np.testing.assert_array_equal(twice, m)

    def test_bell_min_eigenvalue(self):
        s = 1 / np.sqrt(2)
        rho = np.outer([s, 0, 0, s], [s, 0, 0, s])
        pt = matcore.partial_transpose(rho, DimSplit(2, 2), on="b")
        w, _ = matcore.hermitian_eig(pt)
        assert abs(w[0] + 0.5) < 1e-12

    def test_preserves_trace_and_frobenius(self, rng):
        m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        pt = matcore.partial_transpose(m, DimSplit(2, 3), on="b")
        assert np.trace(pt) == pytest.approx(np.trace(m), abs=0)
        assert matcore.norm(pt, "frobenius") == pytest.approx(
            matcore.norm(m, "frobenius"), abs=0
        )


class TestHermitianEig:
    def test_diagonal(self):
        w, _ = matcore.hermitian_eig(np.diag([3.0, 1.0, 2.0]))
        np.testing.assert_allclose(w, [1.0, 2.0, 3.0])

    def test_bell_rank_one(self):
        s = 1 / np.sqrt(2)
        rho = np.outer([s, 0, 0, s], [s, 0, 0, s])
        w, _ = matcore.hermitian_eig(rho)
        np.testing.assert_allclose(w, [0, 0, 0, 1], atol=1e-14)

    def test_reconstruction_residual(self, rng):
        m = random_hermitian(rng, 8)
        w, v = matcore.hermitian_eig(m)
        rebuilt = (v * w) @ v.conj().T
        scale = max(1.0, matcore.norm(m, "frobenius"))
        assert matcore.norm(rebuilt - m, "frobenius") <= 1e-9 * scale
        assert np.all(np.diff(w) >= 0)
        np.testing.assert_allclose(v.conj().T @ v, np.eye(8), atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError, match="not Hermitian"):
            matcore.hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestNorm:
    def test_diagonal_trace_norm(self):
        assert matcore.norm(np.diag([1.0, -1.0]), "trace") == pytest.approx(2.0)

    def test_zero_matrix(self):
        z = np.zeros((3, 3))
        for kind in ("frobenius", "trace", "max_abs"):
            assert matcore.norm(z, kind) == 0.0

    def test_frobenius_trace_identity(self, rng):
        m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        assert matcore.norm(m, "frobenius") ** 2 == pytest.approx(
            np.trace(m.conj().T @ m).real, abs=1e-12
        )

    def test_norm_zero_iff_zero(self, rng):
        m = 1e-6 * rng.standard_normal((3, 3))
        for kind in ("frobenius", "trace", "max_abs"):
            assert matcore.norm(m, kind) > 1e-12

    def test_trace_norm_non_square_rejected(self):
        with pytest.raises(ValueError, match="square"):
            matcore.norm(np.ones((2, 3)), "trace")

    def test_trace_norm_non_hermitian_branch(self, rng):
        m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        sv = np.linalg.svd(m, compute_uv=False)
        assert matcore.norm(m, "trace") == pytest.approx(sv.sum(), rel=1e-12)


class TestJson:
    def test_round_trip(self, rng):
        m = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
        np.testing.assert_array_equal(
            matcore.matrix_from_json(matcore.matrix_to_json(m)), m
        )

    def test_bad_payload_length(self):
        with pytest.raises(ValueError, match="does not match"):
            matcore.matrix_from_json({"rows": 2, "cols": 2, "re": [1.0], "im": [0.0]})
