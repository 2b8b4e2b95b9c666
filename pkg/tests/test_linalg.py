import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from shiftppt.linalg import (
    ConvergenceError,
    NotHermitianError,
    adjoint,
    hermitian_eigenvalues,
    identity,
    is_psd,
    kron,
    mat_mul,
    matrix_rank,
    outer,
    partial_transpose,
    singular_values,
)
from shiftppt.states import permutation_matrix

from conftest import random_hermitian, random_unitary

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def naive_matmul(a, b):
    n = a.shape[0]
    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                out[i, j] += a[i, k] * b[k, j]
    return out


def naive_partial_transpose(m, dA, dB):
    out = np.zeros_like(m)
    for i in range(dA):
        for j in range(dB):
            for k in range(dA):
                for l in range(dB):
                    out[i * dB + l, k * dB + j] = m[i * dB + j, k * dB + l]
    return out


def test_adjoint_examples():
    np.testing.assert_array_equal(adjoint(identity(3)), identity(3))
    np.testing.assert_array_equal(adjoint([[0, 1j], [0, 0]]), [[0, 0], [-1j, 0]])


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_adjoint_involution_and_product_rule(seed):
    rng = np.random.default_rng(seed)
    a, b = (rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9)) for _ in range(2))
    np.testing.assert_array_equal(adjoint(adjoint(a)), a)
    np.testing.assert_allclose(adjoint(mat_mul(a, b)), mat_mul(adjoint(b), adjoint(a)), atol=1e-12)


def test_adjoint_does_not_mutate():
    a = np.array([[1, 2j], [3, 4]], dtype=complex)
    before = a.copy()
    adjoint(a)[0, 0] = 99
    np.testing.assert_array_equal(a, before)


def test_mat_mul(rng):
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    np.testing.assert_array_equal(mat_mul(a, identity(3)), a)
    np.testing.assert_allclose(mat_mul(a, b), naive_matmul(a, b), atol=1e-14)
    p = permutation_matrix(3, 1)
    np.testing.assert_array_equal(mat_mul(mat_mul(p, p), p), identity(3))
    with pytest.raises(ValueError):
        mat_mul(identity(2), identity(3))


def test_outer(rng):
    e0 = np.array([1, 0, 0])
    expected = np.zeros((3, 3))
    expected[0, 0] = 1
    np.testing.assert_array_equal(outer(e0, e0), expected)
    u = rng.normal(size=4) + 1j * rng.normal(size=4)
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    assert np.trace(outer(u, u)).real == pytest.approx(np.linalg.norm(u) ** 2, rel=1e-14)
    assert matrix_rank(outer(u, v)) == 1
    assert outer(u, v)[1, 2] == pytest.approx(u[1] * np.conj(v[2]))
    with pytest.raises(ValueError):
        outer(u, u[:3])


def test_kron(rng):
    np.testing.assert_array_equal(kron(identity(2), identity(2)), identity(4))
    a, b, c, d = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4))
    np.testing.assert_allclose(kron(a, b) @ kron(c, d), kron(naive_matmul(a, c), naive_matmul(b, d)), atol=1e-13)
    k = kron(a, b)
    for i in range(2):
        for j in range(2):
            for p in range(2):
                for q in range(2):
                    assert k[i * 2 + p, j * 2 + q] == pytest.approx(a[i, j] * b[p, q], rel=1e-15)


def test_kron_shift_reproduces_support():
    x = np.zeros(9, dtype=complex)
    x[[0, 4, 8]] = [1, 2, 3]
    y = kron(identity(3), permutation_matrix(3, 1)) @ x
    assert set(np.flatnonzero(y)) == {1, 5, 6}
    assert (y[1], y[5], y[6]) == (1, 2, 3)


def test_partial_transpose_product_rule(rng):
    ra, rb = random_hermitian(rng, 3), random_hermitian(rng, 3)
    np.testing.assert_allclose(partial_transpose(kron(ra, rb), 3, 3), kron(ra, rb.T), atol=1e-15)


def test_partial_transpose_matches_index_loop(rng):
    m = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    np.testing.assert_array_equal(partial_transpose(m, 2, 3), naive_partial_transpose(m, 2, 3))
    np.testing.assert_array_equal(partial_transpose(m, 3, 2), naive_partial_transpose(m, 3, 2))


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_partial_transpose_properties(seed):
    h = random_hermitian(np.random.default_rng(seed), 9)
    pt = partial_transpose(h, 3, 3)
    assert np.max(np.abs(partial_transpose(pt, 3, 3) - h)) <= 1e-14
    assert abs(np.trace(pt) - np.trace(h)) <= 1e-13
    assert np.max(np.abs(pt - pt.conj().T)) <= 1e-14


def test_partial_transpose_bad_dims():
    with pytest.raises(ValueError):
        partial_transpose(identity(9), 2, 4)


def test_eigenvalue_examples():
    np.testing.assert_allclose(hermitian_eigenvalues(identity(9)), np.ones(9), atol=1e-15)
    np.testing.assert_allclose(hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0])), [1, 2, 3])
    # characteristic polynomial (2 - x)^2 - |1 + i|^2 = 0
    np.testing.assert_allclose(
        hermitian_eigenvalues([[2, 1 + 1j], [1 - 1j, 2]]), [2 - np.sqrt(2), 2 + np.sqrt(2)], atol=1e-14
    )


def test_eigenvalues_trace_and_frobenius(rng):
    for _ in range(100):
        h = random_hermitian(rng, 9)
        ev = hermitian_eigenvalues(h)
        assert np.all(np.diff(ev) >= 0)
        tr = np.trace(h).real
        fro = np.sum(np.abs(h) ** 2)
        assert abs(ev.sum() - tr) <= 1e-10 * max(1.0, abs(tr))
        assert abs(np.sum(ev**2) - fro) <= 1e-10 * fro


def test_eigenvalues_against_lapack(rng):
    for n in (2, 3, 9, 25):
        h = random_hermitian(rng, n)
        np.testing.assert_allclose(hermitian_eigenvalues(h), np.linalg.eigvalsh(h), atol=1e-11)


def test_spectrum_unitary_invariance(rng):
    for _ in range(10):
        h = random_hermitian(rng, 9)
        u = random_unitary(rng, 9)
        assert np.max(np.abs(u.conj().T @ u - np.eye(9))) < 1e-12
        rot = u.conj().T @ h @ u
        rot = (rot + rot.conj().T) / 2
        np.testing.assert_allclose(hermitian_eigenvalues(rot), hermitian_eigenvalues(h), atol=1e-10)


def test_eigenvalues_degenerate_spectrum(rng):
    u = random_unitary(rng, 9)
    h = u @ np.diag([0, 0, 0, 0, 0, 0, 0.2, 0.3, 0.5]) @ u.conj().T
    h = (h + h.conj().T) / 2
    np.testing.assert_allclose(hermitian_eigenvalues(h), [0] * 6 + [0.2, 0.3, 0.5], atol=1e-12)


def test_eigenvalues_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eigenvalues([[1, 1], [0, 1]])


def test_eigenvalues_nonconvergence(monkeypatch):
    import shiftppt.linalg as la

    monkeypatch.setattr(la, "MAX_SWEEPS", 0)
    with pytest.raises(ConvergenceError):
        la.hermitian_eigenvalues([[1, 0.5], [0.5, 1]])


def test_is_psd_examples():
    assert is_psd(identity(3)) == (True, pytest.approx(1.0))
    ok, lo = is_psd(np.diag([1.0, -1e-3]), 1e-10)
    assert not ok and lo == pytest.approx(-1e-3)


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_is_psd_implies_nonnegative_diagonal(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    m = a @ a.conj().T - rng.uniform(0, 1) * np.eye(5)
    ok, _ = is_psd(m)
    if ok:
        scale = max(1.0, np.trace(m).real)
        assert np.all(np.diag(m).real >= -1e-10 * scale)


def test_singular_values_against_lapack(rng):
    for n in (2, 3, 9):
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        np.testing.assert_allclose(singular_values(m), np.linalg.svd(m, compute_uv=False), atol=1e-12)


def test_singular_values_resolve_tiny_second_value(rng):
    u = random_unitary(rng, 3)
    v = random_unitary(rng, 3)
    m = u @ np.diag([1.0, 1e-12, 0.0]) @ v
    sv = singular_values(m)
    assert sv[1] == pytest.approx(1e-12, rel=1e-3)


def test_matrix_rank():
    assert matrix_rank(identity(3)) == 3
    assert matrix_rank(np.zeros((3, 3))) == 0
    assert matrix_rank(np.diag([1.0, 1e-12, 0.0])) == 1
    assert matrix_rank(np.diag([1.0, 1e-6, 0.0])) == 2
