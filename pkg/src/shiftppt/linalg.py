"""Dense complex linear algebra on small square matrices.

Matrices are plain ``numpy`` complex arrays. Every function returns a new
array and never mutates its arguments. Eigenvalues and singular values come
from cyclic Jacobi iterations written here, so results do not depend on the
LAPACK build.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "NotHermitianError",
    "ConvergenceError",
    "identity",
    "adjoint",
    "mat_mul",
    "outer",
    "kron",
    "partial_transpose",
    "hermitian_eigenvalues",
    "singular_values",
    "is_psd",
    "matrix_rank",
]

EIG_TOL = 1e-13
PSD_TOL = 1e-10
RANK_TOL = 1e-9
MAX_SWEEPS = 100


class NotHermitianError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


def _square(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def _vector(v) -> np.ndarray:
    a = np.asarray(v, dtype=complex)
    if a.ndim != 1:
        raise ValueError(f"expected a vector, got shape {a.shape}")
    return a


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=complex)


def adjoint(m) -> np.ndarray:
    return _square(m).conj().T.copy()


def mat_mul(a, b) -> np.ndarray:
    a, b = _square(a), _square(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return a @ b


def outer(u, v) -> np.ndarray:
    """Return ``|u><v|``, i.e. ``u[i] * conj(v[j])``."""
    u, v = _vector(u), _vector(v)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.size} vs {v.size}")
    return np.outer(u, v.conj())


def kron(a, b) -> np.ndarray:
    return np.kron(_square(a), _square(b))


def partial_transpose(m, dA: int, dB: int) -> np.ndarray:
    """Transpose the second tensor factor of an operator on C^dA (x) C^dB.

    Composite indices are laid out as ``(a, b) -> a * dB + b``.
    """
    m = _square(m)
    if dA < 1 or dB < 1 or m.shape[0] != dA * dB:
        raise ValueError(f"dimension {m.shape[0]} does not factor as {dA} x {dB}")
    t = m.reshape(dA, dB, dA, dB).transpose(0, 3, 2, 1)
    return t.reshape(dA * dB, dA * dB).copy()


def _rotation(app: float, aqq: float, apq: complex) -> np.ndarray:
    """2x2 unitary ``V`` with ``V^H [[app, apq], [conj(apq), aqq]] V`` diagonal."""
    r = abs(apq)
    phase = apq / r
    theta = (aqq - app) / (2.0 * r)
    if abs(theta) > 1e150:
        t = 0.5 / abs(theta)
    else:
        t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
    if theta < 0:
        t = -t
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    # diag(1, conj(phase)) makes the block real, then a plane rotation
    return np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])


def _offdiag_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def hermitian_eigenvalues(m, tol: float = EIG_TOL) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix in ascending order (cyclic Jacobi).

    Sweeps over all ``(p, q)`` pairs until the off-diagonal Frobenius norm
    drops below ``tol * scale`` with ``scale = max(1, max|m_ij|)``.

    Raises
    ------
    NotHermitianError
        If ``max|m - m^H| > tol * scale``.
    ConvergenceError
        If ``MAX_SWEEPS`` sweeps do not reach the threshold.
    """
    a = _square(m).copy()
    n = a.shape[0]
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(a))) if n else 1.0)
    if np.max(np.abs(a - a.conj().T), initial=0.0) > tol * scale:
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    a = 0.5 * (a + a.conj().T)
    threshold = tol * scale
    # entries this small cannot keep the off-diagonal norm above threshold
    negligible = 1e-3 * threshold / max(n, 1)
    for _ in range(MAX_SWEEPS):
        if _offdiag_norm(a) <= threshold:
            return np.sort(np.diag(a).real)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= negligible:
                    continue
                v = _rotation(a[p, p].real, a[q, q].real, apq)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ v
                a[idx, :] = v.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    if _offdiag_norm(a) <= threshold:
        return np.sort(np.diag(a).real)
    raise ConvergenceError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")


def singular_values(m) -> np.ndarray:
    """Singular values in descending order.

    One-sided Jacobi: columns are rotated pairwise until mutually orthogonal,
    which diagonalizes ``m^H m`` without forming it. Small singular values
    keep absolute accuracy near machine epsilon times the largest one.
    """
    g = _square(m).copy()
    n = g.shape[1]
    eps = np.finfo(float).eps
    # columns below this squared norm are numerically zero
    floor = (1e-30 * float(np.linalg.norm(g))) ** 2
    for _ in range(MAX_SWEEPS):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = float(np.vdot(g[:, p], g[:, p]).real)
                beta = float(np.vdot(g[:, q], g[:, q]).real)
                if alpha <= floor or beta <= floor:
                    continue
                gamma = np.vdot(g[:, p], g[:, q])
                if abs(gamma) <= eps * np.sqrt(alpha * beta):
                    continue
                rotated = True
                idx = [p, q]
                g[:, idx] = g[:, idx] @ _rotation(alpha, beta, gamma)
        if not rotated:
            return np.sort(np.linalg.norm(g, axis=0))[::-1]
    raise ConvergenceError(f"one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps")


def is_psd(m, tol: float = PSD_TOL) -> tuple[bool, float]:
    """Return ``(min_eig >= -tol * max(1, trace), min_eig)``."""
    a = _square(m)
    lo = float(hermitian_eigenvalues(a)[0])
    bound = tol * max(1.0, float(np.trace(a).real))
    return lo >= -bound, lo


def matrix_rank(m, tol: float = RANK_TOL) -> int:
    """Count singular values above ``tol`` times the largest one."""
    sv = singular_values(m)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > tol * sv[0]))
