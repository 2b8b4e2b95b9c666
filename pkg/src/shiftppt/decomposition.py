"""Explicit separable decomposition of PPT family states.

Mixing the weighted eigenvectors ``sqrt(l_m) X_m`` with a 3x3 unitary whose
entries all have modulus ``1/sqrt(3)`` and suitably chosen phases turns every
resulting pure state into a product vector. Writing each mixed vector as a
3x3 coefficient matrix ``B_l``, product form means ``rank(B_l) == 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import RANK_TOL, matrix_rank, outer
from .ppt import ANALYTIC_TOL, circular_distance, ppt_analytic, wrap_angle
from .states import ShiftStateParams, build_density, shift_vectors

__all__ = [
    "NotPptError",
    "RankOneFailure",
    "PhaseSumError",
    "MixingUnitary",
    "SeparableDecomposition",
    "Separable",
    "EntangledDistillable",
    "solve_mixing_phases",
    "build_unitary",
    "build_coefficient_matrices",
    "rank_one_factor",
    "decompose",
    "verify_decomposition",
    "classify",
]

PHASE_SUM_TOL = 1e-8
TWO_PI_3 = 2 * math.pi / 3
# phi_l - phi'_l = xi' + OFFSETS_P[l],  phi_l - phi''_l = xi'' + OFFSETS_PP[l]
OFFSETS_P = (0.0, TWO_PI_3, -TWO_PI_3)
OFFSETS_PP = (TWO_PI_3, 0.0, -TWO_PI_3)


class NotPptError(ValueError):
    def __init__(self, message: str, min_eigenvalue: float):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class RankOneFailure(RuntimeError):
    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class PhaseSumError(ValueError):
    pass


@dataclass(frozen=True)
class MixingUnitary:
    U: np.ndarray
    xi_p: float
    xi_pp: float
    phis: tuple[float, ...]  # phi_1..3, phi'_1..3, phi''_1..3


@dataclass(frozen=True)
class SeparableDecomposition:
    """``rho = sum_l w_l |a_l b_l><a_l b_l|`` with unit vectors ``a_l``, ``b_l``."""

    weights: tuple[float, ...]
    a: tuple[np.ndarray, ...]
    b: tuple[np.ndarray, ...]
    residual: float = float("nan")
    unitary: MixingUnitary | None = field(default=None, compare=False)

    def product_vectors(self) -> list[np.ndarray]:
        return [math.sqrt(w) * np.kron(a, b) for w, a, b in zip(self.weights, self.a, self.b)]

    def density(self) -> np.ndarray:
        return sum(outer(v, v) for v in self.product_vectors())

    def to_dict(self) -> dict:
        pair = lambda v: [[float(z.real), float(z.imag)] for z in v]  # noqa: E731
        return {
            "weights": [float(w) for w in self.weights],
            "productPairs": [{"a": pair(a), "b": pair(b)} for a, b in zip(self.a, self.b)],
            "residual": float(self.residual),
        }


@dataclass(frozen=True)
class Separable:
    decomposition: SeparableDecomposition


@dataclass(frozen=True)
class EntangledDistillable:
    """Not PPT. Entangled rank-3 states are always distillable."""

    min_eigenvalue: float


def solve_mixing_phases(theta: float, theta_p: float) -> tuple[float, float]:
    """``(xi', xi'')`` that make all three ``B_l`` rank one, wrapped to ``[-pi, pi)``."""
    xi_p = (2 / 3) * theta_p - (2 / 3) * theta
    xi_pp = -(2 / 3) * theta_p - (4 / 3) * theta - TWO_PI_3
    return wrap_angle(xi_p), wrap_angle(xi_pp)


def build_unitary(
    theta: float,
    theta_p: float,
    theta_pp: float,
    xi_p: float,
    xi_pp: float,
    base_phis=(0.0, 0.0, 0.0),
) -> MixingUnitary:
    """Mixing unitary with entries ``e^{i(phi^(r)_l + Theta_r)} / sqrt(3)``.

    ``Theta = (theta, theta', theta'')``. The phase differences between rows
    are fixed by ``xi'`` and ``xi''``; ``base_phis`` sets the first row and
    only multiplies each column by a common phase.

    Raises ``PhaseSumError`` unless ``theta + theta' + theta'' = 0 mod 2 pi``
    within ``1e-8``.
    """
    total = theta + theta_p + theta_pp
    if circular_distance(total, 0.0) > PHASE_SUM_TOL:
        raise PhaseSumError(f"theta + theta' + theta'' = {total!r} is not 0 mod 2pi")
    phi = [float(x) for x in base_phis]
    if len(phi) != 3:
        raise ValueError("base_phis must have 3 entries")
    phi_p = [phi[l] - xi_p - OFFSETS_P[l] for l in range(3)]
    phi_pp = [phi[l] - xi_pp - OFFSETS_PP[l] for l in range(3)]
    rows = []
    for row, shift in ((phi, theta), (phi_p, theta_p), (phi_pp, theta_pp)):
        rows.append([np.exp(1j * (p + shift)) / math.sqrt(3) for p in row])
    phis = tuple(wrap_angle(x) for x in (*phi, *phi_p, *phi_pp))
    return MixingUnitary(np.array(rows, dtype=complex), wrap_angle(xi_p), wrap_angle(xi_pp), phis)


def build_coefficient_matrices(params: ShiftStateParams, mixing) -> list[np.ndarray]:
    """Coefficient matrices of ``psi_l = sum_m U[m, l] sqrt(l_m) X_m``.

    ``mixing`` is a :class:`MixingUnitary` or any 3x3 array.
    """
    U = mixing.U if isinstance(mixing, MixingUnitary) else np.asarray(mixing, dtype=complex)
    s0, s1, s2 = (math.sqrt(x) for x in params.lambdas)
    (a, b, g), (a1, b1, g1), (a2, b2, g2) = params.triples
    out = []
    for l in range(3):
        u, u1, u2 = U[:, l]
        out.append(
            np.array(
                [
                    [s0 * a * u, s1 * a1 * u1, s2 * a2 * u2],
                    [s2 * b2 * u2, s0 * b * u, s1 * b1 * u1],
                    [s1 * g1 * u1, s2 * g2 * u2, s0 * g * u],
                ],
                dtype=complex,
            )
        )
    return out


def _gauge(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # first non-negligible entry of a becomes real positive
    k = int(np.argmax(np.abs(a) > 1e-8 * np.max(np.abs(a))))
    ph = a[k] / abs(a[k])
    a = a * ph.conjugate()
    a[k] = abs(a[k])
    return a, b * ph


def rank_one_factor(B, tol: float = RANK_TOL, check: bool = True) -> tuple[np.ndarray, np.ndarray, float]:
    """Factor ``B = sqrt(weight) * outer(a, b)`` (plain transpose, no conjugate).

    ``a`` and ``b`` are unit vectors, ``weight`` is the squared Frobenius norm
    and the first significant entry of ``a`` is real positive. With
    ``check=False`` the best rank-one fit is returned without the rank guard
    or the residual test.

    Raises ``RankOneFailure`` if ``B`` has numerical rank above one, or if
    the reconstruction misses ``B`` by more than ``tol * ||B||``.
    """
    B = np.asarray(B, dtype=complex)
    if check:
        rank = matrix_rank(B, tol)
        if rank != 1:
            raise RankOneFailure(f"coefficient matrix has rank {rank}", {"rank": rank})
    weight = float(np.sum(np.abs(B) ** 2))
    if weight == 0:
        raise RankOneFailure("coefficient matrix is zero", {"rank": 0})
    col = B[:, int(np.argmax(np.linalg.norm(B, axis=0)))]
    a = col / np.linalg.norm(col)
    b = a.conj() @ B
    b = b / np.linalg.norm(b)
    # one power-iteration step for polish
    a = B @ b.conj()
    a = a / np.linalg.norm(a)
    b = a.conj() @ B
    b = b / np.linalg.norm(b)
    a, b = _gauge(a, b)
    if check:
        resid = float(np.max(np.abs(B - math.sqrt(weight) * np.outer(a, b))))
        if resid > tol * math.sqrt(weight):
            raise RankOneFailure(f"rank-one residual {resid:.3g} too large", {"residual": resid})
    return a, b, weight


def verify_decomposition(rho, dec: SeparableDecomposition) -> float:
    """Max-abs entry of ``rho - sum_l w_l |a_l b_l><a_l b_l|``."""
    rho = np.asarray(rho, dtype=complex)
    return float(np.max(np.abs(rho - dec.density())))


def decompose(
    params: ShiftStateParams,
    tol: float = ANALYTIC_TOL,
    base_phis=(0.0, 0.0, 0.0),
    rank_tol: float = RANK_TOL,
) -> SeparableDecomposition:
    """Separable decomposition of a PPT family state.

    Raises ``NotPptError`` when the closed-form test fails and is not
    marginal. Marginal instances are attempted without the rank guard and
    carry their achieved ``residual``. A strict instance whose coefficient
    matrices are not rank one raises ``RankOneFailure``.
    """
    report = ppt_analytic(params, tol)
    if not report.is_ppt and not report.marginal:
        raise NotPptError("state is not PPT", report.min_eigenvalue)
    strict = report.is_ppt and not report.marginal
    xi_p, xi_pp = solve_mixing_phases(report.theta, report.theta_p)
    mixing = build_unitary(report.theta, report.theta_p, report.theta_pp, xi_p, xi_pp, base_phis)
    weights, avecs, bvecs = [], [], []
    for l, B in enumerate(build_coefficient_matrices(params, mixing)):
        try:
            a, b, w = rank_one_factor(B, rank_tol, check=strict)
        except RankOneFailure as exc:
            exc.diagnostics.update(
                column=l, theta=report.theta, theta_p=report.theta_p, theta_pp=report.theta_pp,
                max_residual=report.max_residual,
            )
            raise
        weights.append(w)
        avecs.append(a)
        bvecs.append(b)
    dec = SeparableDecomposition(tuple(weights), tuple(avecs), tuple(bvecs), unitary=mixing)
    residual = verify_decomposition(build_density(params), dec)
    return SeparableDecomposition(dec.weights, dec.a, dec.b, residual, mixing)


def classify(params: ShiftStateParams, tol: float = ANALYTIC_TOL) -> Separable | EntangledDistillable:
    """Separable (with a certificate) iff PPT; otherwise entangled and distillable."""
    report = ppt_analytic(params, tol)
    if report.is_ppt:
        return Separable(decompose(params, tol))
    return EntangledDistillable(report.min_eigenvalue)


def mixed_vectors(params: ShiftStateParams, U) -> list[np.ndarray]:
    """``sum_m U[m, l] sqrt(l_m) X_m`` for ``l = 0, 1, 2``."""
    U = U.U if isinstance(U, MixingUnitary) else np.asarray(U, dtype=complex)
    xs = [math.sqrt(w) * x for w, x in zip(params.lambdas, shift_vectors(params))]
    return [sum(U[m, l] * xs[m] for m in range(3)) for l in range(3)]
