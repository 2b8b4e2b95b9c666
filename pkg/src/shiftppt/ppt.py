"""PPT tests for the shift family, numeric and closed-form.

The partial transpose of a family state splits into three 3x3 blocks on the
index sets ``{0,5,7}``, ``{1,3,8}`` and ``{2,4,6}``. It is positive exactly
when nine modulus equalities hold and the phases they define agree within
each of the three angle groups.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .linalg import hermitian_eigenvalues, is_psd, partial_transpose, PSD_TOL
from .states import ShiftStateParams, build_density

__all__ = [
    "BLOCK_INDICES",
    "BlockTriple",
    "PptReport",
    "extract_blocks",
    "ppt_numeric",
    "magnitude_invariants",
    "magnitude_spread",
    "phase_candidates",
    "extract_phases",
    "equality_residuals",
    "product_equality_residual",
    "inequality_residuals",
    "ppt_analytic",
    "circular_distance",
    "wrap_angle",
]

ANALYTIC_TOL = 1e-8
BLOCK_INDICES = ((0, 5, 7), (1, 3, 8), (2, 4, 6))
PATTERN_TOL = 1e-12


def wrap_angle(x: float) -> float:
    """Reduce an angle to ``[-pi, pi)``."""
    return float((x + math.pi) % (2 * math.pi) - math.pi)


def circular_distance(x: float, y: float) -> float:
    d = abs(x - y) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


@dataclass(frozen=True)
class BlockTriple:
    A1: np.ndarray
    A2: np.ndarray
    A3: np.ndarray

    def __iter__(self):
        return iter((self.A1, self.A2, self.A3))


def extract_blocks(rho_pt) -> BlockTriple:
    """Split a family partial transpose into its three 3x3 diagonal blocks.

    Raises ``ValueError`` if any entry outside the blocks exceeds ``1e-12``.
    """
    m = np.asarray(rho_pt, dtype=complex)
    if m.shape != (9, 9):
        raise ValueError(f"expected a 9x9 matrix, got {m.shape}")
    mask = np.zeros((9, 9), dtype=bool)
    for idx in BLOCK_INDICES:
        mask[np.ix_(idx, idx)] = True
    stray = np.max(np.abs(m[~mask]))
    if stray > PATTERN_TOL:
        raise ValueError(f"entry of modulus {stray:.3g} outside the three blocks")
    return BlockTriple(*(m[np.ix_(idx, idx)].copy() for idx in BLOCK_INDICES))


def ppt_numeric(rho, dA: int = 3, dB: int = 3, tol: float = PSD_TOL) -> tuple[bool, float]:
    """``(is PPT, smallest eigenvalue of the partial transpose)``."""
    return is_psd(partial_transpose(rho, dA, dB), tol)


def magnitude_invariants(params: ShiftStateParams) -> tuple[float, float, float]:
    """``l0|abc|/sqrt(l1 l2)`` and its two cyclic analogues.

    All three agree on every PPT state.
    """
    l0, l1, l2 = params.lambdas
    p0, p1, p2 = (abs(np.prod(t)) for t in params.triples)
    return (
        float(l0 * p0 / math.sqrt(l1 * l2)),
        float(l1 * p1 / math.sqrt(l0 * l2)),
        float(l2 * p2 / math.sqrt(l0 * l1)),
    )


def magnitude_spread(params: ShiftStateParams) -> float:
    """Relative spread ``(max - min) / max`` of the magnitude invariants."""
    inv = magnitude_invariants(params)
    return (max(inv) - min(inv)) / max(inv)


def _equalities(params: ShiftStateParams):
    """The nine ``(lhs, rhs, angle_group)`` pairs with ``lhs = rhs * e^{i theta}``.

    Angle groups: 0 is theta, 1 is theta', 2 is theta''. Within each group the
    three entries are listed in subscript order 1, 2, 3.
    """
    l0, l1, l2 = params.lambdas
    (a, b, g), (a1, b1, g1), (a2, b2, g2) = params.triples
    s01, s02, s12 = math.sqrt(l0 * l1), math.sqrt(l0 * l2), math.sqrt(l1 * l2)
    return (
        (s12 * a1 * b2, l0 * a * b, 0),
        (s12 * a2 * g1, l0 * a * g, 0),
        (s12 * g2 * b1, l0 * g * b, 0),
        (s02 * a2 * b, l1 * a1 * b1, 1),
        (s02 * a * g2, l1 * a1 * g1, 1),
        (s02 * g * b2, l1 * g1 * b1, 1),
        (s01 * a * b1, l2 * a2 * b2, 2),
        (s01 * a1 * g, l2 * a2 * g2, 2),
        (s01 * g1 * b, l2 * g2 * b2, 2),
    )


def equality_residuals(params: ShiftStateParams) -> tuple[float, ...]:
    """Relative modulus residuals ``| |lhs| - |rhs| | / max(|lhs|, |rhs|)``.

    Ordered theta_1..3, theta'_1..3, theta''_1..3.
    """
    out = []
    for lhs, rhs, _ in _equalities(params):
        x, y = abs(lhs), abs(rhs)
        out.append(abs(x - y) / max(x, y))
    return tuple(out)


def phase_candidates(params: ShiftStateParams) -> tuple[tuple[float, float, float], ...]:
    """The three candidate values of each of theta, theta', theta''."""
    groups: list[list[float]] = [[], [], []]
    for lhs, rhs, k in _equalities(params):
        groups[k].append(float(np.angle(lhs / rhs)))
    return tuple(tuple(g) for g in groups)


def extract_phases(params: ShiftStateParams) -> tuple[float, float, float, tuple[float, float, float]]:
    """``(theta, theta', theta'', spreads)``.

    Each angle is taken from the first equality of its group; the spread is
    the largest circular distance between the group's three candidates.
    """
    cands = phase_candidates(params)
    spreads = tuple(
        max(circular_distance(c[i], c[j]) for i in range(3) for j in range(i + 1, 3)) for c in cands
    )
    return cands[0][0], cands[1][0], cands[2][0], spreads


def product_equality_residual(params: ShiftStateParams) -> float:
    """Relative mismatch among ``a'b''c``, ``ab'c''`` and ``a''bc'``."""
    (a, b, g), (a1, b1, g1), (a2, b2, g2) = params.triples
    p = (a1 * b2 * g, a * b1 * g2, a2 * b * g1)
    scale = max(abs(z) for z in p)
    return float(max(abs(p[i] - p[j]) for i in range(3) for j in range(i + 1, 3)) / scale)


def inequality_residuals(params: ShiftStateParams) -> tuple[float, ...]:
    """Signed ``lhs - rhs`` of the twelve block-positivity inequalities.

    Per block: three 2x2 principal-minor conditions followed by the
    determinant condition, blocks in order A1, A2, A3. All are ``>= 0``
    exactly when the partial transpose is positive semidefinite.
    """
    l0, l1, l2 = params.lambdas
    (a, b, g), (a1, b1, g1), (a2, b2, g2) = params.triples
    A, B, G = abs(a) ** 2, abs(b) ** 2, abs(g) ** 2
    A1, B1, G1 = abs(a1) ** 2, abs(b1) ** 2, abs(g1) ** 2
    A2, B2, G2 = abs(a2) ** 2, abs(b2) ** 2, abs(g2) ** 2
    lll = l0 * l1 * l2
    common = l0**3 * A * B * G + l1**3 * A1 * B1 * G1 + l2**3 * A2 * B2 * G2
    values = (
        l0 * l1 * A * B1 - l2**2 * A2 * B2,
        l0 * l2 * A * G2 - l1**2 * A1 * G1,
        l1 * l2 * B1 * G2 - l0**2 * G * B,
        lll * A * B1 * G2 + 2 * lll * (a1 * a2.conjugate() * b2 * b.conjugate() * g * g1.conjugate()).real - common,
        l1 * l2 * A1 * B2 - l0**2 * A * B,
        l0 * l1 * A1 * G - l2**2 * A2 * G2,
        l0 * l2 * G * B2 - l1**2 * G1 * B1,
        lll * A1 * B2 * G + 2 * lll * (a * a2.conjugate() * b1 * b.conjugate() * g2 * g1.conjugate()).real - common,
        l0 * l2 * A2 * B - l1**2 * A1 * B1,
        l1 * l2 * A2 * G1 - l0**2 * A * G,
        l0 * l1 * B * G1 - l2**2 * B2 * G2,
        lll * A2 * B * G1 + 2 * lll * (a1 * a.conjugate() * b1.conjugate() * b2 * g2.conjugate() * g).real - common,
    )
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class PptReport:
    is_ppt: bool
    min_eigenvalue: float
    magnitude_invariants: tuple[float, float, float]
    theta: float
    theta_p: float
    theta_pp: float
    equality_residuals: tuple[float, ...]
    phase_residuals: tuple[float, float, float]
    product_equality_residual: float
    marginal: bool
    tol: float

    @property
    def max_residual(self) -> float:
        return max((*self.equality_residuals, *self.phase_residuals, self.product_equality_residual))

    def to_dict(self) -> dict:
        d = asdict(self)
        for k, v in d.items():
            if isinstance(v, tuple):
                d[k] = list(v)
        return d


def ppt_analytic(params: ShiftStateParams, tol: float = ANALYTIC_TOL) -> PptReport:
    """Decide PPT from the closed-form conditions.

    PPT holds iff every relative modulus residual, every phase spread and the
    product-equality residual is ``<= tol``. The report is ``marginal`` when
    any of those residuals lies in ``(tol / 10, 10 * tol)``, i.e. too close
    to the threshold for the boolean to be trusted. ``min_eigenvalue`` comes
    from a numeric eigensolve of the partial transpose, for reference only.
    """
    eq = equality_residuals(params)
    theta, theta_p, theta_pp, spreads = extract_phases(params)
    prod = product_equality_residual(params)
    residuals = (*eq, *spreads, prod)
    ok = all(r <= tol for r in residuals)
    marginal = any(tol / 10 < r < 10 * tol for r in residuals)
    rho_pt = partial_transpose(build_density(params), 3, 3)
    min_eig = float(hermitian_eigenvalues(rho_pt)[0])
    return PptReport(
        is_ppt=ok,
        min_eigenvalue=min_eig,
        magnitude_invariants=magnitude_invariants(params),
        theta=wrap_angle(theta),
        theta_p=wrap_angle(theta_p),
        theta_pp=wrap_angle(theta_pp),
        equality_residuals=eq,
        phase_residuals=spreads,
        product_equality_residual=prod,
        marginal=marginal,
        tol=tol,
    )
