"""Seeded instance corpora: generic draws, certified PPT draws and sweeps.

PPT instances come from inverting the nine modulus equalities. Given weights
and a positive triple ``(a, b, g)`` for ``X``, two positive unknowns remain:
``a'`` and the ratio ``mu = a''/a'``. Then::

    a''  = mu a'
    b'   = mu sqrt(l0 l2)/l1 * b
    c''  = sqrt(l0 l1)/l2 * g / mu
    b''  = l0/sqrt(l1 l2) * a b / a'
    c'   = l0/sqrt(l1 l2) * a g / (mu a')

and ``(mu, a')`` is fixed by requiring ``|X'| = |X''| = 1``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .decomposition import EntangledDistillable, Separable, classify
from .linalg import PSD_TOL
from .ppt import ANALYTIC_TOL, magnitude_spread, ppt_analytic, ppt_numeric
from .states import NONZERO_TOL, InvalidParamsError, ShiftStateParams, build_density

__all__ = [
    "GeneratorExhausted",
    "GeneratorConfig",
    "SweepRecord",
    "sample_random",
    "sample_ppt",
    "ppt_chain",
    "solve_normalization",
    "twist_phases",
    "generate",
    "interpolate",
    "sweep",
]

log = logging.getLogger(__name__)

MAX_RETRIES = 50
BRACKET = (1e-3, 1e3)
MIN_RANDOM_MODULUS = 1e-3


class GeneratorExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    mode: Literal["random", "ppt"] = "random"
    count: int = 1
    phase_twist: bool = False

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")
        if self.mode not in ("random", "ppt"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


@dataclass(frozen=True)
class SweepRecord:
    t: float
    min_eigenvalue_pt: float
    verdict: str
    magnitude_spread: float
    skipped: bool = False


def _draw_weights(rng: np.random.Generator) -> np.ndarray:
    lam = np.clip(rng.dirichlet((1.0, 1.0, 1.0)), 0.05, 0.9)
    return lam / lam.sum()


def _draw_moduli(rng: np.random.Generator) -> np.ndarray:
    m = np.sqrt(rng.dirichlet((1.0, 1.0, 1.0)))
    return m / np.linalg.norm(m)


def sample_random(seed: int) -> ShiftStateParams:
    """A generic instance; almost never PPT."""
    rng = np.random.default_rng(seed)
    lam = _draw_weights(rng)
    triples = []
    for _ in range(3):
        while True:
            mod = _draw_moduli(rng)
            if mod.min() >= MIN_RANDOM_MODULUS:
                break
        phases = rng.uniform(-math.pi, math.pi, 3)
        triples.append(tuple(mod * np.exp(1j * phases)))
    return ShiftStateParams(tuple(lam), *triples)


def ppt_chain(lambdas, triple, mu: float, a1: float) -> tuple[np.ndarray, np.ndarray]:
    """Moduli of ``X'`` and ``X''`` forced by the equalities (unnormalized)."""
    l0, l1, l2 = lambdas
    a, b, g = triple
    r = l0 / math.sqrt(l1 * l2)
    t1 = np.array([a1, mu * math.sqrt(l0 * l2) / l1 * b, r * a * g / (mu * a1)])
    t2 = np.array([mu * a1, r * a * b / a1, math.sqrt(l0 * l1) / l2 * g / mu])
    return t1, t2


def _residual(lambdas, triple, v) -> np.ndarray:
    t1, t2 = ppt_chain(lambdas, triple, v[0], v[1])
    return np.array([t1 @ t1 - 1.0, t2 @ t2 - 1.0])


def _in_bracket(v) -> bool:
    return bool(np.all(np.isfinite(v)) and BRACKET[0] <= v[0] <= BRACKET[1] and BRACKET[0] <= v[1] <= 1.0)


def _newton(lambdas, triple, start, max_iter: int = 60, ftol: float = 1e-15):
    v = np.array(start, dtype=float)
    f = _residual(lambdas, triple, v)
    for _ in range(max_iter):
        if np.max(np.abs(f)) <= ftol:
            return v
        jac = np.empty((2, 2))
        for k in range(2):
            h = 1e-7 * max(abs(v[k]), 1e-3)
            e = np.zeros(2)
            e[k] = h
            jac[:, k] = (_residual(lambdas, triple, v + e) - _residual(lambdas, triple, v - e)) / (2 * h)
        try:
            step = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError:
            return None
        damping = 1.0
        norm_f = np.linalg.norm(f)
        while damping > 1e-6:
            trial = v + damping * step
            if _in_bracket(trial):
                f_trial = _residual(lambdas, triple, trial)
                if np.linalg.norm(f_trial) < norm_f:
                    v, f = trial, f_trial
                    break
            damping *= 0.5
        else:
            return None
    return v if np.max(np.abs(f)) <= 1e-13 else None


def _inner_roots(lambdas, triple, mu: float) -> tuple[float, float] | None:
    """Both roots ``a'`` of ``|X'|^2 = 1`` at fixed ``mu``, smaller first.

    In ``x = a'^2`` the condition is ``x^2 - (1 - k1 mu^2) x + k2 / mu^2 = 0``.
    """
    l0, l1, l2 = lambdas
    a, b, g = triple
    k1 = l0 * l2 / l1**2 * b * b
    k2 = l0**2 * a * a * g * g / (l1 * l2)
    p = 1.0 - k1 * mu * mu
    disc = p * p - 4.0 * k2 / (mu * mu)
    if p <= 0 or disc < 0:
        return None
    s = math.sqrt(disc)
    return math.sqrt((p - s) / 2), math.sqrt((p + s) / 2)


def _branch_residual(lambdas, triple, mu: float, branch: int) -> float:
    roots = _inner_roots(lambdas, triple, mu)
    if roots is None:
        return math.nan
    return float(_residual(lambdas, triple, (mu, roots[branch]))[1])


def _grid_residuals(lambdas, triple, mus: np.ndarray, branch: int) -> np.ndarray:
    """``|X''|^2 - 1`` along one inner-root branch, NaN where no root exists."""
    l0, l1, l2 = lambdas
    a, b, g = triple
    k1 = l0 * l2 / l1**2 * b * b
    k2 = l0**2 * a * a * g * g / (l1 * l2)
    k3 = l0**2 * a * a * b * b / (l1 * l2)
    k4 = l0 * l1 * g * g / l2**2
    p = 1.0 - k1 * mus * mus
    disc = p * p - 4.0 * k2 / (mus * mus)
    valid = (p > 0) & (disc >= 0)
    sign = 1.0 if branch else -1.0
    x = np.where(valid, (p + sign * np.sqrt(np.where(valid, disc, 0.0))) / 2, np.nan)
    y = mus * mus
    return x * y + k3 / x + k4 / y - 1.0


def _bisection(lambdas, triple, grid_size: int = 400):
    """Scan ``mu`` over the bracket; bisect sign changes of ``|X''|^2 - 1``."""
    mus = np.geomspace(*BRACKET, grid_size)
    for branch in (0, 1):
        vals = _grid_residuals(lambdas, triple, mus, branch)
        prod = vals[:-1] * vals[1:]
        for i in np.flatnonzero(np.isfinite(prod) & (prod <= 0)):
            lo, hi, flo = mus[i], mus[i + 1], vals[i]
            for _ in range(200):
                mid = math.sqrt(lo * hi)
                fmid = _branch_residual(lambdas, triple, mid, branch)
                if not np.isfinite(fmid):
                    break
                if flo * fmid <= 0:
                    hi = mid
                else:
                    lo, flo = mid, fmid
                if hi / lo - 1 < 1e-15:
                    break
            mu = math.sqrt(lo * hi)
            roots = _inner_roots(lambdas, triple, mu)
            if roots is None:
                continue
            polished = _newton(lambdas, triple, np.array([mu, roots[branch]]))
            if polished is not None:
                return polished
    return None


def solve_normalization(lambdas, triple) -> tuple[float, float] | None:
    """``(mu, a')`` making both chained vectors unit-norm, or ``None``.

    Damped Newton from ``(1, 1/sqrt(3))`` first, then a scan over ``mu``.
    """
    v = _newton(lambdas, triple, (1.0, 1 / math.sqrt(3)))
    if v is None:
        v = _bisection(lambdas, triple)
    if v is None or not _in_bracket(v):
        return None
    return float(v[0]), float(v[1])


def twist_phases(params: ShiftStateParams, local_a, local_b, global_phases=(0.0, 0.0, 0.0)) -> ShiftStateParams:
    """Apply ``D_a (x) D_b`` with ``D = diag(e^{i phases})`` plus a phase per vector.

    Local unitaries preserve the family shape, PPT-ness and separability; the
    per-vector phases leave the density matrix untouched.
    """
    da = np.exp(1j * np.asarray(local_a, dtype=float))
    db = np.exp(1j * np.asarray(local_b, dtype=float))
    eg = np.exp(1j * np.asarray(global_phases, dtype=float))
    out = []
    for m, t in enumerate(params.triples):
        out.append(tuple(t * da * np.roll(db, -m) * eg[m]))
    return ShiftStateParams(params.lambdas, *out)


def _sample_ppt(seed: int, phase_twist: bool) -> tuple[ShiftStateParams, int]:
    rng = np.random.default_rng(seed)
    for attempt in range(1, MAX_RETRIES + 1):
        lam = _draw_weights(rng)
        triple = _draw_moduli(rng)
        sol = solve_normalization(lam, triple)
        if sol is None:
            continue
        t1, t2 = ppt_chain(lam, triple, *sol)
        if min(t1.min(), t2.min()) < NONZERO_TOL:
            continue
        try:
            params = ShiftStateParams(tuple(lam), tuple(triple), tuple(t1), tuple(t2))
        except InvalidParamsError:
            continue
        if phase_twist:
            params = twist_phases(
                params,
                rng.uniform(-math.pi, math.pi, 3),
                rng.uniform(-math.pi, math.pi, 3),
                rng.uniform(-math.pi, math.pi, 3),
            )
        if not ppt_analytic(params, ANALYTIC_TOL).is_ppt:
            continue
        return params, attempt
    raise GeneratorExhausted(f"seed {seed}: no normalized PPT completion in {MAX_RETRIES} draws")


def sample_ppt(seed: int, phase_twist: bool = False) -> ShiftStateParams:
    """A PPT (hence separable) instance, certified by the closed-form test.

    Weights and the ``X`` triple are drawn; the other two triples follow from
    the equality chain with all phases zero. ``phase_twist`` then applies
    random local diagonal phases and per-vector phases.

    Raises ``GeneratorExhausted`` after ``MAX_RETRIES`` unusable draws.
    """
    return _sample_ppt(seed, phase_twist)[0]


def generate(config: GeneratorConfig) -> list[ShiftStateParams]:
    """``config.count`` instances, the i-th drawn from seed ``config.seed + i``."""
    out = []
    attempts = 0
    for i in range(config.count):
        seed = config.seed + i
        if config.mode == "ppt":
            params, n = _sample_ppt(seed, config.phase_twist)
            attempts += n
        else:
            params = sample_random(seed)
            if config.phase_twist:
                rng = np.random.default_rng([seed, 1])
                params = twist_phases(params, *(rng.uniform(-math.pi, math.pi, 3) for _ in range(3)))
        out.append(params)
    if config.mode == "ppt":
        log.info("generated %d ppt instances in %d draws", config.count, attempts)
    return out


def interpolate(start: ShiftStateParams, end: ShiftStateParams, t: float) -> ShiftStateParams:
    """Linear path in weights, amplitude moduli and (shortest-arc) phases.

    Weights and each triple are renormalized. Raises ``InvalidParamsError``
    if an amplitude modulus vanishes along the way.
    """
    lam = (1 - t) * np.array(start.lambdas) + t * np.array(end.lambdas)
    lam = lam / lam.sum()
    triples = []
    for s, e in zip(start.triples, end.triples):
        mod = (1 - t) * np.abs(s) + t * np.abs(e)
        dphi = np.angle(e / s)
        ph = np.angle(s) + t * dphi
        norm = np.linalg.norm(mod)
        if norm == 0:
            raise InvalidParamsError("interpolated triple is zero")
        triples.append(tuple(mod / norm * np.exp(1j * ph)))
    return ShiftStateParams(tuple(lam), *triples)


def sweep(
    start: ShiftStateParams,
    end: ShiftStateParams,
    steps: int,
    tol: float = ANALYTIC_TOL,
    psd_tol: float = PSD_TOL,
) -> list[SweepRecord]:
    """Classify ``steps + 1`` evenly spaced points on the path from ``start`` to ``end``."""
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    records = []
    crossings = 0
    prev_sign = None
    for k in range(steps + 1):
        t = k / steps
        try:
            params = interpolate(start, end, t)
        except InvalidParamsError:
            log.warning("sweep step t=%g skipped: zero amplitude", t)
            records.append(SweepRecord(t, math.nan, "skipped", math.nan, skipped=True))
            continue
        _, min_eig = ppt_numeric(build_density(params), 3, 3, psd_tol)
        verdict = classify(params, tol)
        name = "Separable" if isinstance(verdict, Separable) else "EntangledDistillable"
        assert isinstance(verdict, (Separable, EntangledDistillable))
        records.append(SweepRecord(t, min_eig, name, magnitude_spread(params)))
        sign = min_eig >= -psd_tol
        if prev_sign is not None and sign != prev_sign:
            crossings += 1
        prev_sign = sign
    if crossings > 1:
        log.warning("sweep crossed the PPT boundary %d times", crossings)
    return records
