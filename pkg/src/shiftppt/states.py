"""The cyclic-shift family of rank-d mixed states on C^d (x) C^d.

For ``d = 3`` a state is fixed by three weights and three amplitude triples::

    X   = a |00> + b |11> + c |22>
    X'  = (I (x) P)   (a'|00> + b'|11> + c'|22>)
    X'' = (I (x) P^2) (a''|00> + b''|11> + c''|22>)

    rho = l0 |X><X| + l1 |X'><X'| + l2 |X''><X''|

where ``P`` is the cyclic shift ``|j> -> |j+1 mod d>``. The three vectors
have disjoint supports, so they are orthonormal whenever each triple is.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import kron, identity, outer

__all__ = [
    "InvalidParamsError",
    "ShiftStateParams",
    "GeneralShiftParams",
    "normalize_triple",
    "permutation_matrix",
    "build_shift_vector",
    "shift_vectors",
    "build_density",
    "build_density_general",
    "symmetric_params",
    "SUPPORTS",
]

NONZERO_TOL = 1e-12
NORM_TOL = 1e-12

# nonzero index sets of X, X', X'' in the 9-dim product basis
SUPPORTS = ((0, 4, 8), (1, 5, 6), (2, 3, 7))


class InvalidParamsError(ValueError):
    pass


def _check_weights(lambdas) -> tuple[float, ...]:
    lam = tuple(float(x) for x in lambdas)
    for i, x in enumerate(lam):
        if not np.isfinite(x) or not 0.0 < x < 1.0:
            raise InvalidParamsError(f"lambda[{i}] = {x!r} is not in (0, 1)")
    if abs(sum(lam) - 1.0) > NORM_TOL:
        raise InvalidParamsError(f"lambdas sum to {sum(lam)!r}, expected 1")
    return lam


def _check_amplitudes(amps, name: str, length: int) -> tuple[complex, ...]:
    amp = tuple(complex(z) for z in amps)
    if len(amp) != length:
        raise InvalidParamsError(f"{name} has {len(amp)} entries, expected {length}")
    for i, z in enumerate(amp):
        if not (np.isfinite(z.real) and np.isfinite(z.imag)):
            raise InvalidParamsError(f"{name}[{i}] is not finite")
        if abs(z) < NONZERO_TOL:
            raise InvalidParamsError(f"{name}[{i}] = {z!r} is (numerically) zero")
    norm2 = sum(abs(z) ** 2 for z in amp)
    if abs(norm2 - 1.0) > NORM_TOL:
        raise InvalidParamsError(f"{name} has squared norm {norm2!r}, expected 1")
    return amp


def normalize_triple(amps) -> tuple[complex, ...]:
    """Scale an amplitude vector to unit norm."""
    v = np.asarray(amps, dtype=complex)
    n = np.linalg.norm(v)
    if n == 0:
        raise InvalidParamsError("cannot normalize a zero vector")
    return tuple(complex(z) for z in v / n)


@dataclass(frozen=True)
class ShiftStateParams:
    """Weights ``(l0, l1, l2)`` and amplitude triples for ``X, X', X''``.

    Construction validates everything: weights in (0, 1) summing to 1, every
    amplitude at least ``1e-12`` in modulus, each triple unit-norm. Triples
    are never renormalized silently; use :func:`normalize_triple`.
    """

    lambdas: tuple[float, float, float]
    t0: tuple[complex, complex, complex]
    t1: tuple[complex, complex, complex]
    t2: tuple[complex, complex, complex]

    def __post_init__(self):
        lam = _check_weights(self.lambdas)
        if len(lam) != 3:
            raise InvalidParamsError(f"expected 3 lambdas, got {len(lam)}")
        object.__setattr__(self, "lambdas", lam)
        for name in ("t0", "t1", "t2"):
            object.__setattr__(self, name, _check_amplitudes(getattr(self, name), name, 3))

    @property
    def triples(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return tuple(np.array(t, dtype=complex) for t in (self.t0, self.t1, self.t2))

    def to_general(self) -> GeneralShiftParams:
        return GeneralShiftParams(3, self.lambdas, (self.t0, self.t1, self.t2))


@dataclass(frozen=True)
class GeneralShiftParams:
    """The same construction for odd ``d >= 3``: ``d`` weights, ``d`` vectors of length ``d``."""

    d: int
    lambdas: tuple[float, ...]
    amps: tuple[tuple[complex, ...], ...]

    def __post_init__(self):
        d = self.d
        if not isinstance(d, (int, np.integer)) or d < 3 or d % 2 == 0:
            raise InvalidParamsError(f"d must be an odd integer >= 3, got {d!r}")
        lam = _check_weights(self.lambdas)
        if len(lam) != d:
            raise InvalidParamsError(f"expected {d} lambdas, got {len(lam)}")
        if len(self.amps) != d:
            raise InvalidParamsError(f"expected {d} amplitude vectors, got {len(self.amps)}")
        amps = tuple(_check_amplitudes(a, f"amps[{m}]", d) for m, a in enumerate(self.amps))
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "amps", amps)


def permutation_matrix(d: int, m: int = 1) -> np.ndarray:
    """``P**m`` for the cyclic shift ``P[i, j] = 1`` iff ``i == (j + 1) % d``."""
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    p = np.zeros((d, d), dtype=complex)
    for j in range(d):
        p[(j + m) % d, j] = 1.0
    return p


def build_shift_vector(d: int, m: int, amps) -> np.ndarray:
    """``(I (x) P^m) sum_i amps[i] |ii>`` as a ``d*d`` vector."""
    amps = np.asarray(amps, dtype=complex)
    if amps.shape != (d,):
        raise InvalidParamsError(f"expected {d} amplitudes, got shape {amps.shape}")
    if np.any(np.abs(amps) < NONZERO_TOL):
        raise InvalidParamsError("amplitudes must be nonzero")
    diag = np.zeros(d * d, dtype=complex)
    diag[[i * d + i for i in range(d)]] = amps
    return kron(identity(d), permutation_matrix(d, m)) @ diag


def shift_vectors(params: ShiftStateParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return tuple(build_shift_vector(3, m, t) for m, t in enumerate(params.triples))


def build_density(params: ShiftStateParams) -> np.ndarray:
    """The 9x9 density matrix ``sum_m l_m |X_m><X_m|``."""
    rho = np.zeros((9, 9), dtype=complex)
    for lam, x in zip(params.lambdas, shift_vectors(params)):
        rho = rho + lam * outer(x, x)
    return rho


def build_density_general(params: GeneralShiftParams) -> np.ndarray:
    d = params.d
    rho = np.zeros((d * d, d * d), dtype=complex)
    for m, (lam, amps) in enumerate(zip(params.lambdas, params.amps)):
        x = build_shift_vector(d, m, amps)
        rho = rho + lam * outer(x, x)
    return rho


def symmetric_params() -> ShiftStateParams:
    """Equal weights and all amplitudes ``1/sqrt(3)``."""
    t = (1 / np.sqrt(3),) * 3
    return ShiftStateParams((1 / 3, 1 / 3, 1 / 3), t, t, t)
