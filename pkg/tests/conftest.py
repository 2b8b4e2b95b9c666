import numpy as np
import pytest

from shiftppt.generator import sample_ppt
from shiftppt.states import ShiftStateParams, symmetric_params

UNIFORM = (1 / np.sqrt(3),) * 3


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


def random_unitary(rng, n):
    """Product of random complex Givens rotations and a diagonal phase."""
    u = np.diag(np.exp(1j * rng.uniform(-np.pi, np.pi, n)))
    for _ in range(3 * n * n):
        p, q = rng.choice(n, 2, replace=False)
        t, phi = rng.uniform(0, 2 * np.pi, 2)
        g = np.eye(n, dtype=complex)
        g[p, p], g[p, q] = np.cos(t), -np.exp(1j * phi) * np.sin(t)
        g[q, p], g[q, q] = np.exp(-1j * phi) * np.sin(t), np.cos(t)
        u = g @ u
    return u


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture
def symmetric():
    return symmetric_params()


@pytest.fixture
def non_ppt():
    return ShiftStateParams((0.5, 0.3, 0.2), UNIFORM, UNIFORM, UNIFORM)


@pytest.fixture(scope="session")
def ppt_corpus():
    return [sample_ppt(seed, phase_twist=seed % 2 == 0) for seed in range(1, 41)]


ACCEPTANCE: list[tuple[int, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, ok, text in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {text}")
