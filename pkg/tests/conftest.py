import numpy as np
import pytest
from scipy.linalg import expm

from gaussian_hoeffding import GaussianState, symplectic_form


def random_symplectic(n, rng, scale=0.5):
    """``expm(Omega H)`` for a random symmetric ``H`` is symplectic."""
    A = rng.normal(scale=scale, size=(2 * n, 2 * n))
    return expm(symplectic_form(n) @ (0.5 * (A + A.T)))


def random_cov(n, rng, nu_max=10.0, scale=0.5):
    nu = rng.uniform(1.0, nu_max, size=n)
    T = random_symplectic(n, rng, scale)
    V = T @ np.diag(np.repeat(nu, 2)) @ T.T
    return 0.5 * (V + V.T), np.sort(nu)[::-1]


def random_state(n, rng, nu_max=5.0, mean_scale=1.0, pure=False):
    if pure:
        T = random_symplectic(n, rng)
        V = T @ T.T
        V = 0.5 * (V + V.T)
    else:
        V, _ = random_cov(n, rng, nu_max)
    return GaussianState(rng.normal(scale=mean_scale, size=2 * n), V)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# one-line verdicts of the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
