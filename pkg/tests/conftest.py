import numpy as np
import pytest

from concurrence_bounds.states import PureState, pure_to_density


def bell_vector(n=2):
    v = np.zeros(n * n)
    v[np.arange(n) * (n + 1)] = 1 / np.sqrt(n)
    return v


@pytest.fixture
def bell():
    return pure_to_density(PureState(bell_vector(2), (2, 2)))


@pytest.fixture
def max_ent3():
    return pure_to_density(PureState(bell_vector(3), (3, 3)))


def random_hermitian(rng, n):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return z + z.conj().T


def pt_reference(m, n1, n2):
    """Loop-level partial transpose on system 1."""
    out = np.empty_like(m)
    for i in range(n1):
        for j in range(n2):
            for k in range(n1):
                for l in range(n2):
                    out[i * n2 + j, k * n2 + l] = m[k * n2 + j, i * n2 + l]
    return out


def realign_reference(m, n1, n2):
    out = np.empty((n1 * n1, n2 * n2), dtype=complex)
    for i in range(n1):
        for j in range(n2):
            for k in range(n1):
                for l in range(n2):
                    out[i * n1 + k, j * n2 + l] = m[i * n2 + j, k * n2 + l]
    return out


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
