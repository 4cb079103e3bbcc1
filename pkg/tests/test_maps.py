import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from concurrence_bounds.errors import DimMismatch, NotBijection
from concurrence_bounds.family import family_state, printed_mapped_matrix
from concurrence_bounds.maps import (
    GeneralizedMap,
    Permutation,
    apply_kraus_t1,
    apply_map,
    cycle_analysis,
    extend_second,
    max_positive_t,
    parse_permutation,
)
from concurrence_bounds.states import PureState, pure_to_density, random_density, validate_density

from conftest import bell_vector, random_hermitian


def E(n, i, j):
    m = np.zeros((n, n))
    m[i, j] = 1
    return m


class TestPermutation:
    def test_cycle_analysis(self):
        assert cycle_analysis(Permutation((0, 1, 2))) == ([1, 1, 1], 1, False)
        assert cycle_analysis(Permutation((1, 2, 0))) == ([3], 3, True)
        assert cycle_analysis(Permutation((1, 0, 2))) == ([2, 1], 2, False)

    def test_not_bijection(self):
        with pytest.raises(NotBijection):
            Permutation((0, 0, 1))
        with pytest.raises(NotBijection):
            Permutation((1, 2, 3))

    def test_max_positive_t(self):
        assert max_positive_t(Permutation.cyclic(3), 3) == 1
        assert max_positive_t(Permutation.identity(3), 3) == 3
        assert max_positive_t(Permutation((1, 0, 2)), 3) == 1.5

    def test_parse(self):
        assert parse_permutation("cyclic", 4) == Permutation((1, 2, 3, 0))
        assert parse_permutation("2,0,1", 3).mapping == (2, 0, 1)
        with pytest.raises(NotBijection):
            parse_permutation("a,b", 2)
        with pytest.raises(DimMismatch):
            parse_permutation("1,0", 3)

    def test_default_cycle_is_shift(self):
        assert Permutation.cyclic(3).mapping == (1, 2, 0)


class TestGeneralizedMap:
    def test_positivity_flag(self):
        assert GeneralizedMap.cyclic(3, 1.0).is_positive
        assert not GeneralizedMap.cyclic(3, 1.0 + 1e-9).is_positive
        assert GeneralizedMap(3, 3.0, Permutation.identity(3)).is_positive
        assert GeneralizedMap(3, 1.5, Permutation((1, 0, 2))).is_positive

    def test_rejects_negative_t(self):
        with pytest.raises(ValueError):
            GeneralizedMap.cyclic(3, -0.1)

    def test_dims(self):
        with pytest.raises(DimMismatch):
            GeneralizedMap(3, 0.5, Permutation.cyclic(2))
        with pytest.raises(DimMismatch):
            apply_map(GeneralizedMap.cyclic(3, 0.5), np.eye(2))


def test_apply_map_examples():
    for t in (0.0, 0.3, 1.0):
        np.testing.assert_allclose(apply_map(GeneralizedMap.cyclic(3, t), np.eye(3)), 2 * np.eye(3))
        np.testing.assert_allclose(
            apply_map(GeneralizedMap.cyclic(3, t), E(3, 0, 0)), np.diag([2 - t, 0, t])
        )


def test_apply_map_negates_off_diagonal():
    x = np.arange(9.0).reshape(3, 3) + 1j
    out = apply_map(GeneralizedMap(3, 0.7, Permutation((2, 0, 1))), x)
    off = ~np.eye(3, dtype=bool)
    np.testing.assert_array_equal(out[off], -x[off])
    d = np.diag(x)
    np.testing.assert_allclose(np.diag(out), 1.3 * d + 0.7 * d[[2, 0, 1]])


def test_kraus_examples():
    np.testing.assert_allclose(apply_kraus_t1(E(3, 0, 0), 3), np.diag([1, 0, 1]))
    np.testing.assert_allclose(apply_kraus_t1(np.eye(3), 3), 2 * np.eye(3))


def test_kraus_literal_form_without_adjoint_differs():
    # sum E_{i,i+1} A E_{i,i+1} (no adjoint) moves weight off the diagonal
    n = 3
    a = E(n, 1, 0) + E(n, 0, 1)
    literal = (n - 1) * sum(E(n, i, i) @ a @ E(n, i, i) for i in range(n))
    literal = literal + sum(E(n, i, (i + 1) % n) @ a @ E(n, i, (i + 1) % n) for i in range(n)) - a
    assert not np.allclose(literal, apply_map(GeneralizedMap.cyclic(n, 1.0), a))


def test_kraus_equals_t1_map_on_random_hermitian():
    rng = np.random.default_rng(0)
    for trial in range(1000):
        n = 2 + trial % 5
        x = random_hermitian(rng, n)
        np.testing.assert_allclose(
            apply_kraus_t1(x, n), apply_map(GeneralizedMap.cyclic(n, 1.0), x), rtol=0, atol=1e-12
        )


def test_extend_second_maximally_mixed():
    rho = validate_density(np.eye(9) / 9, (3, 3))
    for t in (0.0, 0.5, 1.0):
        np.testing.assert_allclose(extend_second(GeneralizedMap.cyclic(3, t), rho), 2 / 9 * np.eye(9), atol=1e-15)


def test_extend_second_bell():
    bell = pure_to_density(PureState(bell_vector(), (2, 2)))
    out = extend_second(GeneralizedMap.cyclic(2, 1.0), bell)
    assert np.trace(out).real == pytest.approx(1)
    assert np.linalg.eigvalsh(out)[0] < -0.1


def test_extend_second_is_blockwise():
    rho = random_density((2, 3), 4, seed=3)
    m = GeneralizedMap(3, 0.4, Permutation((2, 0, 1)))
    out = extend_second(m, rho)
    for i in range(2):
        for k in range(2):
            block = rho.mat[3 * i : 3 * i + 3, 3 * k : 3 * k + 3]
            np.testing.assert_allclose(out[3 * i : 3 * i + 3, 3 * k : 3 * k + 3], apply_map(m, block))
    with pytest.raises(DimMismatch):
        extend_second(GeneralizedMap.cyclic(2, 0.5), rho)


def test_extend_second_family_vs_closed_form_matrix():
    """The closed-form mapped matrix differs from the computed one at exactly
    the entries coupling |00>,|20> and |01>,|21>."""
    x, y, t = 0.7, 1.3, 0.4
    norm = 4 * x + 5 * y
    actual = extend_second(GeneralizedMap.cyclic(3, t), family_state(x, y))
    shown = printed_mapped_matrix(x, y, t)
    diff = np.argwhere(~np.isclose(actual, shown, atol=1e-14))
    assert sorted(map(tuple, diff)) == [(0, 6), (1, 7), (6, 0), (7, 1)]
    assert actual[0, 6] == pytest.approx(t * x / norm)
    assert actual[1, 7] == pytest.approx((2 - t) * x / norm)
    assert shown[1, 7] == pytest.approx(-x / norm)


def _random_perm(rng, n):
    return Permutation(tuple(int(i) for i in rng.permutation(n)))


def test_trace_scaling_and_hermiticity():
    rng = np.random.default_rng(4)
    for trial in range(300):
        n = int(rng.integers(2, 6))
        perm = _random_perm(rng, n)
        m = GeneralizedMap(n, float(rng.uniform(0, n)), perm)
        rho = random_density((n, n), int(rng.integers(1, n * n + 1)), seed=trial)
        out = extend_second(m, rho)
        assert np.trace(out).real == pytest.approx(n - 1, abs=1e-10)
        assert np.max(np.abs(out - out.conj().T)) <= 1e-12
        x = random_hermitian(rng, n)
        y = apply_map(m, x)
        assert np.trace(y).real == pytest.approx((n - 1) * np.trace(x).real, rel=1e-12, abs=1e-12)
        assert np.max(np.abs(y - y.conj().T)) <= 1e-12


def test_positive_on_certified_domain():
    rng = np.random.default_rng(5)
    for n in range(2, 7):
        psis = rng.standard_normal((2000, n)) + 1j * rng.standard_normal((2000, n))
        psis /= np.linalg.norm(psis, axis=1, keepdims=True)
        for k, psi in enumerate(psis):
            perm = Permutation.cyclic(n) if k % 2 else _random_perm(rng, n)
            t = max_positive_t(perm) * (1.0 if k % 7 == 0 else rng.random())
            out = apply_map(GeneralizedMap(n, t, perm), np.outer(psi, psi.conj()))
            assert np.linalg.eigvalsh(out)[0] >= -1e-9


@settings(max_examples=100, deadline=None)
@given(
    n=st.integers(2, 6),
    t=st.floats(0, 6),
    alpha=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
    beta=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
    seed=st.integers(0, 2**32 - 1),
)
def test_linearity(n, t, alpha, beta, seed):
    rng = np.random.default_rng(seed)
    m = GeneralizedMap(n, t, _random_perm(rng, n))
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    y = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    lhs = apply_map(m, alpha * x + beta * y)
    rhs = alpha * apply_map(m, x) + beta * apply_map(m, y)
    scale = 1 + np.max(np.abs(lhs))
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale
