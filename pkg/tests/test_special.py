import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from twisted_yangian.errors import DegeneratePairError, InvalidIndexError, PoleError
from twisted_yangian.special import (
    WeightVector,
    defect_poles,
    eval_a,
    eval_a_hat,
    eval_e,
    eval_two_pole,
    eval_two_pole_hat,
    eval_X,
    eval_Y,
    eval_Y_hat,
    perturbed_a_hat,
    phase,
    phase_derivative,
    single_pole_hat,
)

indices = st.sampled_from([0.5, 1, 1.5, 2, 3, -1, -0.5])
reals = st.floats(-50, 50, allow_nan=False)


def test_e_at_zero_is_minus_one():
    assert eval_e(1, 0.0) == -1
    assert eval_e(2, 0.0) == -1


def test_e_example_value():
    # (1 + i/2)/(1 - i/2) = (3 + 4i)/5
    assert abs(eval_e(1, 1.0) - (0.6 + 0.8j)) < 1e-15


def test_negative_index_is_reciprocal():
    lam = np.linspace(-3, 3, 13)
    assert np.allclose(eval_e(-1, lam) * eval_e(1, lam), 1, atol=1e-14)


def test_a_examples():
    assert eval_a(1, 0.0) == pytest.approx(2 / np.pi, rel=1e-15)
    assert eval_a(2, 1.0) == pytest.approx(1 / (2 * np.pi), rel=1e-15)


def test_a_hat_examples():
    assert eval_a_hat(1, 0.0) == 1.0
    assert eval_a_hat(2, -2.0) == pytest.approx(np.exp(-2), rel=1e-15)


def test_invalid_indices_rejected():
    with pytest.raises(InvalidIndexError):
        eval_e(0, 1.0)
    with pytest.raises(InvalidIndexError):
        eval_a(1 / 3, 1.0)


def test_pole_of_e_raises():
    with pytest.raises(PoleError):
        eval_e(1, 0.5j)


@given(indices, reals)
def test_e_is_unimodular(n, lam):
    assert abs(abs(eval_e(n, lam)) - 1) < 1e-14


@given(indices, reals)
def test_phase_reproduces_e(n, lam):
    assert abs(eval_e(n, lam) + np.exp(-1j * phase(n, lam))) < 1e-13


@given(indices, reals)
def test_a_even_and_a_hat_even(n, x):
    assert eval_a(n, x) == eval_a(n, -x)
    assert eval_a_hat(n, x) == eval_a_hat(n, -x)


@given(st.sampled_from([0.5, 1, 2, 3]), st.floats(-20, 20))
def test_phase_derivative_is_2pi_a(n, lam):
    assert phase_derivative(n, lam) == pytest.approx(2 * np.pi * eval_a(n, lam), rel=1e-14)


@pytest.mark.parametrize("n", [0.5, 1, 2])
def test_phase_derivative_finite_difference(n):
    lam = np.linspace(-4, 4, 17)
    h = 1e-5
    fd = (phase(n, lam + h) - phase(n, lam - h)) / (2 * h)
    assert np.max(np.abs(fd - phase_derivative(n, lam))) < 1e-8


@pytest.mark.parametrize("n", [0.5, 1, 2])
@pytest.mark.parametrize("omega", [-5.0, -1.3, 0.0, 0.4, 2.0, 5.0])
def test_a_hat_is_fourier_transform_of_a(n, omega):
    val, _ = integrate.quad(lambda l: eval_a(n, l), 0, np.inf, weight="cos", wvar=abs(omega)) if omega else \
        integrate.quad(lambda l: eval_a(n, l), 0, np.inf)
    assert 2 * val == pytest.approx(eval_a_hat(n, omega), abs=1e-6)


@given(st.sampled_from([0.5, 1, 1.5, 2, 4]), reals.filter(lambda x: x != 0))
def test_two_pole_reduces_to_a(n, lam):
    assert abs(eval_two_pole(n / 2, -n / 2, lam) - eval_a(n, lam)) < 1e-15


def test_two_pole_is_complex_off_symmetric_pair():
    assert abs(np.imag(eval_two_pole(1.0, 0.5, 1.0))) > 0.01


def test_two_pole_degenerate_pair():
    with pytest.raises(DegeneratePairError):
        eval_two_pole(1.0, 1.0, 0.3)
    with pytest.raises(DegeneratePairError):
        eval_two_pole_hat(-0.5, -0.5, 0.3)


def test_two_pole_hat_sign_cases():
    w = np.array([-1.0, 1.0])
    # x > 0 > y
    assert np.allclose(eval_two_pole_hat(1.0, -0.5, w), [np.exp(-1.0), np.exp(-0.5)])
    # both negative: only w > 0
    assert np.allclose(eval_two_pole_hat(-1.0, -0.5, w), [0.0, np.exp(-0.5) - np.exp(-1.0)])
    # both positive: only w < 0
    assert np.allclose(eval_two_pole_hat(1.0, 0.5, w), [np.exp(-1.0) - np.exp(-0.5), 0.0])


def test_zero_pole_conventions():
    w = np.array([-1.0, 1.0])
    assert np.allclose(single_pole_hat(0, w, "principal"), [0.5, -0.5])
    assert np.allclose(single_pole_hat(0, w, "plus"), [1.0, 0.0])
    assert np.allclose(single_pole_hat(0, w, "minus"), [0.0, -1.0])
    with pytest.raises(ValueError):
        single_pole_hat(0, w, "bogus")


def test_weight_vector_validation():
    assert WeightVector.fundamental(3) == (1, 0, 0)
    assert WeightVector.trivial(4).N == 4
    with pytest.raises(InvalidIndexError):
        WeightVector((0, 1))
    with pytest.raises(InvalidIndexError):
        defect_poles("+", 3, (1, 0, 0))


def test_trivial_weights_give_unit_X_and_zero_Y():
    a = WeightVector.trivial(3)
    assert eval_X("+", 1, a, 0.7) == pytest.approx(1.0)
    assert eval_Y("-", 2, a, 0.7) == 0
    assert np.all(eval_Y_hat("+", 1, a, np.array([-1.0, 1.0])) == 0)


weights = st.integers(3, 5).flatmap(
    lambda N: st.lists(st.integers(-3, 3), min_size=N, max_size=N).map(lambda l: tuple(sorted(l, reverse=True))))


@settings(max_examples=60)
@given(weights, st.floats(0.05, 6.0), st.data())
def test_Y_reflection_symmetry(alpha, lam, data):
    N = len(alpha)
    k = data.draw(st.integers(1, N - 1))
    xp, yp = defect_poles("+", k, alpha)
    if xp != yp and 0 not in (xp, yp):
        assert abs(eval_Y("+", k, alpha, lam) - eval_Y("-", N - k, alpha, -lam)) < 1e-13
    w = np.array([-2.0, -0.3, 0.3, 2.0])
    assert np.max(np.abs(eval_Y_hat("+", k, alpha, w) - eval_Y_hat("-", N - k, alpha, -w))) < 1e-14


def test_perturbation_only_touches_a_hat_1():
    with perturbed_a_hat(1e-3):
        assert eval_a_hat(1, 0.0) == pytest.approx(1.001)
        assert eval_a_hat(2, 0.0) == 1.0
    assert eval_a_hat(1, 0.0) == 1.0
