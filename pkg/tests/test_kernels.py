import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from twisted_yangian.errors import ContractError, InvalidIndexError
from twisted_yangian.kernels import (
    AlgebraSpec,
    HoleConfig,
    density_closed_form,
    density_corrections,
    energy_closed_form,
    ground_state_density,
    hole_energy,
    hole_r2,
    inverse_kernel,
    kernel_matrix,
    source_vectors,
    yangian_inverse_entry,
)

# exp(-|w|/2) = 1/2 makes every entry rational
W_HALF = 2 * np.log(2)


@pytest.mark.parametrize("parity,n,K,R,sigma", [
    ("odd", 1, 3 / 4, 4 / 3, 2 / 3),
    ("even", 1, 5 / 4, 4 / 5, 2 / 5),
])
def test_rank_one_values(parity, n, K, R, sigma):
    s = AlgebraSpec(parity, n)
    assert kernel_matrix(s)(W_HALF)[0, 0] == pytest.approx(K, rel=1e-15)
    assert inverse_kernel(s)(W_HALF)[0, 0] == pytest.approx(R, rel=1e-15)
    assert ground_state_density(s, 1)(W_HALF) == pytest.approx(sigma, rel=1e-15)


def test_spec_rank_mapping():
    assert AlgebraSpec("odd", 2).N == 5
    assert AlgebraSpec("even", 3).N == 6
    assert AlgebraSpec.from_N(7) == AlgebraSpec("odd", 3)
    assert AlgebraSpec.from_N(2) == AlgebraSpec("even", 1)


def test_yangian_inverse_value():
    # sl(3): R_11 = sinh(2t)/sinh(3t) * exp(t)... check against the direct inverse
    N, t = 3, W_HALF / 2
    K = np.array([[1 + np.exp(-2 * t), -np.exp(-t)], [-np.exp(-t), 1 + np.exp(-2 * t)]])
    Rinv = np.linalg.inv(K)
    assert yangian_inverse_entry(N, 1, 1)(W_HALF) == pytest.approx(Rinv[0, 0], rel=1e-14)
    assert yangian_inverse_entry(N, 1, 2)(W_HALF) == pytest.approx(Rinv[0, 1], rel=1e-14)


specs = st.builds(AlgebraSpec, st.sampled_from(["odd", "even"]), st.integers(1, 6))
omegas = st.floats(-30, 30, allow_nan=False)


@settings(max_examples=80)
@given(specs, omegas)
def test_inverse_kernel_property(spec, w):
    K = kernel_matrix(spec)(w)
    R = inverse_kernel(spec)(w)
    assert np.max(np.abs(K @ R - np.eye(spec.n))) < 1e-12


@settings(max_examples=40)
@given(specs, st.floats(0.01, 15))
def test_lu_inverse_matches(spec, w):
    K = kernel_matrix(spec)(w)
    lu = scipy.linalg.lu_factor(K)
    R_lu = scipy.linalg.lu_solve(lu, np.eye(spec.n))
    assert np.max(np.abs(R_lu - inverse_kernel(spec)(w))) < 1e-10


@settings(max_examples=40)
@given(specs, st.floats(0.0, 30))
def test_kernels_even_in_omega(spec, w):
    assert np.array_equal(inverse_kernel(spec)(w), inverse_kernel(spec)(-w))


def test_no_overflow_at_large_omega():
    for p in ("odd", "even"):
        R = inverse_kernel(AlgebraSpec(p, 6))(np.array([500.0, 5000.0]))
        assert np.all(np.isfinite(R))


@pytest.mark.parametrize("n", range(1, 7))
def test_odd_density_closed_form(n):
    s = AlgebraSpec("odd", n)
    w = np.linspace(-10, 10, 41)
    for j in range(1, n + 1):
        t = np.abs(w) / 2
        closed = np.cosh((n + 0.5 - j) * t) / np.cosh((n + 0.5) * t)
        assert np.max(np.abs(ground_state_density(s, j)(w) - closed)) < 1e-12
        assert np.max(np.abs(hole_energy(s, j)(w) - closed)) < 1e-12


@pytest.mark.parametrize("n", range(2, 7))
def test_even_last_sea_energy_closed_form(n):
    s = AlgebraSpec("even", n)
    w = np.linspace(-10, 10, 41)
    closed = 1 / (2 * np.cosh(n * np.abs(w) / 2))
    assert np.max(np.abs(hole_energy(s, n)(w) - closed)) < 1e-12
    assert np.max(np.abs(energy_closed_form(s, n)(w) - closed)) < 1e-12


def test_even_last_sea_density_is_twice_energy():
    # the matrix route sigma_n = RR_n1 a_1 equals 1/cosh(n w/2), twice the hole energy
    s = AlgebraSpec("even", 3)
    w = np.linspace(-5, 5, 11)
    assert np.allclose(ground_state_density(s, 3)(w), 2 * hole_energy(s, 3)(w), atol=1e-13)
    with pytest.raises(ContractError):
        density_closed_form(s, 3)


def test_density_routes_agree():
    s = AlgebraSpec("even", 4)
    w = np.linspace(-8, 8, 33)
    for j in range(1, 4):
        assert np.max(np.abs(ground_state_density(s, j, "matrix")(w) - ground_state_density(s, j, "closed")(w))) < 1e-12


def test_hole_config_validation():
    with pytest.raises(ContractError):
        HoleConfig(1, (float("nan"),))
    with pytest.raises(InvalidIndexError):
        source_vectors(AlgebraSpec("odd", 2), [HoleConfig(3, (0.1,))])


def test_hole_correction_carries_cosine_factor():
    s = AlgebraSpec("odd", 2)
    w = np.linspace(-4, 4, 9)
    lam_h = 0.7
    r1, r2 = density_corrections(s, [HoleConfig(1, (lam_h,))])
    per_hole = hole_r2(s, 1)(w)
    assert np.allclose(r2[0](w), 2 * np.cos(w * lam_h) * per_hole, atol=1e-13)
