import numpy as np
import pytest

from twisted_yangian.errors import ContractError
from twisted_yangian.kernels import AlgebraSpec
from twisted_yangian.scattering import (
    DefectSpec,
    amplitude,
    boundary_phase,
    bulk_channel,
    bulk_closed_form,
    bulk_components,
    bulk_phase,
    transmission_phase,
)

W_HALF = 2 * np.log(2)
W = np.concatenate([-np.geomspace(1e-3, 20, 30), [0.0], np.geomspace(1e-3, 20, 30)])


def test_bulk_spot_value_sl3():
    assert bulk_phase(AlgebraSpec.from_N(3)).fn(W_HALF) == pytest.approx(-1 / 3, abs=1e-15)
    assert bulk_closed_form(3)(W_HALF) == pytest.approx(-1 / 3, abs=1e-15)


@pytest.mark.parametrize("N", range(3, 9))
def test_bulk_matrix_route_equals_closed_form(N):
    spec = AlgebraSpec.from_N(N)
    assert np.max(np.abs(bulk_phase(spec).fn(W) - bulk_closed_form(N)(W))) < 1e-13


def test_bulk_sl2_routes_differ_by_constant():
    # x = exp(-|w|/2): matrix route x^2/(1+x^2), closed form (x^2-1)/(1+x^2)
    x = 0.5
    assert bulk_phase(AlgebraSpec.from_N(2)).fn(W_HALF) == pytest.approx(x * x / (1 + x * x), abs=1e-15)
    assert bulk_closed_form(2)(W_HALF) == pytest.approx((x * x - 1) / (1 + x * x), abs=1e-15)


@pytest.mark.parametrize("N", range(2, 9))
def test_bulk_factorises(N):
    bs, bsb = bulk_components(N)
    assert np.max(np.abs(bs(W) + bsb(W) - bulk_closed_form(N)(W))) < 1e-13


def test_literal_components_agree_for_positive_omega():
    bs, bsb = bulk_components(5)
    ls, lsb = bulk_components(5, literal=True)
    w = np.geomspace(1e-2, 10, 20)
    assert np.allclose(bs(w), ls(w), atol=1e-13)
    assert np.allclose(bsb(w), lsb(w), atol=1e-13)


def test_boundary_B2_sl3():
    # RR_11 (a_2 - a_1 - a_1/2) at exp(-|w|/2) = 1/2
    b = boundary_phase(AlgebraSpec("odd", 1))
    assert b.terms[0].fn(W_HALF) == pytest.approx(4 / 3 * (0.25 - 0.5 - 2 ** -0.5), abs=1e-14)
    assert [t.scale for t in b.terms] == [1.0, 2.0]


@pytest.mark.parametrize("N", [3, 4, 5, 6])
def test_trivial_defect_gives_zero_phase(N):
    d = transmission_phase(AlgebraSpec.from_N(N), DefectSpec(0.4, (0,) * N))
    assert d.degenerate
    assert np.max(np.abs(d.total.value(W))) == 0
    assert d.sum_residual(W) == 0


@pytest.mark.parametrize("N", [3, 5, 7])
def test_transmission_sum_odd_family(N):
    rng = np.random.default_rng(N)
    for _ in range(5):
        alpha = tuple(sorted(rng.integers(-2, 3, N), reverse=True))
        d = transmission_phase(AlgebraSpec.from_N(N), DefectSpec(rng.normal(), alpha))
        assert d.sum_residual(W) < 1e-12


@pytest.mark.parametrize("N", [3, 4, 5, 6])
def test_transmission_symmetry_routes(N):
    d = transmission_phase(AlgebraSpec.from_N(N), DefectSpec(0.2, (2, 1, 1) + (0,) * (N - 3)))
    assert d.symmetry_residual(W) < 1e-14


def test_transmission_contract_errors():
    with pytest.raises(ContractError):
        transmission_phase(AlgebraSpec.from_N(3), DefectSpec(0.0, (1, 0, 0, 0)))
    with pytest.raises(ContractError):
        transmission_phase(AlgebraSpec.from_N(3), DefectSpec(0.0, (1, 0, 0)), sea=2)


def test_amplitude_rejects_uneven_phase():
    d = transmission_phase(AlgebraSpec.from_N(3), DefectSpec(0.3, (2, 0, 0)))
    with pytest.raises(ContractError):
        amplitude(d.channels["T"], 0.5)
    amp = amplitude(d.channels["T"], 0.5, allow_odd=True)
    assert np.isfinite(amp.value)


@pytest.mark.parametrize("phase", [
    bulk_phase(AlgebraSpec.from_N(3)),
    bulk_channel(4, "SS"),
    bulk_channel(4, "SSbar"),
    boundary_phase(AlgebraSpec("even", 2)),
], ids=["bulk3", "SS4", "SSbar4", "boundary4"])
def test_amplitudes_unitary(phase):
    lam = np.linspace(-5, 5, 41)
    a = amplitude(phase, lam)
    b = amplitude(phase, -lam)
    assert np.max(np.abs(np.abs(a.value) - 1)) < 1e-7
    assert np.max(np.abs(a.value * b.value - 1)) < 1e-8


def test_transmission_unitary_about_shift():
    theta = 0.6
    d = transmission_phase(AlgebraSpec.from_N(5), DefectSpec(theta, (1, 0, 0, 0, 0)))
    lam = np.linspace(-5, 5, 21)
    for ch in d.channels.values():
        shift = ch.terms[0].shift
        a = amplitude(ch, shift + lam)
        b = amplitude(ch, shift - lam)
        assert np.max(np.abs(np.abs(a.value) - 1)) < 1e-7
        assert np.max(np.abs(a.value * b.value - 1)) < 1e-8


def test_scalar_amplitude_returns_scalars():
    a = amplitude(bulk_phase(AlgebraSpec.from_N(3)), 0.0)
    assert isinstance(a.value, complex)
    assert a.value == pytest.approx(1.0)
