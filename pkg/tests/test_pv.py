import numpy as np
import pytest
from scipy import integrate

from twisted_yangian.errors import QuadratureError
from twisted_yangian.pv import PVQuadrature
from twisted_yangian.scattering import bulk_closed_form


def cauchy_oracle(f, mu, W=60.0):
    """PV int_{-W}^{W} dw/w exp(-i w mu) f(w) with QUADPACK's Cauchy weight."""
    re, _ = integrate.quad(lambda w: np.cos(w * mu) * f(w), -W, W, weight="cauchy", wvar=0.0, limit=400)
    im, _ = integrate.quad(lambda w: -np.sin(w * mu) * f(w), -W, W, weight="cauchy", wvar=0.0, limit=400)
    return re + 1j * im


@pytest.mark.parametrize("mu", [-2.0, 0.3, 1.0, 4.0])
def test_bulk_exponent_matches_cauchy_quadrature(mu):
    f = bulk_closed_form(3)
    val, err = PVQuadrature().exponent(f, mu)
    assert abs(val[0] - cauchy_oracle(f, mu)) < 1e-7
    assert err[0] < 1e-10


def test_mixed_parity_exponent_matches_cauchy_quadrature():
    def f(w):
        w = np.asarray(w, dtype=float)
        return np.exp(-np.abs(w)) + w * np.exp(-w * w)

    for mu in (-1.5, 0.0, 0.8):
        val, _ = PVQuadrature().exponent(f, mu)
        assert abs(val[0] - cauchy_oracle(f, mu, W=40.0)) < 1e-7


def test_step_halving_converged():
    f = bulk_closed_form(5)
    mu = np.linspace(-5, 5, 21)
    coarse, _ = PVQuadrature(h=0.5).exponent(f, mu)
    fine, _ = PVQuadrature(h=0.25).exponent(f, mu)
    assert np.max(np.abs(coarse - fine)) < 1e-8


def test_constant_tail_removed_analytically():
    def f(w):
        w = np.asarray(w, dtype=float)
        return -1.0 + np.exp(-np.abs(w))

    val, _ = PVQuadrature().exponent(f, np.array([1.0, -1.0]))
    # PV int sin(w mu)/w over the line gives pi sign(mu)
    ref = -2j * (integrate.quad(lambda w: np.sinc(w / np.pi) * np.exp(-w), 0, 60)[0] - 0.5 * np.pi)
    assert abs(val[0] - ref) < 1e-9
    assert abs(val[1] + ref) < 1e-9


def test_log_divergent_odd_part_rejected():
    with pytest.raises(QuadratureError):
        PVQuadrature().exponent(lambda w: np.sign(w) * np.exp(-np.abs(w)), 1.0)


def test_growing_density_rejected():
    with pytest.raises(QuadratureError):
        PVQuadrature().exponent(lambda w: np.cosh(np.asarray(w) * 0.0) * np.exp(np.abs(w) * 1e-3), 1.0)
