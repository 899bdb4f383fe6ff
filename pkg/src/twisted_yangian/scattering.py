"""Scattering phases in Fourier space and the amplitudes they generate.

A phase is stored as a list of terms ``(fn, scale, shift)``; in the
amplitude exponent each term contributes

    PV int dw/w exp(-i w (scale * lam - shift)) fn(w)

so ``fn`` stays real and the defect rapidity only enters as a shift.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from .errors import ContractError, InvalidIndexError
from .kernels import AlgebraSpec, hole_r2, inverse_kernel, source_vectors, yangian_inverse_entry
from .omega import OmegaFunction, constant
from .pv import PVQuadrature
from .special import WeightVector, defect_poles, eval_two_pole_hat

__all__ = [
    "DefectSpec",
    "PhaseTerm",
    "PhaseDensity",
    "PhaseDecomposition",
    "Amplitude",
    "bulk_phase",
    "bulk_closed_form",
    "bulk_components",
    "boundary_phase",
    "Y_hat",
    "transmission_phase",
    "amplitude",
]

CHANNELS = (
    "bulk_full", "bulk_SS", "bulk_SSbar", "boundary",
    "trans_full", "trans_T", "trans_Tbar", "trans_Tstar", "trans_Tbarstar",
)


@dataclass(frozen=True)
class DefectSpec:
    theta: float
    alpha: WeightVector

    def __post_init__(self):
        object.__setattr__(self, "alpha", WeightVector(self.alpha))
        object.__setattr__(self, "theta", float(self.theta))

    @property
    def N(self):
        return self.alpha.N

    def is_trivial(self):
        return len(set(self.alpha)) == 1


@dataclass(frozen=True)
class PhaseTerm:
    fn: OmegaFunction
    scale: float = 1.0
    shift: float = 0.0


@dataclass(frozen=True)
class PhaseDensity:
    channel: str
    terms: tuple
    defect: DefectSpec | None = None
    degenerate: bool = False

    def __post_init__(self):
        if self.channel not in CHANNELS:
            raise ValueError(f"unknown channel {self.channel!r}")
        for t in self.terms:
            if not np.isfinite(t.fn.zero_limit):
                raise ContractError(f"{self.channel}: phase density without a finite omega -> 0 limit")

    @property
    def fn(self):
        """The real omega-function of a single-term phase."""
        if len(self.terms) != 1:
            raise ContractError(f"{self.channel} has {len(self.terms)} terms; use .terms")
        return self.terms[0].fn

    def value(self, omega):
        """``B(w)`` including its ``exp(i w shift)`` factors (lambda-independent part)."""
        w = np.asarray(omega, dtype=float)
        out = np.zeros(w.shape, dtype=complex)
        for t in self.terms:
            out = out + t.fn(w) * np.exp(1j * w * t.shift)
        return out[()] if out.ndim == 0 else out

    def is_even(self, samples=None):
        s = np.geomspace(1e-3, 40.0, 60) if samples is None else samples
        return all(t.fn.symmetry == "even" or float(np.max(np.abs(t.fn(s) - t.fn(-s)))) < 1e-14 for t in self.terms)


@dataclass(frozen=True)
class PhaseDecomposition:
    total: PhaseDensity
    channels: Dict[str, PhaseDensity]
    symmetric_routes: Dict[str, PhaseDensity] = field(default_factory=dict)
    degenerate: bool = False

    def sum_residual(self, omega):
        tot = self.total.value(omega)
        parts = sum(c.value(omega) for c in self.channels.values())
        return float(np.max(np.abs(tot - parts)))

    def symmetry_residual(self, omega):
        worst = 0.0
        for name, alt in self.symmetric_routes.items():
            worst = max(worst, float(np.max(np.abs(self.channels[name].value(omega) - alt.value(omega)))))
        return worst


@dataclass(frozen=True)
class Amplitude:
    lam: np.ndarray
    value: np.ndarray
    quadrature_error: np.ndarray


# -- bulk ---------------------------------------------------------------------


def bulk_phase(spec: AlgebraSpec) -> PhaseDensity:
    """Two holes in sea 1: ``B_S = sum_i RR_1i f_i`` with the per-hole sea-1 source.

    For odd ``n = 1`` this is ``RR_11 (a_2 - a_1)``; for even ``n = 2`` the
    sea-2 neighbour carries the doubled coupling, ``RR_11 a_2 - 2 a_1 RR_12``.
    """
    return PhaseDensity("bulk_full", (PhaseTerm(hole_r2(spec, 1).renamed("B_bulk")),))


def bulk_closed_form(N) -> OmegaFunction:
    """Universal closed form, evaluated at ``|w|``."""
    N = int(N)

    def ev(w):
        u = np.abs(w)
        return -np.exp(-u * (0.5 * N - 1.0)) * (-np.expm1(-u)) / (1.0 + np.exp(-0.5 * N * u))

    return OmegaFunction(ev, "even", 0.0, f"B_bulk_closed[N={N}]")


def _literal_components(N):
    def bs(w):
        return (np.exp(-w * (0.5 * N - 1.0)) - np.exp(-0.5 * N * w)) / (2.0 * np.sinh(0.5 * N * w))

    def bsb(w):
        return (1.0 - np.exp(w)) / (2.0 * np.sinh(0.5 * N * w))

    return (OmegaFunction(bs, "none", 1.0 / N, "B_S_literal"),
            OmegaFunction(bsb, "none", -1.0 / N, "B_Sbar_literal"))


def bulk_components(N, literal=False):
    """``(B_S, B_Sbar)`` of the gl(N) chain.

    Default: the ``w > 0`` expressions extended evenly.  With
    ``literal=True`` the bare ``exp(w)`` forms are returned unsymmetrised.
    """
    N = int(N)
    if N < 2:
        raise InvalidIndexError("N must be at least 2")
    if literal:
        return _literal_components(N)

    def bs(w):
        u = np.abs(w)
        return np.exp(-u * (N - 1.0)) * (-np.expm1(-u)) / (-np.expm1(-N * u))

    def bsb(w):
        u = np.abs(w)
        return -np.exp(-u * (0.5 * N - 1.0)) * (-np.expm1(-u)) / (-np.expm1(-N * u))

    return (OmegaFunction(bs, "even", 1.0 / N, f"B_S[N={N}]"),
            OmegaFunction(bsb, "even", -1.0 / N, f"B_Sbar[N={N}]"))


def bulk_channel(N, which):
    bs, bsb = bulk_components(N)
    if which == "SS":
        return PhaseDensity("bulk_SS", (PhaseTerm(bs),))
    if which == "SSbar":
        return PhaseDensity("bulk_SSbar", (PhaseTerm(bsb),))
    raise ValueError("which must be 'SS' or 'SSbar'")


# -- boundary -------------------------------------------------------------------


def boundary_phase(spec: AlgebraSpec) -> PhaseDensity:
    """``K0+ K0-``: ``B_2`` at the hole rapidity plus ``B_1`` at twice it.

    ``B_2 = sum_i F1_i RR_1i`` with the family's boundary source vector.
    """
    R = inverse_kernel(spec)
    F1, _ = source_vectors(spec)
    b2 = R.entry(1, 1) * F1[0]
    for i in range(2, spec.n + 1):
        b2 = b2 + R.entry(1, i) * F1[i - 1]
    b1 = bulk_phase(spec).fn
    return PhaseDensity("boundary", (PhaseTerm(b2.renamed("B_2"), 1.0), PhaseTerm(b1, 2.0)))


# -- transmission ---------------------------------------------------------------


def Y_hat(sign, k, alpha, zero="principal", reflect=False) -> OmegaFunction:
    """``Y_k^{sign}`` in Fourier space; ``reflect`` gives ``w -> -w``."""
    x, y = defect_poles(sign, k, alpha)
    if x == y:
        return constant(0.0, f"Y{sign}{k}=0")
    s = -1.0 if reflect else 1.0

    def ev(w, x=x, y=y):
        return eval_two_pole_hat(x, y, s * np.asarray(w), zero)

    sym = "even" if x == -y else "none"
    z = float(eval_two_pole_hat(x, y, 0.0, zero))
    return OmegaFunction(ev, sym, z, f"Y{sign}{k}")


def _channel(name, pieces, shift, defect):
    fn = constant(0.0)
    for p in pieces:
        fn = fn + p
    return PhaseDensity(name, (PhaseTerm(fn, 1.0, shift),), defect)


def transmission_phase(spec: AlgebraSpec, defect: DefectSpec, sea=1, zero="principal") -> PhaseDecomposition:
    """Global defect phase ``B_TT`` and its four channels for a hole in sea 1."""
    if sea != 1:
        raise ContractError("transmission phases are only available for a hole in sea 1")
    N = spec.N
    if defect.N != N:
        raise ContractError(f"defect has N={defect.N}, algebra has N={N}")
    n, th, al = spec.n, defect.theta, defect.alpha
    RR = inverse_kernel(spec)
    ks = range(1, n + 1)
    Yp = {k: Y_hat("+", k, al, zero) for k in ks}
    Ym = {k: Y_hat("-", k, al, zero) for k in ks}
    R1 = {k: yangian_inverse_entry(N, 1, k) for k in ks}
    RN = {k: yangian_inverse_entry(N, N - 1, k) for k in ks}

    total = PhaseDensity(
        "trans_full",
        (PhaseTerm(sum((RR.entry(1, k) * Yp[k] for k in ks), constant(0.0)), 1.0, th),
         PhaseTerm(sum((RR.entry(1, k) * Ym[k] for k in ks), constant(0.0)), 1.0, -th)),
        defect,
    )
    channels = {
        "T": _channel("trans_T", [R1[k] * Yp[k] for k in ks], th, defect),
        "Tbar": _channel("trans_Tbar", [R1[k] * Ym[k] for k in ks], -th, defect),
        "Tstar": _channel("trans_Tstar", [RN[k] * Yp[k] for k in ks], th, defect),
        "Tbarstar": _channel("trans_Tbarstar", [RN[k] * Ym[k] for k in ks], -th, defect),
    }
    # reflected route: R_{N-1,k} = R_{1,N-k} and Y_k^+(w) = Y_{N-k}^-(-w)
    routes = {
        "Tstar": _channel(
            "trans_Tstar",
            [yangian_inverse_entry(N, 1, N - k) * Y_hat("-", N - k, al, zero, reflect=True) for k in ks],
            th, defect),
        "Tbarstar": _channel(
            "trans_Tbarstar",
            [yangian_inverse_entry(N, 1, N - k) * Y_hat("+", N - k, al, zero, reflect=True) for k in ks],
            -th, defect),
    }
    degenerate = all(defect_poles(s, k, al)[0] == defect_poles(s, k, al)[1] for s in "+-" for k in ks)
    if degenerate:
        total = PhaseDensity("trans_full", total.terms, defect, degenerate=True)
    return PhaseDecomposition(total, channels, routes, degenerate)


# -- amplitudes -----------------------------------------------------------------


def amplitude(phase: PhaseDensity, lam, quadrature: PVQuadrature | None = None, allow_odd=False) -> Amplitude:
    """``exp(-PV int dw/w exp(-i w lam) B(w))`` for real ``lam`` (scalar or array).

    Phases with a non-even term are rejected unless ``allow_odd``; their odd
    part then enters through the cosine integral and the result is in
    general not unimodular.
    """
    q = quadrature or PVQuadrature()
    if not allow_odd and not phase.is_even():
        raise ContractError(f"{phase.channel}: phase density is not even")
    lam_arr = np.atleast_1d(np.asarray(lam, dtype=float))
    expo = np.zeros(lam_arr.shape, dtype=complex)
    err = np.zeros(lam_arr.shape)
    for t in phase.terms:
        mu = t.scale * lam_arr - t.shift
        I, e = q.exponent(t.fn, mu)
        expo += I
        err += e
    value = np.exp(-expo)
    err = np.abs(value) * err
    if np.ndim(lam) == 0:
        return Amplitude(float(lam_arr[0]), complex(value[0]), float(err[0]))
    return Amplitude(lam_arr, value, err)
