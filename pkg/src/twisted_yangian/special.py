"""Scalar building blocks of the Bethe equations and their Fourier transforms.

Conventions
-----------
Fourier transforms are taken as ``f_hat(w) = int dl exp(i w l) f(l)``.

* ``e_n(l) = (l + i n/2) / (l - i n/2)``
* ``a_n(l) = (i / 2 pi) d/dl log e_n(l) = n / (2 pi (l^2 + n^2/4))``
* ``a_hat_n(w) = exp(-n |w| / 2)``
* ``a(x, y; l) = (i / 2 pi) (1/(l + i x) - 1/(l + i y))``, complex in general.

The defect factors ``X_k^{+-}`` are ratios ``(l + i x) / (l + i y)`` and
``Y_k^{+-}`` are their logarithmic derivatives, i.e. two-pole functions.
"""

from __future__ import annotations

import contextlib
import contextvars
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DegeneratePairError, InvalidIndexError, PoleError

__all__ = [
    "WeightVector",
    "eval_e",
    "eval_a",
    "eval_a_hat",
    "phase",
    "phase_derivative",
    "eval_two_pole",
    "eval_two_pole_hat",
    "single_pole_hat",
    "defect_poles",
    "eval_X",
    "eval_X_plus",
    "eval_X_minus",
    "eval_Y",
    "eval_Y_hat",
    "perturbed_a_hat",
]

ZERO_CONVENTIONS = ("principal", "plus", "minus")

# test-only relative perturbation of a_hat_1 (see perturbed_a_hat)
_A1_PERTURBATION = contextvars.ContextVar("a1_perturbation", default=0.0)


@contextlib.contextmanager
def perturbed_a_hat(eps):
    """Scale ``a_hat_1`` by ``1 + eps`` inside the block (fault injection)."""
    token = _A1_PERTURBATION.set(float(eps))
    try:
        yield
    finally:
        _A1_PERTURBATION.reset(token)


def _index(n, allow_zero=False):
    frac = Fraction(n).limit_denominator(1000)
    if frac.denominator not in (1, 2) or abs(float(frac) - float(n)) > 1e-12:
        raise InvalidIndexError(f"index must be an integer or half-integer, got {n!r}")
    if frac == 0 and not allow_zero:
        raise InvalidIndexError("index n = 0 is not allowed")
    return float(frac)


def eval_e(n, lam):
    """``e_n(lam)``; unimodular for real ``lam``."""
    n = _index(n)
    lam = np.asarray(lam, dtype=complex)
    den = lam - 0.5j * n
    if np.any(den == 0):
        raise PoleError(f"e_{n:g} evaluated at its pole")
    out = (lam + 0.5j * n) / den
    return out[()] if out.ndim == 0 else out


def eval_a(n, lam):
    n = _index(n)
    lam = np.asarray(lam, dtype=float)
    out = n / (2.0 * np.pi * (lam ** 2 + 0.25 * n * n))
    return out[()] if out.ndim == 0 else out


def eval_a_hat(n, omega):
    """``exp(-n |omega| / 2)``.  Negative ``n`` gives a growing function."""
    n = _index(n)
    omega = np.asarray(omega, dtype=float)
    out = np.exp(-0.5 * n * np.abs(omega))
    eps = _A1_PERTURBATION.get()
    if eps and n == 1.0:
        out = out * (1.0 + eps)
    return out[()] if out.ndim == 0 else out


def phase(n, lam):
    """Continuous phase ``2 arctan(2 lam / n)``, odd in ``lam``.

    For real ``lam``, ``e_n(lam) = -exp(-i * phase(n, lam))``; the identity
    also holds at ``lam = 0`` where ``e_n(0) = -1``.
    """
    n = _index(n)
    return 2.0 * np.arctan(2.0 * np.asarray(lam, dtype=float) / n)


def phase_derivative(n, lam):
    """d/dlam of :func:`phase`; equals ``2 pi a_n(lam)``."""
    n = _index(n)
    lam = np.asarray(lam, dtype=float)
    return n / (lam ** 2 + 0.25 * n * n)


def eval_two_pole(x, y, lam):
    """Complex two-pole function ``a(x, y; lam)``.

    ``a(n/2, -n/2; lam) == a_n(lam)``; for other pairs the imaginary part
    ``(lam/(lam^2+x^2) - lam/(lam^2+y^2)) / 2 pi`` survives.
    """
    if x == y:
        raise DegeneratePairError(f"two-pole function with x == y == {x!r} vanishes identically")
    lam = np.asarray(lam, dtype=float)
    if (x == 0 and np.any(lam == 0)) or (y == 0 and np.any(lam == 0)):
        raise PoleError("two-pole function evaluated at a pole on the real axis")
    out = (1j / (2 * np.pi)) * (1.0 / (lam + 1j * x) - 1.0 / (lam + 1j * y))
    return out[()] if out.ndim == 0 else out


def single_pole_hat(x, omega, zero="principal"):
    """Fourier transform of ``(i / 2 pi) / (lam + i x)``.

    ``x > 0``: ``exp(w x)`` for ``w < 0``; ``x < 0``: ``-exp(w x)`` for ``w > 0``.
    At ``w = 0`` the mean of the one-sided limits is returned.  For ``x = 0``
    the pole sits on the real axis and ``zero`` selects the prescription:
    ``"plus"`` (x -> 0+), ``"minus"`` (x -> 0-) or ``"principal"`` (their mean,
    i.e. the principal-value transform ``-sign(w)/2``).
    """
    if zero not in ZERO_CONVENTIONS:
        raise ValueError(f"zero must be one of {ZERO_CONVENTIONS}")
    w = np.asarray(omega, dtype=float)
    neg = np.where(w < 0, 1.0, np.where(w == 0, 0.5, 0.0))
    pos = np.where(w > 0, 1.0, np.where(w == 0, 0.5, 0.0))
    if x > 0 or (x == 0 and zero == "plus"):
        out = np.exp(np.minimum(w * x, 0.0)) * neg
    elif x < 0 or (x == 0 and zero == "minus"):
        out = -np.exp(np.minimum(w * x, 0.0)) * pos
    else:
        out = -0.5 * np.sign(w)
    return out[()] if out.ndim == 0 else out


def eval_two_pole_hat(x, y, omega, zero="principal"):
    """Fourier transform of :func:`eval_two_pole` (real valued).

    Reproduces the three sign cases
    ``x > 0 > y``: ``exp(w x)`` (w < 0), ``exp(w y)`` (w > 0);
    ``x, y < 0``: ``exp(w y) - exp(w x)`` (w > 0), 0 (w < 0);
    ``x, y > 0``: ``exp(w x) - exp(w y)`` (w < 0), 0 (w > 0).
    """
    if x == y:
        raise DegeneratePairError(f"two-pole function with x == y == {x!r} vanishes identically")
    out = single_pole_hat(x, omega, zero) - single_pole_hat(y, omega, zero)
    return out


class WeightVector(tuple):
    """Highest-weight labels ``alpha_1 >= ... >= alpha_N`` (integers)."""

    def __new__(cls, alphas: Sequence[int]):
        alphas = tuple(int(a) for a in alphas)
        if len(alphas) < 2:
            raise InvalidIndexError("a weight vector needs at least two labels")
        if any(a < b for a, b in zip(alphas, alphas[1:])):
            raise InvalidIndexError(f"weights must be non-increasing, got {alphas}")
        return super().__new__(cls, alphas)

    @property
    def N(self):
        return len(self)

    @classmethod
    def fundamental(cls, N):
        return cls((1,) + (0,) * (N - 1))

    @classmethod
    def trivial(cls, N):
        return cls((0,) * N)


def defect_poles(sign, k, alpha):
    """Pole pair ``(x, y)`` with ``X_k^{sign}(lam) = (lam + i x) / (lam + i y)``."""
    alpha = WeightVector(alpha)
    N = alpha.N
    if not 1 <= k <= N - 1:
        raise InvalidIndexError(f"defect index k={k} outside 1..{N - 1}")
    if sign in ("+", +1):
        return alpha[k - 1] - 0.5 * k, alpha[k] - 0.5 * k
    if sign in ("-", -1):
        m = N - k
        return -alpha[m] + 0.5 * m, -alpha[m - 1] + 0.5 * m
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def eval_X(sign, k, alpha, lam):
    x, y = defect_poles(sign, k, alpha)
    lam = np.asarray(lam, dtype=complex)
    if x == y:
        out = np.ones_like(lam)
        return out[()] if out.ndim == 0 else out
    den = lam + 1j * y
    if np.any(den == 0):
        raise PoleError(f"X_{k}^{sign} evaluated at its pole lam = {-1j * y}")
    out = (lam + 1j * x) / den
    return out[()] if out.ndim == 0 else out


def eval_X_plus(k, alpha, lam):
    return eval_X("+", k, alpha, lam)


def eval_X_minus(k, alpha, lam):
    return eval_X("-", k, alpha, lam)


def eval_Y(sign, k, alpha, lam):
    """``Y_k^{sign}``: the two-pole function of the defect poles.

    A degenerate pair (``X == 1``) gives the zero function; use
    :func:`defect_poles` to detect that case explicitly.
    """
    x, y = defect_poles(sign, k, alpha)
    if x == y:
        out = np.zeros_like(np.asarray(lam, dtype=complex))
        return out[()] if out.ndim == 0 else out
    return eval_two_pole(x, y, lam)


def eval_Y_hat(sign, k, alpha, omega, zero="principal"):
    x, y = defect_poles(sign, k, alpha)
    if x == y:
        out = np.zeros_like(np.asarray(omega, dtype=float))
        return out[()] if out.ndim == 0 else out
    return eval_two_pole_hat(x, y, omega, zero)
