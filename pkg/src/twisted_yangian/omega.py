"""Real functions of the Fourier variable with symmetry and w -> 0 metadata."""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number
from typing import Callable

import numpy as np

from .errors import ContractError

__all__ = ["OmegaFunction", "constant"]

_SYMMETRIES = ("even", "odd", "none")


def _sum_symmetry(a, b):
    return a if a == b else "none"


def _prod_symmetry(a, b):
    if "none" in (a, b):
        return "none"
    return "even" if a == b else "odd"


@dataclass(frozen=True)
class OmegaFunction:
    """A vectorised real function of ``omega``.

    ``zero_limit`` is the analytic ``omega -> 0`` value; it is substituted at
    ``omega == 0`` so evaluators never have to resolve ``0/0`` themselves.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    symmetry: str = "none"
    zero_limit: float = float("nan")
    name: str = ""

    def __post_init__(self):
        if self.symmetry not in _SYMMETRIES:
            raise ValueError(f"symmetry must be one of {_SYMMETRIES}")

    def __call__(self, omega):
        w = np.asarray(omega, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            out = np.asarray(self.evaluator(w), dtype=float)
        out = np.broadcast_to(out, w.shape).copy() if out.shape != w.shape else out
        if np.isfinite(self.zero_limit):
            out = np.where(w == 0, self.zero_limit, out)
        return out[()] if out.ndim == 0 else out

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, OmegaFunction):
            return other
        if isinstance(other, Number):
            c = float(other)
            return OmegaFunction(lambda w, c=c: np.full(np.shape(w), c), "even", c, repr(c))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return OmegaFunction(
            lambda w, f=self, g=other: f(w) + g(w),
            _sum_symmetry(self.symmetry, other.symmetry),
            self.zero_limit + other.zero_limit,
            f"({self.name} + {other.name})",
        )

    __radd__ = __add__

    def __neg__(self):
        return OmegaFunction(lambda w, f=self: -f(w), self.symmetry, -self.zero_limit, f"-{self.name}")

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return OmegaFunction(
            lambda w, f=self, g=other: f(w) * g(w),
            _prod_symmetry(self.symmetry, other.symmetry),
            self.zero_limit * other.zero_limit,
            f"{self.name}*{other.name}",
        )

    __rmul__ = __mul__

    def renamed(self, name):
        return OmegaFunction(self.evaluator, self.symmetry, self.zero_limit, name)

    # -- invariant checks ---------------------------------------------------

    def symmetry_defect(self, samples):
        """Largest violation of the declared symmetry on ``+-samples``."""
        s = np.abs(np.asarray(samples, dtype=float))
        if self.symmetry == "even":
            return float(np.max(np.abs(self(s) - self(-s))))
        if self.symmetry == "odd":
            return float(np.max(np.abs(self(s) + self(-s))))
        return 0.0

    def zero_limit_defect(self, eps=1e-6):
        vals = self.evaluator(np.array([eps, -eps]))
        return float(np.max(np.abs(vals - self.zero_limit)))

    def check(self, samples, tol=1e-12, eps=1e-6, zero_tol=1e-5):
        if self.symmetry_defect(samples) > tol:
            raise ContractError(f"{self.name or 'function'} is not {self.symmetry}")
        if not np.isfinite(self.zero_limit) or self.zero_limit_defect(eps) > zero_tol:
            raise ContractError(f"{self.name or 'function'}: zero_limit inconsistent with evaluator")


def constant(c, name=None):
    c = float(c)
    return OmegaFunction(lambda w: np.full(np.shape(w), c), "even", c, name or repr(c))
