"""Fourier-space kernels, inverse kernels, densities and hole energies.

All exponentials of the form ``exp(c |w| / 2)`` are folded into ratios of
``1 - exp(-c |w|)`` so that entries stay finite for arbitrarily large
``|w|``.  Every returned :class:`OmegaFunction` carries its ``w -> 0`` limit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ContractError, InvalidIndexError
from .omega import OmegaFunction, constant
from .special import eval_a_hat

__all__ = [
    "AlgebraSpec",
    "KernelMatrix",
    "HoleConfig",
    "QuantumNumbers",
    "a_hat",
    "kernel_matrix",
    "inverse_kernel",
    "yangian_inverse_entry",
    "yangian_inverse_kernel",
    "source_vectors",
    "hole_r2",
    "ground_state_density",
    "density_closed_form",
    "hole_energy",
    "energy_closed_form",
    "density_corrections",
    "full_density",
]


@dataclass(frozen=True)
class AlgebraSpec:
    """``parity="odd"`` is sl(2n+1), ``parity="even"`` is sl(2n)."""

    parity: str
    n: int

    def __post_init__(self):
        if self.parity not in ("odd", "even"):
            raise ContractError(f"parity must be 'odd' or 'even', got {self.parity!r}")
        if int(self.n) != self.n or self.n < 1:
            raise ContractError(f"n must be a positive integer, got {self.n!r}")

    @property
    def N(self):
        return 2 * self.n + 1 if self.parity == "odd" else 2 * self.n

    @classmethod
    def from_N(cls, N):
        N = int(N)
        if N < 2:
            raise ContractError("N must be at least 2")
        return cls("odd", (N - 1) // 2) if N % 2 else cls("even", N // 2)

    def __str__(self):
        return f"sl({self.N}) [{self.parity}, n={self.n}]"


# -- elementary omega-space pieces ------------------------------------------


def _t(w):
    return 0.5 * np.abs(w)


def _one_minus(c, t):
    return -np.expm1(-2.0 * c * t)


def _one_plus(c, t):
    return 1.0 + np.exp(-2.0 * c * t)


def _sinh_ratio(c, t):
    """``exp(-(c-1) t) sinh(c t) / sinh(t)`` with its t = 0 value ``c``."""
    with np.errstate(invalid="ignore", divide="ignore"):
        out = _one_minus(c, t) / _one_minus(1.0, t)
    return np.where(t == 0, float(c), out)


def a_hat(n):
    """``a_hat_n`` as an :class:`OmegaFunction` (honours fault injection)."""
    return OmegaFunction(lambda w, n=n: eval_a_hat(n, w), "even", 1.0, f"a{n:g}")


def _check_index(spec, j, name="j"):
    if not 1 <= j <= spec.n:
        raise InvalidIndexError(f"{name}={j} outside 1..{spec.n}")


@dataclass(frozen=True)
class KernelMatrix:
    spec: AlgebraSpec
    entries: tuple = field(repr=False)

    def __post_init__(self):
        n = self.spec.n
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ContractError("kernel matrix must be n x n")

    def entry(self, i, j):
        """1-based entry."""
        _check_index(self.spec, i, "i")
        _check_index(self.spec, j, "j")
        return self.entries[i - 1][j - 1]

    def __call__(self, omega):
        w = np.asarray(omega, dtype=float)
        n = self.spec.n
        out = np.empty(w.shape + (n, n))
        for i in range(n):
            for j in range(n):
                out[..., i, j] = self.entries[i][j](w)
        return out


def kernel_matrix(spec: AlgebraSpec) -> KernelMatrix:
    n = spec.n
    a1, a2 = a_hat(1), a_hat(2)
    zero = constant(0.0)
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            f = zero
            if i == j:
                f = 1.0 + a2
                if spec.parity == "odd" and i == n:
                    f = f - a1
            if abs(i - j) == 1:
                f = f - a1
            if spec.parity == "even" and i == n and j == n - 1:
                f = f - a1
            row.append(f.renamed(f"K{i}{j}"))
        rows.append(tuple(row))
    return KernelMatrix(spec, tuple(rows))


def _inverse_entry(spec, i, j):
    n = spec.n
    m, M = min(i, j), max(i, j)
    if spec.parity == "odd":
        b = n + 0.5
        scale, limit = 1.0, float(m)
    else:
        b = float(n)
        scale = 0.5 if j == n else 1.0
        limit = m * scale

    def ev(w, m=m, M=M, b=b, scale=scale):
        t = _t(w)
        return scale * np.exp((m - M) * t) * _sinh_ratio(m, t) * _one_plus(b - M, t) / _one_plus(b, t)

    return OmegaFunction(ev, "even", limit, f"RR{i}{j}")


def inverse_kernel(spec: AlgebraSpec) -> KernelMatrix:
    """Closed-form inverse of :func:`kernel_matrix` (``exp(|w|/2)`` prefactor)."""
    n = spec.n
    rows = tuple(tuple(_inverse_entry(spec, i, j) for j in range(1, n + 1)) for i in range(1, n + 1))
    return KernelMatrix(spec, rows)


def yangian_inverse_entry(N, i, j) -> OmegaFunction:
    """Inverse kernel of the gl(N) Yangian chain, ``1 <= i, j <= N-1``."""
    N = int(N)
    if N < 2:
        raise InvalidIndexError("N must be at least 2")
    if not (1 <= i <= N - 1 and 1 <= j <= N - 1):
        raise InvalidIndexError(f"indices ({i}, {j}) outside 1..{N - 1}")
    m, M = min(i, j), max(i, j)

    def ev(w, m=m, M=M):
        t = _t(w)
        return np.exp((m - M) * t) * _sinh_ratio(m, t) * _sinh_ratio(N - M, t) / _sinh_ratio(N, t)

    return OmegaFunction(ev, "even", m * (N - M) / N, f"R{i}{j}")


def yangian_inverse_kernel(N):
    """Return ``f(i, j, omega)`` evaluating the gl(N) inverse kernel."""

    def f(i, j, omega):
        return yangian_inverse_entry(N, i, j)(omega)

    return f


# -- sources, densities, energies -------------------------------------------


@dataclass(frozen=True)
class HoleConfig:
    sea: int
    rapidities: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "rapidities", tuple(float(x) for x in self.rapidities))
        if not all(np.isfinite(self.rapidities)):
            raise ContractError("hole rapidities must be finite")

    @property
    def count(self):
        return len(self.rapidities)


@dataclass(frozen=True)
class QuantumNumbers:
    """Level occupations ``M^(1..n)`` and chain length ``L`` (``M^(0) = 2L``)."""

    M: tuple
    L: int

    def __post_init__(self):
        object.__setattr__(self, "M", tuple(int(m) for m in self.M))
        if any(m < 0 for m in self.M) or self.L < 1:
            raise ContractError("occupations must be nonnegative and L >= 1")

    @property
    def S(self):
        full = (2 * self.L,) + self.M
        vals = [0.5 * full[0] - full[1]]
        vals += [full[l - 1] - full[l] for l in range(2, len(full))]
        return tuple(vals)


def _cos_sum(rapidities):
    lams = np.asarray(rapidities, dtype=float)

    def ev(w):
        w = np.asarray(w, dtype=float)
        return np.cos(np.multiply.outer(w, lams)).sum(axis=-1)

    return OmegaFunction(ev, "even", float(len(lams)), "C")


def _hole_sums(spec, holes):
    per_sea = {k: [] for k in range(1, spec.n + 1)}
    for h in holes:
        _check_index(spec, h.sea, "sea")
        per_sea[h.sea].extend(h.rapidities)
    return {k: _cos_sum(v) for k, v in per_sea.items()}


def source_vectors(spec: AlgebraSpec, holes: Sequence[HoleConfig] = ()):
    """Return ``(F1, F2)`` as lists of :class:`OmegaFunction` (index 0 = sea 1)."""
    n = spec.n
    a1, a2, ah = a_hat(1), a_hat(2), a_hat(0.5)
    C = _hole_sums(spec, holes)
    zero = constant(0.0)
    F1, F2 = [], []
    for i in range(1, n + 1):
        if spec.parity == "odd":
            f1 = a2 - 2.0 * a1
            if i == 1:
                f1 = f1 + a1
            if i == n:
                f1 = f1 - ah
            f2 = 2.0 * (a2 - a1 if i == n else a2) * C[i]
            for k in (i - 1, i + 1):
                if 1 <= k <= n:
                    f2 = f2 - 2.0 * a1 * C[k]
        else:
            f1 = a2 - (2.0 - (i == 1) + (i == n)) * a1
            f2 = 2.0 * a2 * C[i]
            if i + 1 <= n:
                f2 = f2 - 2.0 * a1 * C[i + 1]
            if i - 1 >= 1:
                f2 = f2 - 2.0 * (2.0 if i == n else 1.0) * a1 * C[i - 1]
        F1.append(f1.renamed(f"F1_{i}"))
        F2.append((f2 if holes else zero).renamed(f"F2_{i}"))
    return F1, F2


def hole_r2(spec: AlgebraSpec, j: int) -> OmegaFunction:
    """``r_j^(2)`` for a single hole in sea ``j`` (per-hole, cosine factor stripped).

    Rules are tried in the order: last sea, even-family sea ``n-1``, first
    sea, middle sea.  Terms referring to sea 0 or ``n+1`` are absent.
    """
    _check_index(spec, j)
    n = spec.n
    R = inverse_kernel(spec)
    a1, a2 = a_hat(1), a_hat(2)

    def r(k):
        return R.entry(1, k) if 1 <= k <= n else None

    def minus_a1(acc, k, weight=1.0):
        rk = r(k)
        return acc if rk is None else acc - weight * a1 * rk

    if j == n:
        acc = r(n) * (a2 - a1) if spec.parity == "odd" else r(n) * a2
        acc = minus_a1(acc, n - 1)
    elif spec.parity == "even" and j == n - 1:
        acc = r(n - 1) * a2
        acc = minus_a1(acc, n, 2.0)
        acc = minus_a1(acc, n - 2)
    elif j == 1:
        acc = minus_a1(r(1) * a2, 2)
    else:
        acc = minus_a1(minus_a1(r(j) * a2, j + 1), j - 1)
    return acc.renamed(f"r2_{j}")


def ground_state_density(spec: AlgebraSpec, j: int, route="matrix") -> OmegaFunction:
    """``sigma_j^(0)``; ``route="matrix"`` is ``RR_j1 a_hat_1``."""
    _check_index(spec, j)
    if route == "closed":
        return density_closed_form(spec, j)
    if route != "matrix":
        raise ValueError("route must be 'matrix' or 'closed'")
    return (inverse_kernel(spec).entry(j, 1) * a_hat(1)).renamed(f"sigma{j}")


def density_closed_form(spec: AlgebraSpec, j: int) -> OmegaFunction:
    """Cosh-ratio closed form of the density; none exists for the even family at j = n."""
    _check_index(spec, j)
    n = spec.n
    if spec.parity == "even" and j == n:
        raise ContractError("the even family has no cosh-ratio density at j = n (use the matrix route)")
    b = n + 0.5 if spec.parity == "odd" else float(n)

    def ev(w, b=b, j=j):
        t = _t(w)
        return np.exp(-j * t) * _one_plus(b - j, t) / _one_plus(b, t)

    return OmegaFunction(ev, "even", 1.0, f"sigma{j}_closed")


def hole_energy(spec: AlgebraSpec, j: int, route="hole") -> OmegaFunction:
    """``eps^(j) = -a_hat_1 r_j^(2) + a_hat_1 delta_j1`` (``route="hole"``)."""
    _check_index(spec, j)
    if route == "closed":
        return energy_closed_form(spec, j)
    if route != "hole":
        raise ValueError("route must be 'hole' or 'closed'")
    a1 = a_hat(1)
    eps = -(a1 * hole_r2(spec, j))
    if j == 1:
        eps = eps + a1
    return eps.renamed(f"eps{j}")


def energy_closed_form(spec: AlgebraSpec, j: int) -> OmegaFunction:
    _check_index(spec, j)
    n = spec.n
    if spec.parity == "even" and j == n:
        def ev(w, n=n):
            t = _t(w)
            return np.exp(-n * t) / _one_plus(n, t)

        return OmegaFunction(ev, "even", 0.5, f"eps{j}_closed")
    return density_closed_form(spec, j).renamed(f"eps{j}_closed")


def density_corrections(spec: AlgebraSpec, holes: Sequence[HoleConfig] = ()):
    """``(r1, r2) = (RR F1, RR F2)`` as lists indexed by sea."""
    R = inverse_kernel(spec)
    F1, F2 = source_vectors(spec, holes)
    n = spec.n

    def apply(F):
        out = []
        for i in range(1, n + 1):
            acc = R.entry(i, 1) * F[0]
            for k in range(2, n + 1):
                acc = acc + R.entry(i, k) * F[k - 1]
            out.append(acc)
        return out

    return apply(F1), apply(F2)


def full_density(spec: AlgebraSpec, L, holes: Sequence[HoleConfig] = ()):
    """``sigma = sigma^(0) + (r1 + r2) / L`` for every sea."""
    if L < 1:
        raise ContractError("L must be >= 1")
    r1, r2 = density_corrections(spec, holes)
    return [
        (ground_state_density(spec, i + 1) + (1.0 / L) * (r1[i] + r2[i])).renamed(f"sigma{i + 1}_L")
        for i in range(spec.n)
    ]
