"""Dense realisation of the R-matrix, defect L-matrix and double-row transfer matrix.

Operators acting on ``aux (x) quantum`` are stored as block arrays of shape
``(N, N, D, D)``: block ``[a, b]`` is the quantum-space operator multiplying
``E_ab`` in the auxiliary space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import RepresentationError, SizeError

__all__ = [
    "unit",
    "permutation",
    "build_R",
    "DefectRep",
    "build_L_defect",
    "conjugate_L_transform",
    "conjugate_L_closed",
    "ybe_residual",
    "rll_residual",
    "monodromy",
    "build_transfer",
    "commutator_residual",
    "reference_state",
    "reference_eigen_residual",
    "MAX_DIM",
]

MAX_DIM = 256


def unit(N, i, j):
    e = np.zeros((N, N), dtype=complex)
    e[i, j] = 1.0
    return e


def permutation(N):
    P = np.zeros((N * N, N * N), dtype=complex)
    for i in range(N):
        for j in range(N):
            P += np.kron(unit(N, i, j), unit(N, j, i))
    return P


def build_R(N, lam):
    """``R(lam) = lam + i P`` on ``C^N (x) C^N``."""
    return lam * np.eye(N * N, dtype=complex) + 1j * permutation(N)


# -- representations ------------------------------------------------------------


def _symmetric_basis(N, m):
    return [c for c in itertools.product(range(m + 1), repeat=N) if sum(c) == m]


@dataclass(frozen=True)
class DefectRep:
    """gl(N) generators ``P[i, j]`` (0-based) acting on a ``dim``-dimensional space.

    ``P_ij`` is the image of ``E_ji`` so that the fundamental representation
    reproduces ``R``.  ``hw_index`` is the basis vector annihilated by every
    ``P_kl`` with ``k < l``.
    """

    N: int
    P: np.ndarray
    hw_index: int
    name: str = ""

    @property
    def dim(self):
        return self.P.shape[-1]

    @property
    def highest_weight(self):
        v = np.zeros(self.dim)
        v[self.hw_index] = 1.0
        return tuple(float(np.real(v @ self.P[k, k] @ v)) for k in range(self.N))

    @classmethod
    def fundamental(cls, N):
        P = np.zeros((N, N, N, N), dtype=complex)
        for i in range(N):
            for j in range(N):
                P[i, j] = unit(N, j, i)
        return cls(N, P, N - 1, "fundamental")

    @classmethod
    def trivial(cls, N):
        return cls(N, np.zeros((N, N, 1, 1), dtype=complex), 0, "trivial")

    @classmethod
    def symmetric(cls, N, m):
        """``m``-th symmetric power, ``E_ij -> x_i d/dx_j`` on degree-``m`` monomials."""
        if m < 0:
            raise RepresentationError("symmetric power must be nonnegative")
        if m == 0:
            return cls.trivial(N)
        basis = _symmetric_basis(N, m)
        index = {c: k for k, c in enumerate(basis)}
        d = len(basis)
        assert d == comb(N + m - 1, m)
        E = np.zeros((N, N, d, d), dtype=complex)
        for col, c in enumerate(basis):
            for i in range(N):
                for j in range(N):
                    if c[j] == 0:
                        continue
                    new = list(c)
                    new[j] -= 1
                    new[i] += 1
                    E[i, j, index[tuple(new)], col] += c[j]
        P = np.transpose(E, (1, 0, 2, 3)).copy()
        hw = index[tuple([0] * (N - 1) + [m])]
        return cls(N, P, hw, f"sym{m}")

    def commutation_residual(self):
        N, P = self.N, self.P
        worst = 0.0
        for i, j, k, l in itertools.product(range(N), repeat=4):
            lhs = P[i, j] @ P[k, l] - P[k, l] @ P[i, j]
            rhs = (i == l) * P[k, j] - (k == j) * P[i, l]
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        return worst

    def highest_weight_residual(self):
        v = np.zeros(self.dim, dtype=complex)
        v[self.hw_index] = 1.0
        worst = 0.0
        for k in range(self.N):
            for l in range(k + 1, self.N):
                worst = max(worst, float(np.max(np.abs(self.P[k, l] @ v))))
        return worst

    def validate(self, tol=1e-12):
        if self.commutation_residual() > tol:
            raise RepresentationError(f"{self.name}: generators violate the gl({self.N}) relations")
        if self.highest_weight_residual() > tol:
            raise RepresentationError(f"{self.name}: reference vector is not a highest-weight vector")
        return self


def _blocks_to_dense(B):
    N, _, D, _ = B.shape
    return B.transpose(0, 2, 1, 3).reshape(N * D, N * D)


def _dense_to_blocks(A, N):
    D = A.shape[0] // N
    return A.reshape(N, D, N, D).transpose(0, 2, 1, 3)


def build_L_defect(rep: DefectRep, lam):
    """``L(lam) = lam + i sum_ij e_ij (x) P_ij`` as a dense matrix on ``C^N (x) V``."""
    rep.validate()
    N, d = rep.N, rep.dim
    B = 1j * rep.P.astype(complex)
    B = B + lam * np.eye(N)[:, :, None, None] * np.eye(d)[None, None]
    return _blocks_to_dense(B)


def _V(N):
    return np.fliplr(np.eye(N))


def _conj_aux(A, N):
    """``V_1 A^{t_1} V_1`` for ``A`` on ``C^N (x) V``."""
    B = _dense_to_blocks(A, N).transpose(1, 0, 2, 3)
    B = B[::-1, ::-1]
    return _blocks_to_dense(np.ascontiguousarray(B))


def conjugate_L_transform(rep: DefectRep, lam):
    """``V_1 L^{t_1}(-lam - iN/2) V_1``."""
    return _conj_aux(build_L_defect(rep, -lam - 0.5j * rep.N), rep.N)


def conjugate_L_closed(rep: DefectRep, lam):
    """``lam + iN/2 - i Pbar`` with ``Pbar = V_1 P^{t_1} V_1``."""
    N, d = rep.N, rep.dim
    Pd = _blocks_to_dense(rep.P.astype(complex))
    Pbar = _conj_aux(Pd, N)
    return (lam + 0.5j * N) * np.eye(N * d) - 1j * Pbar


# -- structural checks ----------------------------------------------------------


def _embed3(op2, N, pair):
    """Embed a two-site operator on ``C^N`` into three sites at ``pair``."""
    I = np.eye(N)
    if pair == (0, 1):
        return np.kron(op2, I)
    if pair == (1, 2):
        return np.kron(I, op2)
    if pair == (0, 2):
        P = permutation(N)
        swap12 = np.kron(I, P)
        return swap12 @ np.kron(op2, I) @ swap12
    raise ValueError(pair)


def ybe_residual(N, lam, mu):
    lhs = (_embed3(build_R(N, lam - mu), N, (0, 1)) @ _embed3(build_R(N, lam), N, (0, 2))
           @ _embed3(build_R(N, mu), N, (1, 2)))
    rhs = (_embed3(build_R(N, mu), N, (1, 2)) @ _embed3(build_R(N, lam), N, (0, 2))
           @ _embed3(build_R(N, lam - mu), N, (0, 1)))
    return float(np.max(np.abs(lhs - rhs)))


def _aux_op(rep, lam, N, D, site_ops):
    """Block array of ``L_{0j}(lam)`` with generator images ``site_ops[a, b]`` (D x D)."""
    B = 1j * site_ops
    B = B + lam * np.eye(N)[:, :, None, None] * np.eye(D)[None, None]
    return B


def rll_residual(rep: DefectRep, lam, mu):
    """``R12(lam-mu) L13(lam) L23(mu) = L23(mu) L13(lam) R12(lam-mu)`` on ``C^N C^N V``."""
    N, d = rep.N, rep.dim
    I_N, I_d = np.eye(N), np.eye(d)
    R12 = np.kron(build_R(N, lam - mu), I_d)
    L23 = np.kron(I_N, build_L_defect(rep, mu))
    L13 = np.zeros((N * N * d,) * 2, dtype=complex)
    # L13 = lam + i sum e_ij (x) 1 (x) P_ij
    L13 += lam * np.eye(N * N * d)
    for i in range(N):
        for j in range(N):
            L13 += 1j * np.kron(np.kron(unit(N, i, j), I_N), rep.P[i, j])
    lhs = R12 @ L13 @ L23
    rhs = L23 @ L13 @ R12
    return float(np.max(np.abs(lhs - rhs)))


def _site_generators(dims, site, P):
    """``P[a, b]`` embedded at ``site`` of a tensor product with local ``dims``."""
    N = P.shape[0]
    before = int(np.prod(dims[:site])) if site else 1
    after = int(np.prod(dims[site + 1:])) if site + 1 < len(dims) else 1
    D = before * dims[site] * after
    out = np.empty((N, N, D, D), dtype=complex)
    Ib, Ia = np.eye(before), np.eye(after)
    for a in range(N):
        for b in range(N):
            out[a, b] = np.kron(np.kron(Ib, P[a, b]), Ia)
    return out


def _block_mul(A, B):
    return np.einsum("acij,cbjk->abik", A, B)


def _chain(N, L, defect, defect_site):
    fund = DefectRep.fundamental(N)
    reps = [fund] * L
    if defect is not None:
        if defect.N != N:
            raise RepresentationError("defect representation has the wrong rank")
        defect.validate()
        if not 1 <= defect_site <= L + 1:
            raise SizeError(f"defect site {defect_site} outside 1..{L + 1}")
        reps = reps[:defect_site - 1] + [defect] + reps[defect_site - 1:]
    dims = [r.dim for r in reps]
    D = int(np.prod(dims))
    if D > MAX_DIM or N ** len(reps) > MAX_DIM:
        raise SizeError(f"quantum space dimension {D} exceeds the guard {MAX_DIM}")
    return reps, dims, D


def monodromy(N, L, lam, defect: DefectRep | None = None, defect_site=1, theta=0.0):
    """Block array of ``T_0(lam) = R_{0,last} ... L_{0,site}(lam - theta) ... R_{01}``."""
    reps, dims, D = _chain(N, L, defect, defect_site)
    T = np.eye(N)[:, :, None, None] * np.eye(D)[None, None]
    T = T.astype(complex)
    for s, rep in enumerate(reps):
        shift = theta if (defect is not None and s == defect_site - 1) else 0.0
        ops = _site_generators(dims, s, rep.P)
        # left-multiply: the highest site is leftmost
        T = _block_mul(_aux_op(rep, lam - shift, N, D, ops), T)
    return T


def build_transfer(N, L, lam, defect: DefectRep | None = None, defect_site=1, theta=0.0):
    """``t(lam) = tr_0 T_0(lam) V_0 T_0^{t_0}(-lam - iN/2) V_0`` with ``K = 1``.

    ``L`` counts the fundamental sites; a defect adds one site at ``defect_site``.
    """
    T = monodromy(N, L, lam, defect, defect_site, theta)
    Tm = monodromy(N, L, -lam - 0.5j * N, defect, defect_site, theta)
    Tbar = Tm.transpose(1, 0, 2, 3)[::-1, ::-1]
    prod = _block_mul(T, np.ascontiguousarray(Tbar))
    return sum(prod[a, a] for a in range(N))


def commutator_residual(A, B):
    scale = max(np.linalg.norm(A) * np.linalg.norm(B), 1e-300)
    return float(np.linalg.norm(A @ B - B @ A) / scale)


def reference_state(N, L, defect: DefectRep | None = None, defect_site=1):
    reps, dims, D = _chain(N, L, defect, defect_site)
    v = np.ones(1, dtype=complex)
    for rep in reps:
        e = np.zeros(rep.dim, dtype=complex)
        e[rep.hw_index] = 1.0
        v = np.kron(v, e)
    return v


def reference_eigen_residual(N, L, lam, defect=None, defect_site=1, theta=0.0):
    """Worst ``|| T_aa Omega - <Omega|T_aa|Omega> Omega ||`` over diagonal monodromy entries."""
    T = monodromy(N, L, lam, defect, defect_site, theta)
    omega = reference_state(N, L, defect, defect_site)
    worst = 0.0
    eigen = []
    for a in range(N):
        w = T[a, a] @ omega
        ev = np.vdot(omega, w)
        eigen.append(ev)
        worst = max(worst, float(np.linalg.norm(w - ev * omega)))
    return worst, eigen
