"""Finite-size Bethe equations of the twisted Yangian chain in logarithmic form.

Every factor is written through ``e_n(u) = -exp(-i phase_n(u))``.  For level
``l`` the counting function is

    Z_l(u) = [l == 1] L phase_1(u) + sum_src phase_s(u) + defect phases
             - sum_m sum_{k in S_lm} sum_j (phase_k(u - u_j^m) + phase_k(u + u_j^m))

and the equations read ``Z_l(u_i) = 2 pi J_i``.  Products run over all ``j``
including ``j = i`` (``phase_k(0) = 0``), so the right-hand side always holds
an even number of ``e`` factors and ``J`` is an integer exactly when the
left-hand side holds an odd number of them, otherwise a half-integer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import (
    CollisionError,
    ContractError,
    ConvergenceError,
    DegenerateEquationError,
    PoleError,
)
from .kernels import AlgebraSpec, ground_state_density
from .scattering import DefectSpec
from .special import defect_poles, eval_e, eval_X, phase, phase_derivative

__all__ = [
    "LevelStructure",
    "level_structure",
    "BetheState",
    "ResidualReport",
    "bae_residual",
    "multiplicative_check",
    "ground_state_counts",
    "ground_state_branches",
    "solve",
    "solve_ground_state",
    "DensityHistogram",
    "density_histogram",
    "thermodynamic_density",
    "hole_insert",
]

ROOT_FLOOR = 1e-6


@dataclass(frozen=True)
class LevelStructure:
    has_L: bool
    sources: tuple
    couplings: dict  # level m (1-based) -> tuple of e-indices


def level_structure(spec: AlgebraSpec):
    """Per-level factor content.  For ``n = 1`` the first and last level merge."""
    n = spec.n
    odd = spec.parity == "odd"
    if n == 1:
        if odd:
            return (LevelStructure(True, (-0.5,), {1: (-1, 2)}),)
        return (LevelStructure(True, (-1,), {1: (2,)}),)
    levels = []
    for l in range(1, n + 1):
        cpl = {l: (2,)}
        if l > 1:
            cpl[l - 1] = (-1,)
        if l < n:
            cpl[l + 1] = (-1,)
        src = ()
        if l == n:
            if odd:
                src = (-0.5,)
                cpl[l] = (-1, 2)
            else:
                src = (-1,)
                cpl[l - 1] = (-1, -1)
        levels.append(LevelStructure(l == 1, src, cpl))
    return tuple(levels)


def _defect_factors(spec, defect, level, variant):
    """Unimodular defect factors of ``level`` as ``(index, shift)`` pairs: ``e_index(u - shift)``."""
    if defect is None:
        return []
    if spec.parity == "odd":
        second = "+" if variant == "plus" else "-"
    else:
        second = "-"
    out = []
    for sign, shift in (("+", defect.theta), (second, -defect.theta)):
        x, y = defect_poles(sign, level, defect.alpha)
        if x == y:
            continue
        if y != -x:
            raise ContractError(
                f"defect factor X_{level}^{sign} has poles ({x}, {y}); only unimodular factors (y = -x) are supported"
            )
        out.append((2 * x, shift))
    return out


def _lhs_count(spec, L, defect, variant):
    counts = []
    for l, st in enumerate(level_structure(spec), start=1):
        c = (L if st.has_L else 0) + len(st.sources) + len(_defect_factors(spec, defect, l, variant))
        counts.append(c)
    return counts


def branch_is_integer(spec, L, level, defect=None, variant="plus"):
    return _lhs_count(spec, L, defect, variant)[level - 1] % 2 == 1


@dataclass
class BetheState:
    spec: AlgebraSpec
    L: int
    roots: tuple
    branches: tuple
    defect: DefectSpec | None = None
    defect_variant: str = "plus"
    report: "ResidualReport | None" = field(default=None, compare=False)

    def __post_init__(self):
        self.roots = tuple(np.asarray(r, dtype=float).copy() for r in self.roots)
        self.branches = tuple(np.asarray(b, dtype=float).copy() for b in self.branches)
        if len(self.roots) != self.spec.n or len(self.branches) != self.spec.n:
            raise ContractError("need one root list and one branch list per level")
        for r, b in zip(self.roots, self.branches):
            if r.shape != b.shape:
                raise ContractError("roots and branch numbers must have equal length per level")
        if self.defect_variant not in ("plus", "conjugate"):
            raise ContractError("defect_variant must be 'plus' or 'conjugate'")
        if self.defect is not None and self.defect.N != self.spec.N:
            raise ContractError("defect rank does not match the algebra")

    @property
    def M(self):
        return tuple(len(r) for r in self.roots)

    @property
    def sites(self):
        """Lattice sites; the defect occupies one extra site."""
        return self.L + (1 if self.defect is not None else 0)

    def validate(self):
        for l, r in enumerate(self.roots, start=1):
            if np.any(r <= 0):
                raise ContractError(f"level {l}: roots must be strictly positive")
            s = np.sort(r)
            if np.any(np.diff(s) <= 0):
                raise ContractError(f"level {l}: roots must be pairwise distinct")

    def flat(self):
        return np.concatenate(self.roots) if self.roots else np.zeros(0)

    def with_roots(self, flat):
        out, i = [], 0
        for m in self.M:
            out.append(np.asarray(flat[i:i + m], dtype=float))
            i += m
        return BetheState(self.spec, self.L, tuple(out), self.branches, self.defect, self.defect_variant)

    # -- serialisation ----------------------------------------------------

    def to_dict(self):
        return {
            "spec": {"parity": self.spec.parity, "n": self.spec.n},
            "L": self.L,
            "M": list(self.M),
            "defect": None if self.defect is None else {
                "theta": self.defect.theta, "alpha": list(self.defect.alpha), "variant": self.defect_variant},
            "roots": [r.tolist() for r in self.roots],
            "branches": [b.tolist() for b in self.branches],
            "residual_report": None if self.report is None else self.report.to_dict(),
        }

    def to_json(self, path=None):
        text = json.dumps(self.to_dict(), indent=2)
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text)
        return text

    @classmethod
    def from_dict(cls, d):
        spec = AlgebraSpec(d["spec"]["parity"], int(d["spec"]["n"]))
        dd = d.get("defect")
        defect = None if dd is None else DefectSpec(dd["theta"], dd["alpha"])
        variant = "plus" if dd is None else dd.get("variant", "plus")
        state = cls(spec, int(d["L"]), tuple(d["roots"]), tuple(d["branches"]), defect, variant)
        if list(state.M) != list(d.get("M", state.M)):
            raise ContractError("root counts disagree with M")
        return state

    @classmethod
    def from_json(cls, text_or_path):
        text = text_or_path
        if not text.lstrip().startswith("{"):
            with open(text_or_path) as fh:
                text = fh.read()
        return cls.from_dict(json.loads(text))


@dataclass
class ResidualReport:
    residuals: np.ndarray
    max_residual: float
    condition: float

    def to_dict(self):
        return {"residuals": self.residuals.tolist(), "max_residual": self.max_residual, "condition": self.condition}


# -- residual and Jacobian -----------------------------------------------------


def _system(state: BetheState, with_jacobian=True):
    spec, L = state.spec, state.L
    structure = level_structure(spec)
    roots = state.roots
    M = state.M
    offs = np.concatenate([[0], np.cumsum(M)]).astype(int)
    total = int(offs[-1])
    res = np.zeros(total)
    jac = np.zeros((total, total)) if with_jacobian else None
    for l, st in enumerate(structure, start=1):
        u = roots[l - 1]
        if u.size == 0:
            continue
        sl = slice(offs[l - 1], offs[l])
        z = np.zeros_like(u)
        dz = np.zeros_like(u)
        if st.has_L:
            z += L * phase(1, u)
            dz += L * phase_derivative(1, u)
        for s in st.sources:
            z += phase(s, u)
            dz += phase_derivative(s, u)
        for idx, shift in _defect_factors(spec, state.defect, l, state.defect_variant):
            z += phase(idx, u - shift)
            dz += phase_derivative(idx, u - shift)
        for m, ks in st.couplings.items():
            v = roots[m - 1]
            if v.size == 0:
                continue
            D = u[:, None] - v[None, :]
            S = u[:, None] + v[None, :]
            for k in ks:
                z -= (phase(k, D) + phase(k, S)).sum(axis=1)
                if with_jacobian:
                    A = phase_derivative(k, D)
                    B = phase_derivative(k, S)
                    dz -= (A + B).sum(axis=1)
                    jac[sl, offs[m - 1]:offs[m]] += A - B
        res[sl] = z - 2.0 * np.pi * state.branches[l - 1]
        if with_jacobian:
            jac[sl, sl] += np.diag(dz)
    return res, jac


def bae_residual(state: BetheState) -> ResidualReport:
    """Log-form residuals ``Z_l(u_i) - 2 pi J_i`` for every root."""
    for l, u in enumerate(state.roots, start=1):
        if np.any(u == 0):
            raise PoleError(f"level {l}: root at u = 0 sits on the pole of the e-factors with argument 2u")
    res, jac = _system(state)
    cond = float(np.linalg.cond(jac)) if jac.size else 1.0
    return ResidualReport(res, float(np.max(np.abs(res))) if res.size else 0.0, cond)


def multiplicative_check(state: BetheState):
    """``max |LHS / (-RHS) - 1|`` of the product form, evaluated directly."""
    spec, L = state.spec, state.L
    worst = 0.0
    for l, st in enumerate(level_structure(spec), start=1):
        for ui in state.roots[l - 1]:
            lhs = complex(eval_e(1, ui)) ** L if st.has_L else 1.0 + 0j
            for s in st.sources:
                lhs *= complex(eval_e(s, ui))
            if state.defect is not None:
                second = "+" if (spec.parity == "odd" and state.defect_variant == "plus") else "-"
                lhs *= complex(eval_X("+", l, state.defect.alpha, ui - state.defect.theta))
                lhs *= complex(eval_X(second, l, state.defect.alpha, ui + state.defect.theta))
            rhs = -1.0 + 0j
            for m, ks in st.couplings.items():
                for uj in state.roots[m - 1]:
                    for k in ks:
                        rhs *= complex(eval_e(k, ui - uj)) * complex(eval_e(k, ui + uj))
            worst = max(worst, abs(lhs / rhs - 1.0))
    return worst


# -- ground-state bookkeeping ---------------------------------------------------


def _z_infinity(spec, L, M, level, defect=None, variant="plus"):
    st = level_structure(spec)[level - 1]
    z = (0.5 * L if st.has_L else 0.0) + 0.5 * sum(np.sign(s) for s in st.sources)
    z += 0.5 * sum(np.sign(i) for i, _ in _defect_factors(spec, defect, level, variant))
    for m, ks in st.couplings.items():
        z -= M[m - 1] * sum(np.sign(k) for k in ks)
    return z


def _first_branch(spec, L, level, defect, variant):
    return 1.0 if branch_is_integer(spec, L, level, defect, variant) else 0.5


def ground_state_counts(spec: AlgebraSpec, L: int, defect=None, variant="plus", fixed=None):
    """Largest occupations with every branch number below the asymptotic count.

    Iterated to a fixed point starting from the free count ``L/2`` per level.
    ``fixed`` maps levels to occupations that are held constant.
    """
    n = spec.n
    fixed = dict(fixed or {})
    M = [fixed.get(l, L) for l in range(1, n + 1)]
    for _ in range(10 * (L + 1) * n):
        changed = False
        for l in range(1, n + 1):
            if l in fixed:
                continue
            j0 = _first_branch(spec, L, l, defect, variant)
            m = M[l - 1]
            while m > 0:
                trial = list(M)
                trial[l - 1] = m
                if j0 + m - 1 < _z_infinity(spec, L, trial, l, defect, variant):
                    break
                m -= 1
            if m != M[l - 1]:
                M[l - 1] = m
                changed = True
        if not changed:
            return tuple(M)
    raise ConvergenceError("ground-state occupation count did not settle")


def ground_state_branches(spec, L, M, defect=None, variant="plus"):
    return tuple(
        _first_branch(spec, L, l, defect, variant) + np.arange(M[l - 1], dtype=float) for l in range(1, spec.n + 1)
    )


# -- thermodynamic density (initial guesses and histogram oracle) ----------------


def _sigma_hat(spec, level):
    return ground_state_density(spec, level)


def thermodynamic_density(spec, level, lam, omega_max=120.0, panels=960, order=16):
    """``sigma_l(lam) = (1/pi) int_0^inf sigma_hat_l(w) cos(w lam) dw``."""
    x, wts = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, omega_max, panels + 1)
    h = edges[1] - edges[0]
    nodes = (0.5 * (edges[1:] + edges[:-1])[:, None] + 0.5 * h * x).ravel()
    weights = np.tile(0.5 * h * wts, panels)
    f = _sigma_hat(spec, level)(nodes)
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    return (np.cos(np.multiply.outer(lam, nodes)) @ (weights * f)) / np.pi


def _counting_spline(spec, level, u_max=60.0, points=1201):
    u = np.linspace(0.0, u_max, points)
    dens = thermodynamic_density(spec, level, u)
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (dens[1:] + dens[:-1]) * np.diff(u))])
    return u, cum, dens


def initial_guess(spec, L, branches):
    """Invert the thermodynamic counting function ``L int_0^u sigma_l = J``."""
    out = []
    for l, J in enumerate(branches, start=1):
        if J.size == 0:
            out.append(np.zeros(0))
            continue
        u, cum, dens = _counting_spline(spec, l)
        target = J / L
        top = cum[-1]
        guess = np.interp(np.minimum(target, 0.98 * top), cum, u)
        over = target > 0.98 * top
        if np.any(over):
            base = np.interp(0.98 * top, cum, u)
            guess[over] = base + np.cumsum(np.ones(over.sum())) * 1.5
        out.append(np.maximum(guess, 10 * ROOT_FLOOR))
    return tuple(out)


# -- Newton ----------------------------------------------------------------------


def _newton(state, tol, max_iter, history):
    x = state.flat()
    best = (np.inf, x.copy())
    for _ in range(max_iter):
        st = state.with_roots(x)
        res, jac = _system(st)
        norm = float(np.max(np.abs(res))) if res.size else 0.0
        history.append(norm)
        if norm < best[0]:
            best = (norm, x.copy())
        if norm < tol:
            return x, norm
        try:
            step = np.linalg.solve(jac, -res)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(jac, -res, rcond=None)[0]
        if not np.all(np.isfinite(step)):
            break
        t = 1.0
        # keep roots positive
        neg = step < 0
        if np.any(neg):
            t = min(1.0, 0.9 * float(np.min((x[neg] - ROOT_FLOOR) / -step[neg])))
        while t > 1e-10:
            trial = x + t * step
            r2, _ = _system(state.with_roots(trial), with_jacobian=False)
            if np.max(np.abs(r2)) < (1.0 - 1e-4 * t) * norm:
                break
            t *= 0.5
        x = x + t * step
    raise ConvergenceError(f"Newton did not reach {tol:g} (best {best[0]:.3e})", best=best[1], history=history)


def _check_collisions(state, eps=1e-8):
    for l, r in enumerate(state.roots, start=1):
        s = np.sort(r)
        if s.size > 1 and np.min(np.diff(s)) < eps:
            raise CollisionError(f"level {l}: roots collided", best=state.flat(), history=[])


def _check_degenerate(state, tol):
    res, jac = _system(state)
    if res.size and np.max(np.abs(jac)) < 1e-12:
        u = np.linspace(0.05, 20.0, 64)
        vals = []
        for v in u:
            r, _ = _system(state.with_roots(np.full(res.size, v)), with_jacobian=False)
            vals.append(r)
        vals = np.array(vals)
        if np.ptp(vals) < 1e-12:
            raise DegenerateEquationError(
                "the counting function is constant: the equation holds for every root or for none"
            )


def solve(spec, L, M=None, seed=None, defect=None, variant="plus", tol=1e-10, max_iter=100, continuation_steps=20):
    """Solve the log-form Bethe equations.

    ``seed`` is either a :class:`BetheState` (roots used as the starting
    point, branches kept) or a per-level sequence of branch numbers.  When
    omitted, ground-state branch numbers for ``M`` are used.  If a cold Newton
    start fails, the system is continued from the thermodynamic counting
    function to the full equations.
    """
    if isinstance(seed, BetheState):
        start = BetheState(spec, L, seed.roots, seed.branches, defect, variant)
    else:
        if seed is None:
            if M is None:
                M = ground_state_counts(spec, L, defect, variant)
            branches = ground_state_branches(spec, L, M, defect, variant)
        else:
            branches = tuple(np.asarray(b, dtype=float) for b in seed)
        for l, b in enumerate(branches, start=1):
            if len(set(b.tolist())) != b.size:
                raise ContractError(f"level {l}: branch numbers must be distinct")
            if b.size and np.any(b <= 0):
                raise ContractError(f"level {l}: branch numbers must be positive")
            if b.size:
                want_int = branch_is_integer(spec, L, l, defect, variant)
                frac = np.mod(b, 1.0)
                if np.any(np.abs(frac - (0.0 if want_int else 0.5)) > 1e-12):
                    raise ContractError(
                        f"level {l}: branch numbers must be {'integers' if want_int else 'half-integers'}")
        start = BetheState(spec, L, initial_guess(spec, L, branches), branches, defect, variant)
    if M is not None and tuple(M) != start.M:
        raise ContractError(f"seed has occupations {start.M}, requested {tuple(M)}")
    if sum(start.M) == 0:
        out = BetheState(spec, L, start.roots, start.branches, defect, variant)
        out.report = bae_residual(out)
        return out
    _check_degenerate(start, tol)
    history = []
    try:
        x, _ = _newton(start, tol, max_iter, history)
    except ConvergenceError:
        x = _continuation(start, tol, max_iter, continuation_steps, history)
    out = start.with_roots(x)
    out.validate()
    _check_collisions(out)
    out.report = bae_residual(out)
    if out.report.max_residual >= tol:
        raise ConvergenceError("final residual above tolerance", best=x, history=history)
    return out


def _continuation(start, tol, max_iter, steps, history):
    """Homotopy from the thermodynamic counting function to the full system."""
    spec, L = start.spec, start.L
    splines = []
    for l in range(1, spec.n + 1):
        u, cum, _ = _counting_spline(spec, l)
        splines.append(CubicSpline(u, cum))
    M = start.M
    offs = np.concatenate([[0], np.cumsum(M)]).astype(int)
    target = np.concatenate(start.branches)

    def system(x, t):
        st = start.with_roots(x)
        res, jac = _system(st)
        ref = np.zeros_like(res)
        dref = np.zeros_like(res)
        for l in range(spec.n):
            sl = slice(offs[l], offs[l + 1])
            ref[sl] = 2 * np.pi * (L * splines[l](x[sl]) - target[sl])
            dref[sl] = 2 * np.pi * L * splines[l](x[sl], 1)
        return t * res + (1 - t) * ref, t * jac + (1 - t) * np.diag(dref)

    x = start.flat()
    for t in np.linspace(0.0, 1.0, steps + 1)[1:]:
        for _ in range(max_iter):
            r, J = system(x, t)
            norm = float(np.max(np.abs(r)))
            history.append(norm)
            if norm < (tol if t == 1.0 else 1e-8):
                break
            step = np.linalg.lstsq(J, -r, rcond=None)[0]
            s = 1.0
            neg = step < 0
            if np.any(neg):
                s = min(1.0, 0.9 * float(np.min((x[neg] - ROOT_FLOOR) / -step[neg])))
            while s > 1e-10:
                r2, _ = system(x + s * step, t)
                if np.max(np.abs(r2)) < (1 - 1e-4 * s) * norm:
                    break
                s *= 0.5
            x = x + s * step
        else:
            raise ConvergenceError(f"continuation stalled at t={t:.3f}", best=x, history=history)
    return x


def solve_ground_state(spec, L, defect=None, variant="plus", tol=1e-10):
    return solve(spec, L, defect=defect, variant=variant, tol=tol)


# -- observables ------------------------------------------------------------------


@dataclass
class DensityHistogram:
    centers: np.ndarray
    empirical: np.ndarray
    predicted: np.ndarray

    @property
    def relative_deviation(self):
        return np.abs(self.empirical - self.predicted) / np.abs(self.predicted)


def density_histogram(state: BetheState, sea=1, bins=None, min_per_bin=5):
    """Spacing density ``1 / (L (u_{j+1} - u_j))`` at gap midpoints.

    With ``bins`` (an int) the gaps are grouped into that many equal-count
    bins and averaged; the prediction column is the inverse Fourier
    transform of the ground-state density evaluated at the same points.
    """
    if not 1 <= sea <= state.spec.n:
        raise ContractError(f"sea {sea} outside 1..{state.spec.n}")
    r = np.sort(state.roots[sea - 1])
    if r.size < max(2, min_per_bin):
        raise ContractError(f"sea {sea} holds {r.size} roots; at least {max(2, min_per_bin)} are needed")
    mids = 0.5 * (r[1:] + r[:-1])
    dens = 1.0 / (state.L * np.diff(r))
    if bins is not None:
        if r.size < bins * min_per_bin:
            raise ContractError(f"{bins} bins need at least {bins * min_per_bin} roots, sea {sea} has {r.size}")
        groups = np.array_split(np.arange(mids.size), bins)
        mids = np.array([mids[g].mean() for g in groups])
        dens = np.array([dens[g].mean() for g in groups])
    pred = thermodynamic_density(state.spec, sea, mids)
    return DensityHistogram(mids, dens, pred)


def _slots(spec, L, M, level, defect, variant):
    """Number of admissible branch numbers ``j0, j0 + 1, ... < z_inf`` of ``level``."""
    j0 = _first_branch(spec, L, level, defect, variant)
    z = _z_infinity(spec, L, M, level, defect, variant)
    return max(0, int(np.ceil(z - j0 - 1e-12)))


def hole_insert(state: BetheState, sea, position, tol=1e-10):
    """One-hole state: vacate slot ``position`` (0-based) of ``sea`` and re-solve.

    The occupation of ``sea`` is lowered until at least one slot is free and
    the other seas re-settle to their lowest configuration.  Returns
    ``(new_state, hole_rapidity)``; the hole rapidity is the midpoint of the
    gap that opens at the vacancy.
    """
    spec, L, dfc, var = state.spec, state.L, state.defect, state.defect_variant
    m0 = state.M[sea - 1]
    for m in range(m0 - 1, -1, -1):
        M = ground_state_counts(spec, L, dfc, var, fixed={sea: m})
        if _slots(spec, L, M, sea, dfc, var) > m:
            break
    else:
        raise ContractError(f"sea {sea} admits no one-hole state")
    if not 0 <= position <= m:
        raise ContractError(f"position {position} outside 0..{m}")
    old = [np.sort(r) for r in state.roots]
    branches, roots = [], []
    for l in range(1, spec.n + 1):
        j0 = _first_branch(spec, L, l, dfc, var)
        if l == sea:
            slots = np.delete(np.arange(m + 1), position)
            branches.append(j0 + slots.astype(float))
            guess = np.interp(slots, np.arange(old[l - 1].size), old[l - 1]) if old[l - 1].size else slots + 0.5
            roots.append(guess)
            continue
        bl = j0 + np.arange(M[l - 1], dtype=float)
        o = old[l - 1]
        if bl.size <= o.size:
            rl = o[:bl.size]
        else:
            top = o[-1] if o.size else 0.5
            rl = np.concatenate([o, top + np.arange(1, bl.size - o.size + 1)])
        branches.append(bl)
        roots.append(rl)
    seed = BetheState(spec, L, tuple(roots), tuple(branches), dfc, var)
    new = solve(spec, L, seed=seed, defect=dfc, variant=var, tol=tol)
    nr = np.sort(new.roots[sea - 1])
    if position == 0:
        hole = 0.5 * nr[0] if nr.size else 0.0
    elif position >= nr.size:
        hole = nr[-1] + 0.5 * (nr[-1] - nr[-2]) if nr.size > 1 else 2 * nr[-1]
    else:
        hole = 0.5 * (nr[position - 1] + nr[position])
    return new, float(hole)


def hole_count(state: BetheState, sea):
    b = np.sort(state.branches[sea - 1])
    if b.size == 0:
        return 0
    first = _first_branch(state.spec, state.L, sea, state.defect, state.defect_variant)
    return int(round(b[-1] - first + 1)) - b.size


def quantum_numbers(state: BetheState):
    from .kernels import QuantumNumbers

    return QuantumNumbers(state.M, state.L)


def branch_label(x):
    return str(Fraction(x).limit_denominator(2))
