"""Principal-value exponent ``I(mu) = PV int dw/w exp(-i w mu) f(w)`` for real ``f``.

Splitting ``f = f_e + f_o`` into even and odd parts,

    I(mu) = 2 int_0^inf cos(w mu) f_o(w) / w dw - 2i int_0^inf sin(w mu) f_e(w) / w dw,

and both half-line integrands are regular when ``f_o(0+) = 0``.  The
integrals are done with composite Gauss-Legendre panels on ``[0, w_max]``,
where ``w_max`` is where ``f`` has decayed below ``cutoff``.  A constant
tail ``c`` of ``f_e`` is removed analytically (``int sin(w mu)/w = pi/2 sign mu``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import QuadratureError

__all__ = ["PVQuadrature"]


@dataclass(frozen=True)
class PVQuadrature:
    h: float = 0.5
    order: int = 20
    cutoff: float = 1e-16
    omega_cap: float = 4000.0

    def _nodes(self, w_max, h):
        x, wts = np.polynomial.legendre.leggauss(self.order)
        edges = np.arange(0.0, w_max + 0.5 * h, h)
        mid = 0.5 * (edges[1:] + edges[:-1])
        nodes = (mid[:, None] + 0.5 * h * x[None, :]).ravel()
        weights = np.tile(0.5 * h * wts, len(mid))
        return nodes, weights

    def split(self, f):
        """Return ``(f_e, f_o, tail)`` callables on ``w >= 0`` and the even tail constant."""

        def fe(w):
            return 0.5 * (f(w) + f(-w))

        def fo(w):
            return 0.5 * (f(w) - f(-w))

        far = np.array([0.5 * self.omega_cap, self.omega_cap])
        e_far, o_far = fe(far), fo(far)
        if not np.all(np.isfinite(e_far)) or not np.all(np.isfinite(o_far)):
            raise QuadratureError("phase density is not finite at large |omega|")
        if np.max(np.abs(o_far)) > self.cutoff:
            raise QuadratureError("odd part of the phase density does not decay", residual=float(np.max(np.abs(o_far))))
        tail = float(e_far[-1])
        if abs(e_far[0] - e_far[1]) > 1e-12:
            raise QuadratureError("even part of the phase density has a non-constant tail")
        if abs(tail) <= self.cutoff:
            tail = 0.0
        small = 1e-9
        o0 = float(fo(np.array([small]))[0])
        if abs(o0) > 1e-6:
            raise QuadratureError(
                "odd part does not vanish at omega -> 0+; the PV integral diverges logarithmically",
                residual=abs(o0),
            )
        return fe, fo, tail

    def support(self, fe, fo, tail):
        grid = np.arange(0.0, self.omega_cap + self.h, self.h)
        mag = np.maximum(np.abs(fe(grid) - tail), np.abs(fo(grid)))
        scale = max(1.0, float(np.nanmax(mag)))
        big = np.nonzero(~(mag < self.cutoff * scale))[0]
        if big.size == 0:
            return self.h, 0.0
        last = int(big[-1])
        if last >= grid.size - 2:
            raise QuadratureError("phase density does not decay below cutoff before omega_cap")
        w_max = grid[last + 1]
        return float(w_max), float(mag[last + 1])

    def _integrate(self, fe, fo, tail, mu, w_max, h):
        nodes, weights = self._nodes(w_max, h)
        ge = fe(nodes) - tail
        go = fo(nodes)
        arg = np.multiply.outer(mu, nodes)
        # sin(w mu) / w = mu * sinc(w mu / pi), regular at w = 0
        sin_part = (np.sinc(arg / np.pi) * mu[:, None]) @ (weights * ge)
        with np.errstate(divide="ignore", invalid="ignore"):
            go_over = np.where(nodes > 0, go / nodes, 0.0)
        cos_part = np.cos(arg) @ (weights * go_over)
        sin_part = sin_part + tail * 0.5 * np.pi * np.sign(mu)
        return 2.0 * cos_part - 2.0j * sin_part

    def exponent(self, f, mu):
        """Return ``(I, err)`` for real ``f`` and an array of ``mu``.

        ``err`` is the change under step halving plus a bound on the
        truncated tail.
        """
        mu = np.atleast_1d(np.asarray(mu, dtype=float))
        fe, fo, tail = self.split(f)
        w_max, tail_mag = self.support(fe, fo, tail)
        coarse = self._integrate(fe, fo, tail, mu, w_max, self.h)
        fine = self._integrate(fe, fo, tail, mu, w_max, 0.5 * self.h)
        if not np.all(np.isfinite(fine)):
            raise QuadratureError("non-finite quadrature result")
        err = np.abs(fine - coarse) + 4.0 * tail_mag + 1e-15
        return fine, err
