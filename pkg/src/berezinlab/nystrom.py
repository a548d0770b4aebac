"""Nystrom discretization of the star calculus on a common node set.

The operator kernel of a symbol k at weight s is ``c_s k(a, b) / a(a, b)^s``;
star products are compositions of operator kernels in L^2(nu_s).  On one
half-plane rule (nodes eta_i, nu0-weights w_i) the composition is a matrix
product.  With the symmetric normalization

    op(a, b) = c_s k(a, b) (y_a y_b)^{s/2} / a(a, b)^s

every entry is bounded by c_s |k| and ``op_{k * l} = op_k diag(w) op_l``.
A ``GridKernel`` stores symbol values on four blocks: grid x grid, the left
probe point z against the grid, the grid against the right probe point xi,
and the pair (z, xi).  Pointwise (Schur) operations and projections of
non-analytic kernels act blockwise, which makes the chi duals and their
s-derivatives cheap dense linear algebra.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import halfplane as hp
from . import modular as mf
from .invariant_traces import eval_terms, phi_terms
from .quadrature import QuadratureSpec, halfplane_nodes
from .symbols import Kernel, c_t, dc_over_c

BLOCKS = ("gg", "zg", "gx", "zx")


class NystromGrid:
    """Half-plane rule anchored at the hyperbolic midpoint of a probe pair (z, xi)."""

    def __init__(self, z: complex, xi: complex, n_radial: int = 20, n_angular: int = 24,
                 decay: float = 12.0, cfg: mf.QSeriesConfig = mf.DEFAULT_QSERIES) -> None:
        self.z = complex(z)
        self.xi = complex(xi)
        anchor = complex(hp.hyperbolic_midpoint(np.array([self.z]), np.array([self.xi]))[0])
        eta, w = halfplane_nodes(anchor, QuadratureSpec(), decay, n_radial, n_angular)
        self.eta = np.asarray(eta)
        self.w = np.asarray(w)
        L = mf.log_delta1(self.eta, cfg)
        Lz = complex(mf.log_delta1(np.array([self.z]), cfg)[0])
        Lx = complex(mf.log_delta1(np.array([self.xi]), cfg)[0])
        ly = np.log(self.eta.imag)
        lyz, lyx = np.log(self.z.imag), np.log(self.xi.imag)
        e = self.eta
        self.la = {"gg": hp.log_a(e[:, None], e[None, :]), "zg": hp.log_a(self.z, e),
                   "gx": hp.log_a(e, self.xi), "zx": complex(hp.log_a(self.z, self.xi))}
        self.lp = {"gg": np.conj(L)[:, None] + L[None, :] + 12.0 * self.la["gg"],
                   "zg": np.conj(Lz) + L + 12.0 * self.la["zg"],
                   "gx": np.conj(L) + Lx + 12.0 * self.la["gx"],
                   "zx": np.conj(Lz) + Lx + 12.0 * self.la["zx"]}
        self.half_ly = {"gg": 0.5 * (ly[:, None] + ly[None, :]), "zg": 0.5 * (lyz + ly),
                        "gx": 0.5 * (ly + lyx), "zx": 0.5 * (lyz + lyx)}
        self.log_d = {b: self.half_ly[b] - np.real(self.la[b]) for b in BLOCKS}
        self.size = self.eta.size

    def normalizer(self, s: float) -> dict:
        """(y_a y_b)^{s/2} / a(a, b)^s on each block."""
        return {b: np.exp(s * (self.half_ly[b] - self.la[b])) for b in BLOCKS}

    def kernel(self, k: Kernel) -> "GridKernel":
        """Symbol values of a kernel from the log phi family."""
        terms = phi_terms(k)
        return GridKernel(self, {b: eval_terms(terms, self.lp[b]) for b in BLOCKS})

    def function(self, name: str) -> "GridKernel":
        """Basic pointwise functions: 'log_phi', 'conj_log_phi', 'log_d' or 'one'."""
        if name == "log_phi":
            vals = {b: self.lp[b] for b in BLOCKS}
        elif name == "conj_log_phi":
            vals = {b: np.conj(self.lp[b]) for b in BLOCKS}
        elif name == "log_d":
            vals = {b: self.log_d[b] + 0j for b in BLOCKS}
        elif name == "one":
            vals = {b: np.ones_like(self.lp[b]) for b in BLOCKS}
        else:
            raise ValueError(f"unknown grid function {name!r}")
        return GridKernel(self, vals)


@dataclass
class GridKernel:
    grid: NystromGrid
    values: dict

    def _map(self, f) -> "GridKernel":
        return GridKernel(self.grid, {b: f(self.values[b], b) for b in BLOCKS})

    def __add__(self, other: "GridKernel") -> "GridKernel":
        return self._map(lambda v, b: v + other.values[b])

    def __sub__(self, other: "GridKernel") -> "GridKernel":
        return self._map(lambda v, b: v - other.values[b])

    def __mul__(self, other) -> "GridKernel":
        if isinstance(other, GridKernel):
            return self._map(lambda v, b: v * other.values[b])
        return self._map(lambda v, b: v * other)

    __rmul__ = __mul__

    def exp_schur(self, scale: float, other: "GridKernel") -> "GridKernel":
        """self * exp(scale * other), pointwise."""
        return self._map(lambda v, b: v * np.exp(scale * other.values[b]))

    @property
    def at_pair(self) -> complex:
        return complex(self.values["zx"])

    def star(self, other: "GridKernel", s: float) -> "GridKernel":
        """Nystrom star product at weight s."""
        g = self.grid
        nrm = g.normalizer(s)
        c = c_t(s)
        x = {b: c * self.values[b] * nrm[b] for b in BLOCKS}
        y = {b: c * other.values[b] * nrm[b] for b in BLOCKS}
        w = g.w
        xw_gg = x["gg"] * w[None, :]
        xw_zg = x["zg"] * w
        op = {"gg": xw_gg @ y["gg"], "zg": xw_zg @ y["gg"], "gx": xw_gg @ y["gx"], "zx": xw_zg @ y["gx"]}
        return GridKernel(g, {b: op[b] / (c * nrm[b]) for b in BLOCKS})


def projection(K: GridKernel, s: float) -> GridKernel:
    """P_s(K) = 1 *_s K *_s 1."""
    one = K.grid.function("one")
    return one.star(K, s).star(one, s)


def chi_dual_grid(X: GridKernel, s: float, t: float) -> GridKernel:
    """chi_{s,t}(X) = (c_t/c_s) P_s[X conj(phi)^eps d^{24 eps}], eps = (t - s)/12."""
    if s > t:
        raise ValueError("chi_dual requires s <= t")
    g = X.grid
    eps = (t - s) / 12.0
    K = X.exp_schur(eps, g.function("conj_log_phi")).exp_schur(24.0 * eps, g.function("log_d"))
    return projection(K, s) * (c_t(t) / c_t(s))


def y_derivative_grid(X: GridKernel, t: float, h: float) -> GridKernel:
    """Y_t(X) = d/ds chi_{s,t}(X) at s -> t from below, Richardson on steps h and h/2.

    The s = t term uses the discrete projection of X so that quadrature
    errors common to all three evaluations cancel in the differences.
    """
    c0 = chi_dual_grid(X, t, t)
    c1 = chi_dual_grid(X, t - h, t)
    c2 = chi_dual_grid(X, t - 0.5 * h, t)
    d1 = (c0 - c1) * (1.0 / h)
    d2 = (c0 - c2) * (2.0 / h)
    return d2 * 2.0 - d1


@dataclass(frozen=True)
class DualCoboundary:
    nabla_y: complex
    k_lam_l: complex
    kl: complex
    cocycle: complex

    @property
    def literal_residual(self) -> float:
        """|nabla Y - k Lam(1) l - C| / |C|."""
        return abs(self.nabla_y - self.k_lam_l - self.cocycle) / abs(self.cocycle)

    def corrected_residual(self, t: float) -> float:
        """|nabla Y + (c'/c) k l - k Lam(1) l - C| / |C|."""
        return abs(self.nabla_y + dc_over_c(t) * self.kl - self.k_lam_l - self.cocycle) / abs(self.cocycle)


def dual_coboundary_at(k: Kernel, l: Kernel, t: float, z: complex, xi: complex, h: float = 0.2,
                       n_radial: int = 20, n_angular: int = 24,
                       cocycle_value: complex | None = None) -> DualCoboundary:
    """Terms of the Y-coboundary identity at one probe pair on a Nystrom grid.

    ``cocycle_value`` lets the caller supply C_t(k, l)(z, xi) from an
    independent quadrature; otherwise it is assembled on the grid.
    """
    g = NystromGrid(z, xi, n_radial, n_angular, decay=2.0 * t)
    K = g.kernel(k)
    Lk = g.kernel(l)
    kl = K.star(Lk, t)
    nabla = (y_derivative_grid(kl, t, h) - y_derivative_grid(K, t, h).star(Lk, t)
             - K.star(y_derivative_grid(Lk, t, h), t))
    lam1 = g.function("log_phi") * (1.0 / 12.0)
    k_lam_l = K.star(lam1.star(Lk, t), t)
    if cocycle_value is None:
        cocycle_value = grid_cocycle(K, Lk, t).at_pair
    return DualCoboundary(nabla.at_pair, k_lam_l.at_pair, kl.at_pair, complex(cocycle_value))


def grid_cocycle(K: GridKernel, L: GridKernel, t: float) -> GridKernel:
    """C_t(k, l) on the grid, from the derivative in s of the Nystrom star product (exact in s)."""
    g = K.grid
    out = {}
    nrm = g.normalizer(t)
    c = c_t(t)
    gconst = dc_over_c(t)
    la, hl, w = g.la, g.half_ly, g.w
    # lc(a, i, b) = la_ab + ly_i - la_ai - la_ib, split into row, node and column parts
    ly = np.diag(hl["gg"]).real
    for b in BLOCKS:
        rows = "gg" if b[0] == "g" else "zg"
        cols = "gg" if b[1] == "g" else "gx"
        x = c * K.values[rows] * nrm[rows]
        y = c * L.values[cols] * nrm[cols]
        base = (x * w) @ y
        term_i = (x * (w * ly)) @ y
        term_a = (x * la[rows] * w) @ y
        term_b = (x * w) @ (y * la[cols])
        op = (gconst + la[b]) * base + term_i - term_a - term_b
        out[b] = op / (c * nrm[b])
    return GridKernel(g, out)


__all__ = ["NystromGrid", "GridKernel", "projection", "chi_dual_grid", "y_derivative_grid",
           "DualCoboundary", "dual_coboundary_at", "grid_cocycle"]
