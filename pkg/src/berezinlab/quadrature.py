"""Quadrature over H, over the fundamental domain F, and over F x H.

H-integrals use disk coordinates anchored at a point z0,
``w = (eta - z0)/(eta - conj z0)``, for which ``1 - |w|^2 = d(z0, eta)^2`` and
``d nu0 = 2 du dtheta / (1 - u)^2`` with ``u = |w|^2``.  The radial rule is
Gauss-Jacobi in ``u`` with weight ``(1 - u)^beta``; an integrand decaying like
``d(z0, eta)^p`` is matched by ``beta = p/2 - 2``.  The angular rule is the
periodic trapezoid rule.

F-integrals use ``s = 1/y``, which maps the cusp to ``s = 0`` and makes
``d nu0 = dx ds``; Gauss-Legendre in ``x`` and ``s`` then covers the whole
domain without truncation.

Error estimates are the difference between the rule and a rule with half
the nodes in every direction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import special
from scipy.stats import qmc

from . import halfplane as hp

SCHEMES = ("tensor-grid", "adaptive", "quasi-random")


@dataclass(frozen=True)
class QuadratureSpec:
    """Integration strategy.

    ``n_radial``/``n_angular``: disk rule size for H-integrals.
    ``n_f``: Gauss-Legendre nodes per axis on F.
    ``radial_cutoff``: truncation of the disk (u <= radial_cutoff); 1.0 means none.
    ``decay``: default importance exponent p (integrand ~ d(z0, eta)^p).
    ``im_floor``: smallest Im accepted on F (F itself has Im >= sqrt(3)/2).
    """

    scheme: str = "tensor-grid"
    n_radial: int = 40
    n_angular: int = 48
    n_f: int = 24
    tolerance: float = 1e-8
    decay: float = 4.0
    radial_cutoff: float = 1.0
    im_floor: float = math.sqrt(3.0) / 2.0
    n_qmc: int = 4096
    seed: int = 0
    max_nodes: int = 4_000_000
    chunk: int = 2_000_000

    def __post_init__(self) -> None:
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        for name in ("n_radial", "n_angular", "n_f", "n_qmc", "max_nodes", "chunk"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if not (0.0 < self.radial_cutoff <= 1.0):
            raise ValueError("radial_cutoff must lie in (0, 1]")
        if self.im_floor <= 0.0:
            raise ValueError("im_floor must be positive")

    def scaled(self, factor: float) -> "QuadratureSpec":
        return replace(
            self,
            n_radial=max(2, int(round(self.n_radial * factor))),
            n_angular=max(2, int(round(self.n_angular * factor))),
            n_f=max(2, int(round(self.n_f * factor))),
            n_qmc=max(16, int(round(self.n_qmc * factor))),
        )

    def half(self) -> "QuadratureSpec":
        return self.scaled(0.5)

    def key(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


@dataclass(frozen=True)
class IntegralResult:
    value: complex
    error_estimate: float
    nodes_used: int
    flagged: bool = False
    notes: tuple = field(default_factory=tuple)

    def __complex__(self) -> complex:
        return complex(self.value)


# ---------------------------------------------------------------- disk rules


@lru_cache(maxsize=256)
def _jacobi_u(n: int, beta: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights on [0, 1] for the weight (1 - u)^beta."""
    x, w = special.roots_jacobi(n, beta, 0.0)
    u = 0.5 * (1.0 + x)
    return u, w * 0.5 ** (beta + 1.0)


@lru_cache(maxsize=256)
def disk_rule(n_radial: int, n_angular: int, beta: float, cutoff: float = 1.0):
    """Standard disk nodes ``w`` and nu0-weights for f(w).

    ``sum(weights * f(w))`` approximates the integral of f over the disk
    against ``2 du dtheta / (1 - u)^2`` (the invariant measure).
    """
    v, wv = _jacobi_u(n_radial, float(beta))
    u = v * cutoff
    radial = cutoff * wv * (1.0 - v) ** (-beta) * 2.0 * (1.0 - u) ** (-2.0)
    theta = 2.0 * math.pi * (np.arange(n_angular) + 0.5) / n_angular
    w = np.sqrt(u)[:, None] * np.exp(1j * theta)[None, :]
    weights = (radial[:, None] * (2.0 * math.pi / n_angular)) * np.ones((1, n_angular))
    w = w.ravel()
    weights = weights.ravel()
    w.setflags(write=False)
    weights.setflags(write=False)
    return w, weights


def beta_for_decay(p: float) -> float:
    return max(p / 2.0 - 2.0, 0.0)


def halfplane_nodes(anchor, spec: QuadratureSpec, decay: float | None = None,
                    n_radial: int | None = None, n_angular: int | None = None):
    """Nodes eta and nu0-weights anchored at each entry of ``anchor``.

    Returns arrays of shape anchor.shape + (M,).
    """
    p = spec.decay if decay is None else decay
    w, wt = disk_rule(n_radial or spec.n_radial, n_angular or spec.n_angular,
                      beta_for_decay(p), spec.radial_cutoff)
    anchor = np.asarray(anchor, dtype=complex)[..., None]
    eta = hp.disk_to_halfplane(w, anchor)
    return eta, np.broadcast_to(wt, eta.shape)


def _measure_factor(eta, measure):
    if measure in (None, "nu0"):
        return 1.0
    kind, t = measure
    if kind != "nu_t":
        raise ValueError(f"unknown measure {measure!r}")
    return np.imag(eta) ** t


def _disk_sum(f, anchor, spec, decay, measure, nr, na):
    eta, wt = halfplane_nodes(anchor, spec, decay, nr, na)
    vals = np.asarray(f(eta), dtype=complex) * _measure_factor(eta, measure)
    return np.sum(wt * vals, axis=-1), eta.shape[-1]


def integrate_H(f: Callable, measure="nu0", spec: QuadratureSpec | None = None,
                anchor: complex = 1j, decay: float | None = None) -> IntegralResult:
    """Integral of f over H against nu0 or nu_t = y^t nu0.

    ``decay`` is the exponent p with |f| ~ d(anchor, eta)^p (including the
    measure factor).  The quasi-random scheme samples the same disk
    coordinates with two scrambled Sobol seeds.
    """
    spec = spec or QuadratureSpec()
    if spec.scheme == "quasi-random":
        return _qmc_H(f, measure, spec, anchor, decay)
    full, m = _disk_sum(f, anchor, spec, decay, measure, spec.n_radial, spec.n_angular)
    half_spec = spec.half()
    coarse, m2 = _disk_sum(f, anchor, spec, decay, measure, half_spec.n_radial, half_spec.n_angular)
    err = float(np.max(np.abs(full - coarse))) if np.ndim(full) else abs(complex(full - coarse))
    value = complex(full) if np.ndim(full) == 0 else full
    scale = max(np.max(np.abs(full)) if np.ndim(full) else abs(complex(full)), 1e-300)
    flagged = err > max(spec.tolerance * scale, spec.tolerance)
    return IntegralResult(value, err, int(m + m2), flagged)


def _qmc_H(f, measure, spec, anchor, decay):
    beta = beta_for_decay(spec.decay if decay is None else decay)
    vals = []
    for k in range(2):
        sob = qmc.Sobol(2, scramble=True, seed=spec.seed + k)
        pts = sob.random(spec.n_qmc)
        # inverse CDF of (beta+1)(1-u)^beta on [0,1]
        u = 1.0 - (1.0 - pts[:, 0]) ** (1.0 / (beta + 1.0))
        theta = 2.0 * math.pi * pts[:, 1]
        w = np.sqrt(u) * np.exp(1j * theta)
        weight = 4.0 * math.pi * (1.0 - u) ** (-2.0 - beta) / (beta + 1.0)
        eta = hp.disk_to_halfplane(w, anchor)
        vals.append(np.mean(weight * np.asarray(f(eta), dtype=complex) * _measure_factor(eta, measure)))
    value = 0.5 * (vals[0] + vals[1])
    return IntegralResult(complex(value), float(abs(vals[0] - vals[1])), 2 * spec.n_qmc,
                          notes=("two-seed Sobol estimate",))


# ---------------------------------------------------------- fundamental domain


@lru_cache(maxsize=64)
def fundamental_domain_rule(n_x: int, n_s: int):
    """Nodes z and nu0-weights on F via s = 1/y (exact treatment of the cusp)."""
    gx, gwx = np.polynomial.legendre.leggauss(n_x)
    gs, gws = np.polynomial.legendre.leggauss(n_s)
    x = 0.5 * gx
    wx = 0.5 * gwx
    s_max = 1.0 / np.sqrt(1.0 - x * x)
    s = 0.5 * s_max[:, None] * (1.0 + gs[None, :])
    ws = 0.5 * s_max[:, None] * gws[None, :]
    z = x[:, None] + 1j / s
    weights = wx[:, None] * ws
    z = z.ravel()
    weights = weights.ravel()
    z.setflags(write=False)
    weights.setflags(write=False)
    return z, weights


def integrate_F(f: Callable, spec: QuadratureSpec | None = None) -> IntegralResult:
    spec = spec or QuadratureSpec()
    z, w = fundamental_domain_rule(spec.n_f, spec.n_f)
    full = np.sum(w * np.asarray(f(z), dtype=complex))
    n2 = max(2, spec.n_f // 2)
    z2, w2 = fundamental_domain_rule(n2, n2)
    coarse = np.sum(w2 * np.asarray(f(z2), dtype=complex))
    err = abs(complex(full - coarse))
    flagged = err > max(spec.tolerance * abs(complex(full)), spec.tolerance)
    return IntegralResult(complex(full), err, int(z.size + z2.size), flagged)


def fundamental_domain_area(spec: QuadratureSpec | None = None) -> IntegralResult:
    spec = spec or QuadratureSpec()
    value = hp.fundamental_domain_area(n_nodes=2 * spec.n_f)
    coarse = hp.fundamental_domain_area(n_nodes=spec.n_f)
    return IntegralResult(complex(value), abs(value - coarse), 2 * (2 * spec.n_f) ** 2 + 2 * spec.n_f**2)


# --------------------------------------------------------------------- F x H


def _fxh_sum(f, spec, decay, n_f, nr, na):
    z, wz = fundamental_domain_rule(n_f, n_f)
    total = 0.0 + 0.0j
    nodes = 0
    per = max(1, spec.chunk // (nr * na))
    for start in range(0, z.size, per):
        zc = z[start:start + per]
        eta, wt = halfplane_nodes(zc, spec, decay, nr, na)
        vals = np.asarray(f(zc[:, None], eta), dtype=complex)
        total += np.sum(wz[start:start + per, None] * wt * vals)
        nodes += eta.size
    return total, nodes


def integrate_FxH(f: Callable, decay: float, spec: QuadratureSpec | None = None) -> IntegralResult:
    """Integral over F x H of f(z, eta) against nu0 x nu0.

    The inner H-rule is anchored at the outer node z; ``decay`` is the
    exponent p with |f(z, .)| ~ d(z, .)^p (p = 2t for L2 pairings).
    """
    spec = spec or QuadratureSpec()
    if spec.scheme == "quasi-random":
        return _qmc_FxH(f, decay, spec)
    full, n1 = _fxh_sum(f, spec, decay, spec.n_f, spec.n_radial, spec.n_angular)
    h = spec.half()
    coarse, n2 = _fxh_sum(f, spec, decay, h.n_f, h.n_radial, h.n_angular)
    err = abs(full - coarse)
    flagged = err > max(spec.tolerance * abs(full), spec.tolerance)
    return IntegralResult(complex(full), float(err), int(n1 + n2), flagged)


def _qmc_FxH(f, decay, spec):
    beta = beta_for_decay(decay)
    vals = []
    for k in range(2):
        pts = qmc.Sobol(4, scramble=True, seed=spec.seed + k).random(spec.n_qmc)
        x = pts[:, 0] - 0.5
        s_max = 1.0 / np.sqrt(1.0 - x * x)
        s = np.maximum(pts[:, 1], 1e-300) * s_max
        z = x + 1j / s
        u = 1.0 - (1.0 - pts[:, 2]) ** (1.0 / (beta + 1.0))
        w = np.sqrt(u) * np.exp(2j * math.pi * pts[:, 3])
        eta = hp.disk_to_halfplane(w, z)
        weight = s_max * 4.0 * math.pi * (1.0 - u) ** (-2.0 - beta) / (beta + 1.0)
        vals.append(np.mean(weight * np.asarray(f(z, eta), dtype=complex)))
    value = 0.5 * (vals[0] + vals[1])
    return IntegralResult(complex(value), float(abs(vals[0] - vals[1])), 2 * spec.n_qmc,
                          notes=("two-seed Sobol estimate",))


def inner_constant_K(t: float, spec: QuadratureSpec | None = None, anchor: complex = 1j) -> complex:
    """K_t = integral over H of d(anchor, eta)^t d nu0(eta); equals 8 pi/(t - 2) for t > 2."""
    spec = spec or QuadratureSpec()
    return integrate_H(lambda eta: hp.weight_d(anchor, eta) ** t, spec=spec, anchor=anchor, decay=t).value


def K_closed_form(t: float) -> float:
    """Exact value of K_t: 4 pi times the integral of (1-u)^(t/2-2) du over [0, 1]."""
    if t <= 2:
        return math.inf
    return 8.0 * math.pi / (t - 2.0)


# ------------------------------------------------------------ cartesian rule


@lru_cache(maxsize=64)
def _laguerre(n: int, alpha: float):
    from scipy.special import roots_genlaguerre

    return roots_genlaguerre(n, alpha)


def cartesian_rule(x0: float, width: float, t: float, rate: float, n_x: int, n_y: int):
    """Nodes and nu_t-weights for functions of rational decay in x and exponential decay in y.

    ``x = x0 + width tan(theta)`` with Gauss-Legendre in theta, and generalized
    Gauss-Laguerre in ``y`` adapted to ``y^(t-2) exp(-rate y)``.  The weights
    include ``y^(t-2)``, the Jacobians and the factor ``exp(rate y)``, so
    ``sum(w * f(z))`` approximates the nu_t-integral of f.
    """
    g, gw = np.polynomial.legendre.leggauss(n_x)
    th = 0.5 * math.pi * g
    x = x0 + width * np.tan(th)
    wx = 0.5 * math.pi * gw * width / np.cos(th) ** 2
    yl, wl = _laguerre(n_y, t - 2.0)
    y = yl / rate
    wy = wl * np.exp(yl) / rate ** (t - 1.0)
    z = (x[:, None] + 1j * y[None, :]).ravel()
    w = (wx[:, None] * wy[None, :]).ravel()
    return z, w


def integrate_cartesian(f: Callable, x0: float, width: float, t: float, rate: float,
                        n_x: int = 64, n_y: int = 48) -> IntegralResult:
    """Integral of f against nu_t with the cartesian rule, with a half-resolution error estimate."""
    vals = []
    for nx, ny in ((n_x, n_y), (max(2, n_x // 2), max(2, n_y // 2))):
        z, w = cartesian_rule(x0, width, t, rate, nx, ny)
        vals.append(np.sum(w * np.asarray(f(z), dtype=complex)))
    return IntegralResult(complex(vals[0]), float(abs(vals[0] - vals[1])), n_x * n_y + (n_x // 2) * (n_y // 2))
