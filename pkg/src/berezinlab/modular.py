"""The discriminant form, its continuous logarithm, and the bivariable symbol phi.

``log_delta`` is the continuous branch of log Delta on H with
``exp(log_delta) = Delta`` and ``log_delta(iy)`` real.  Points with small
imaginary part are reduced to the fundamental domain while the exact
step rules

    L(z + n)  = L(z) + 2 pi i n
    L(-1/z)   = L(z) + 12 Log(z / i)

are accumulated, so no Dedekind-sum bookkeeping is required.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import optimize

from . import halfplane as hp

TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class QSeriesConfig:
    truncation_order: int = 16
    min_im: float = 0.8
    max_reduction_steps: int = 10_000

    def __post_init__(self) -> None:
        if self.truncation_order < 1:
            raise ValueError("truncation_order must be >= 1")
        if self.min_im <= 0.0:
            raise ValueError("min_im must be positive")

    def tail_bound(self, im: float | None = None) -> float:
        """Bound on |24 sum_{n>N} log(1 - q^n)| at the given Im z."""
        y = self.min_im if im is None else im
        r = math.exp(-2.0 * math.pi * y)
        n = self.truncation_order
        return 24.0 * 2.0 * r ** (n + 1) / (1.0 - r) ** 2


DEFAULT_QSERIES = QSeriesConfig()


@dataclass(frozen=True)
class PhiValue:
    value: complex
    log_value: complex


def _series_log_delta(z: np.ndarray, n_terms: int) -> np.ndarray:
    q = np.exp(TWO_PI_I * z)
    total = TWO_PI_I * z
    qn = np.ones_like(q)
    acc = np.zeros_like(q)
    for _ in range(n_terms):
        qn = qn * q
        acc = acc + np.log1p(-qn)
    return total + 24.0 * acc


def log_delta(z, cfg: QSeriesConfig = DEFAULT_QSERIES) -> np.ndarray:
    """Continuous logarithm of Delta(z) = q prod (1 - q^n)^24."""
    z0 = np.asarray(z, dtype=complex)
    scalar = z0.ndim == 0
    zc = hp.as_points(np.atleast_1d(z0)).ravel().copy()
    acc = np.zeros_like(zc)
    active = np.flatnonzero(zc.imag < cfg.min_im)
    for _ in range(cfg.max_reduction_steps):
        if active.size == 0:
            break
        za = zc[active]
        n = np.floor(za.real + 0.5)
        za = za - n
        acc[active] += TWO_PI_I * n
        inv = (np.abs(za) < 1.0) & (za.imag < cfg.min_im)
        zi = za[inv]
        acc_idx = active[inv]
        acc[acc_idx] -= 12.0 * np.log(zi / 1j)
        za[inv] = -1.0 / zi
        zc[active] = za
        active = active[inv]
    else:
        raise RuntimeError("log_delta reduction did not terminate; Im z underflow")
    out = _series_log_delta(zc, cfg.truncation_order) + acc
    out = out.reshape(np.shape(z0)) if not scalar else out[0]
    return out


def log_delta_alternate(z, cfg: QSeriesConfig = DEFAULT_QSERIES):
    """The series pi i z/12 + sum log(1 - q^n); equals log_delta/24 (log of eta)."""
    return log_delta(z, cfg) / 24.0


def delta(z, cfg: QSeriesConfig = DEFAULT_QSERIES):
    return np.exp(log_delta(z, cfg))


def delta_product(z, n_terms: int = 64):
    """Direct truncated q-product, used as an independent oracle."""
    z = np.asarray(z, dtype=complex)
    q = np.exp(TWO_PI_I * z)
    prod = q.copy()
    qn = np.ones_like(q)
    for _ in range(n_terms):
        qn = qn * q
        prod = prod * (1.0 - qn) ** 24
    return prod


def delta_at_i_closed_form() -> float:
    """|Delta(i)| = Gamma(1/4)^24 / (2^24 pi^18)."""
    return math.exp(24.0 * math.lgamma(0.25) - 24.0 * math.log(2.0) - 18.0 * math.log(math.pi))


def log_invariant_height(z, cfg: QSeriesConfig = DEFAULT_QSERIES):
    """log(|Delta(z)| (Im z)^6), a Gamma-invariant function."""
    z = np.asarray(z, dtype=complex)
    return np.real(log_delta(z, cfg)) + 6.0 * np.log(z.imag)


@lru_cache(maxsize=None)
def _normalization(cfg: QSeriesConfig) -> tuple[float, complex]:
    def neg(p):
        z = complex(p[0], p[1])
        return -float(log_invariant_height(z, cfg))

    best = None
    for x0 in (-0.45, -0.2, 0.0, 0.2, 0.45):
        for y0 in (0.9, 1.2, 1.6):
            y0 = max(y0, math.sqrt(1 - x0 * x0) + 1e-3)
            res = optimize.minimize(
                neg, np.array([x0, y0]), method="SLSQP",
                bounds=[(-0.5, 0.5), (0.5, 5.0)],
                constraints=[{"type": "ineq", "fun": lambda p: p[0] ** 2 + p[1] ** 2 - 1.0}],
                options={"ftol": 1e-15, "maxiter": 500},
            )
            if best is None or res.fun < best.fun:
                best = res
    z_star = complex(best.x[0], best.x[1])
    return float(math.exp(-best.fun)), z_star


def normalization_constant(cfg: QSeriesConfig = DEFAULT_QSERIES) -> float:
    """c = sup_F |Delta| y^6, so that Delta_1 = Delta / c has sup |Delta_1|^2 y^12 = 1."""
    return _normalization(cfg)[0]


def normalization_maximizer(cfg: QSeriesConfig = DEFAULT_QSERIES) -> complex:
    return _normalization(cfg)[1]


def log_delta1(z, cfg: QSeriesConfig = DEFAULT_QSERIES):
    return log_delta(z, cfg) - math.log(normalization_constant(cfg))


def height_G(z, cfg: QSeriesConfig = DEFAULT_QSERIES):
    """|Delta_1(z)| (Im z)^6, bounded by 1 on H."""
    z = np.asarray(z, dtype=complex)
    return np.exp(np.real(log_delta1(z, cfg)) + 6.0 * np.log(z.imag))


def automorphy_log(gamma: hp.MoebiusTransform, z, cfg: QSeriesConfig = DEFAULT_QSERIES):
    """log_delta(gamma^{-1} z) - log_delta(z)."""
    z = np.asarray(z, dtype=complex)
    return log_delta(gamma.inverse()(z), cfg) - log_delta(z, cfg)


def log_delta_via_reduction(z, cfg: QSeriesConfig = DEFAULT_QSERIES) -> np.ndarray:
    """q-series at the reduced point w = gamma z minus 12 log(c z + d); equals log_delta modulo 2 pi i."""
    z = np.asarray(z, dtype=complex)
    w, (a, b, c, d) = hp.reduce_points(z)
    return _series_log_delta(np.atleast_1d(w), cfg.truncation_order).reshape(np.shape(w)) - 12.0 * np.log(c * z + d)


def log_phi_from_parts(l1z, l1xi, z, xi):
    return np.conj(l1z) + l1xi + 12.0 * hp.log_a(z, xi)


def log_phi(z, xi, cfg: QSeriesConfig = DEFAULT_QSERIES):
    """conj(log Delta_1(z)) + log Delta_1(xi) + 12 Log a(z, xi)."""
    return log_phi_from_parts(log_delta1(z, cfg), log_delta1(xi, cfg), z, xi)


def phi(z, xi, cfg: QSeriesConfig = DEFAULT_QSERIES):
    return np.exp(log_phi(z, xi, cfg))


def phi_value(z: complex, xi: complex, cfg: QSeriesConfig = DEFAULT_QSERIES) -> PhiValue:
    lv = complex(log_phi(z, xi, cfg))
    return PhiValue(value=complex(np.exp(lv)), log_value=lv)


@dataclass(frozen=True)
class GrowthFit:
    epsilon: float
    decay_rate: float
    fitted_constant: float
    violations: int
    n_samples: int
    argmax: complex
    constant_vs_min_re: list


def growth_bound_fit(epsilon: float, re_grid: np.ndarray, im_grid: np.ndarray,
                     decay_rate: float | None = None,
                     cfg: QSeriesConfig = DEFAULT_QSERIES) -> GrowthFit:
    """Fit the smallest c with |Delta^eps log Delta| <= c (x / y^3) exp(-eps1 y) on a grid.

    The decay rate eps1 defaults to pi*eps, half of the rate 2 pi eps of |Delta^eps|.
    Also reports the fitted constant restricted to x >= x_k for increasing x_k,
    which exposes the behaviour as x -> 0.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    eps1 = math.pi * epsilon if decay_rate is None else decay_rate
    x, y = np.meshgrid(np.asarray(re_grid, float), np.asarray(im_grid, float), indexing="ij")
    z = x + 1j * y
    ld = log_delta(z, cfg)
    log_lhs = epsilon * np.real(ld) + np.log(np.abs(ld))
    log_rhs = np.log(x) - 3.0 * np.log(y) - eps1 * y
    log_ratio = log_lhs - log_rhs
    c = float(np.exp(np.max(log_ratio)))
    k = int(np.argmax(log_ratio))
    viol = int(np.sum(log_lhs > math.log(c) + log_rhs + 1e-12))
    trend = []
    xs = np.unique(x)
    for xk in xs[:: max(1, xs.size // 8)]:
        mask = x >= xk
        trend.append((float(xk), float(np.exp(np.max(log_ratio[mask])))))
    return GrowthFit(epsilon, eps1, c, viol, int(z.size), complex(z.ravel()[k]), trend)


def im_log_delta_fit(re_grid, im_grid, cfg: QSeriesConfig = DEFAULT_QSERIES) -> float:
    """Smallest C with |Im log_delta(x+iy)| <= C (x + 1/y^2) on the grid."""
    x, y = np.meshgrid(np.asarray(re_grid, float), np.asarray(im_grid, float), indexing="ij")
    val = np.abs(np.imag(log_delta(x + 1j * y, cfg)))
    return float(np.max(val / (x + 1.0 / y**2)))


__all__ = [
    "QSeriesConfig", "PhiValue", "log_delta", "log_delta_alternate", "delta", "delta_product",
    "delta_at_i_closed_form", "normalization_constant", "normalization_maximizer", "log_delta1",
    "height_G", "automorphy_log", "log_phi", "phi", "phi_value", "growth_bound_fit",
    "im_log_delta_fit", "log_delta_via_reduction",
]
