"""Geometry of the upper half-plane and the modular group.

All functions accept complex numpy arrays (or scalars) and broadcast.
Points are plain complex numbers with positive imaginary part; the
:class:`Point` wrapper exists for validated single-point input.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

BRANCH_CONVENTION = "principal-log of (conj(z)-xi)/(-2i), Re>0"

AREA_F = math.pi / 3.0
"""Invariant area of the standard fundamental domain of PSL(2,Z)."""

AREA_F_COVOLUME_CONVENTION = math.pi / 12.0
"""Area implied by the alternate normalization (t-1)/pi * covol = (t-1)/12."""


@dataclass(frozen=True)
class Point:
    re: float
    im: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValueError("point coordinates must be finite")
        if self.im <= 0.0:
            raise ValueError(f"point must lie in the upper half-plane, got im={self.im}")

    @classmethod
    def from_complex(cls, z: complex) -> "Point":
        return cls(float(np.real(z)), float(np.imag(z)))

    def __complex__(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class BranchedLog:
    value: complex
    convention: str = BRANCH_CONVENTION


@dataclass(frozen=True)
class MoebiusTransform:
    """z -> (a z + b)/(c z + d) with ad - bc = 1."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > 1e-9:
            raise ValueError(f"determinant must be 1, got {det}")

    @classmethod
    def identity(cls) -> "MoebiusTransform":
        return cls(1, 0, 0, 1)

    @property
    def is_integral(self) -> bool:
        return all(float(v).is_integer() for v in (self.a, self.b, self.c, self.d))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return (self.a * z + self.b) / (self.c * z + self.d)

    def compose(self, other: "MoebiusTransform") -> "MoebiusTransform":
        """Return self o other."""
        return MoebiusTransform(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MoebiusTransform":
        return MoebiusTransform(self.d, -self.b, -self.c, self.a)

    def factor(self, z):
        """Automorphy factor c z + d."""
        return self.c * np.asarray(z, dtype=complex) + self.d

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


def as_points(z) -> np.ndarray:
    """Convert input to a complex array and check it lies in H."""
    z = np.asarray(z, dtype=complex)
    if np.any(~(z.imag > 0)):
        raise ValueError("all points must have strictly positive imaginary part")
    return z


def nu0_density(z):
    """Density of the invariant measure dx dy / y^2."""
    return 1.0 / np.imag(np.asarray(z, dtype=complex)) ** 2


def a_factor(z, xi):
    """(conj(z) - xi)/(-2i); its real part (Im z + Im xi)/2 is positive."""
    z = np.asarray(z, dtype=complex)
    xi = np.asarray(xi, dtype=complex)
    return (xi - np.conj(z)) / 2j


def principal_log(w):
    """np.log for complex arrays, assembled from real log and arctan2 (several times faster)."""
    w = np.asarray(w, dtype=complex)
    out = np.empty(w.shape, dtype=complex)
    out.real = 0.5 * np.log(w.real * w.real + w.imag * w.imag)
    out.imag = np.arctan2(w.imag, w.real)
    return out


def log_a(z, xi):
    """Principal logarithm of a_factor, smooth on H x H."""
    return principal_log(a_factor(z, xi))


def weight_d(z, eta):
    """sqrt(Im z Im eta)/|a(z, eta)|, in (0, 1], equal to sech(rho/2)."""
    z = np.asarray(z, dtype=complex)
    eta = np.asarray(eta, dtype=complex)
    return np.sqrt(z.imag * eta.imag) / np.abs(a_factor(z, eta))


def log_weight_d(z, eta):
    z = np.asarray(z, dtype=complex)
    eta = np.asarray(eta, dtype=complex)
    return 0.5 * (np.log(z.imag) + np.log(eta.imag)) - np.real(log_a(z, eta))


def hyperbolic_distance(z, eta):
    z = np.asarray(z, dtype=complex)
    eta = np.asarray(eta, dtype=complex)
    return 2.0 * np.arcsinh(np.abs(z - eta) / (2.0 * np.sqrt(z.imag * eta.imag)))


def log_cross_ratio(z, eta, xi):
    """Log of [conj z, eta, conj eta, xi] as a sum of per-factor principal logs."""
    eta = np.asarray(eta, dtype=complex)
    return log_a(z, xi) + np.log(eta.imag) - log_a(z, eta) - log_a(eta, xi)


def cross_ratio(z, eta, xi):
    """((conj z - xi)(conj eta - eta))/((conj z - eta)(conj eta - xi))."""
    eta = np.asarray(eta, dtype=complex)
    return a_factor(z, xi) * eta.imag / (a_factor(z, eta) * a_factor(eta, xi))


def branched_log_cross_ratio(z: complex, eta: complex, xi: complex) -> BranchedLog:
    return BranchedLog(complex(log_cross_ratio(z, eta, xi)))


def complex_power(w, t, log_w=None):
    """w^t = exp(t Log w) with the principal branch, or a supplied log."""
    if log_w is None:
        log_w = np.log(np.asarray(w, dtype=complex))
    return np.exp(t * log_w)


def cayley_to_disk(z, anchor=1j):
    """w = (z - anchor)/(z - conj(anchor)); 1 - |w|^2 = d(anchor, z)^2."""
    z = np.asarray(z, dtype=complex)
    return (z - anchor) / (z - np.conj(anchor))


def disk_to_halfplane(w, anchor=1j):
    w = np.asarray(w, dtype=complex)
    anchor = np.asarray(anchor, dtype=complex)
    return (anchor - np.conj(anchor) * w) / (1.0 - w)


def hyperbolic_midpoint(z, xi):
    """Midpoint of the geodesic segment from z to xi."""
    z = np.asarray(z, dtype=complex)
    xi = np.asarray(xi, dtype=complex)
    w = cayley_to_disk(xi, z)
    r = np.abs(w)
    scale = 1.0 / (1.0 + np.sqrt(np.maximum(1.0 - r * r, 0.0)))
    return disk_to_halfplane(w * scale, z)


def _reduce_arrays(z: np.ndarray, max_iter: int = 10_000):
    """Vectorized reduction to F; returns (z*, int matrix entries a,b,c,d)."""
    z = np.array(z, dtype=complex, copy=True)
    shape = z.shape
    z = z.ravel()
    a = np.ones(z.shape, dtype=np.int64)
    b = np.zeros(z.shape, dtype=np.int64)
    c = np.zeros(z.shape, dtype=np.int64)
    d = np.ones(z.shape, dtype=np.int64)
    active = np.arange(z.size)
    for _ in range(max_iter):
        if active.size == 0:
            break
        za = z[active]
        n = np.floor(za.real + 0.5).astype(np.int64)
        za = za - n
        a[active] -= n * c[active]
        b[active] -= n * d[active]
        inv = np.abs(za) < 1.0
        za = np.where(inv, -1.0 / np.where(inv, za, 1.0), za)
        ai, bi = a[active].copy(), b[active].copy()
        ci, di = c[active], d[active]
        a[active] = np.where(inv, -ci, ai)
        b[active] = np.where(inv, -di, bi)
        c[active] = np.where(inv, ai, ci)
        d[active] = np.where(inv, bi, di)
        z[active] = za
        active = active[inv]
    else:
        raise RuntimeError("fundamental-domain reduction did not terminate; Im z too small")
    # boundary ties: Re in [-1/2, 1/2), and Re <= 0 on the unit circle
    right = np.isclose(z.real, 0.5, rtol=0, atol=1e-14)
    z = np.where(right, z - 1.0, z)
    a = np.where(right, a - c, a)
    b = np.where(right, b - d, b)
    on_circle = np.isclose(np.abs(z), 1.0, rtol=0, atol=1e-14) & (z.real > 1e-14)
    z = np.where(on_circle, -1.0 / np.where(on_circle, z, 1.0), z)
    a, b, c, d = (np.where(on_circle, -c, a), np.where(on_circle, -d, b),
                  np.where(on_circle, a, c), np.where(on_circle, b, d))
    return z.reshape(shape), tuple(v.reshape(shape) for v in (a, b, c, d))


def reduce_points(z):
    """Vectorized reduction; returns (z*, (a, b, c, d)) with (a z + b)/(c z + d) = z*."""
    return _reduce_arrays(as_points(z))


def reduce_to_fundamental_domain(z) -> tuple[Point, MoebiusTransform]:
    zc = complex(z) if not isinstance(z, Point) else complex(z)
    zr, (a, b, c, d) = _reduce_arrays(as_points(np.array([zc])))
    return Point.from_complex(zr[0]), MoebiusTransform(int(a[0]), int(b[0]), int(c[0]), int(d[0]))


def in_fundamental_domain(z, tol: float = 1e-12):
    z = np.asarray(z, dtype=complex)
    return (np.abs(z.real) <= 0.5 + tol) & (np.abs(z) >= 1.0 - tol)


def random_modular(rng: np.random.Generator, length: int = 6) -> MoebiusTransform:
    """Random word in the generators T^n and S."""
    g = MoebiusTransform.identity()
    for _ in range(length):
        n = int(rng.integers(-3, 4))
        g = g.compose(MoebiusTransform(1, n, 0, 1)).compose(MoebiusTransform(0, -1, 1, 0))
    return g


def random_points(rng: np.random.Generator, n: int, re=(-1.0, 1.0), im=(0.3, 2.0)) -> np.ndarray:
    return rng.uniform(*re, size=n) + 1j * rng.uniform(*im, size=n)


def fundamental_domain_area(n_nodes: int = 64, height: float = 2.0) -> float:
    """nu0(F) by Gauss-Legendre over the truncated domain plus the exact tail 1/height.

    For each x in [-1/2, 1/2] the y-integral of y^-2 from sqrt(1-x^2) to height
    is evaluated by Gauss-Legendre in y; the region above height contributes
    exactly 1/height per unit width.
    """
    xg, wg = np.polynomial.legendre.leggauss(n_nodes)
    x = 0.5 * xg
    wx = 0.5 * wg
    y0 = np.sqrt(1.0 - x * x)
    yy = 0.5 * (height + y0)[:, None] + 0.5 * (height - y0)[:, None] * xg[None, :]
    wy = 0.5 * (height - y0)[:, None] * wg[None, :]
    body = np.sum(wx[:, None] * wy / yy**2)
    return float(body + 1.0 / height)
