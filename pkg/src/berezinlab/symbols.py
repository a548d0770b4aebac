"""Berezin symbol calculus on H.

A kernel is an evaluable symbol ``k(z, xi)`` (antianalytic in ``z``, analytic
in ``xi``). Kernels broadcast over numpy arrays of points. Composite kernels
such as star products evaluate their defining integrals on demand with the
disk quadrature anchored at the hyperbolic midpoint of ``(z, xi)``.

Conventions:

* ``a(z, xi) = (xi - conj z)/(2i)``, ``e_z(xi) = c_t / a(z, xi)^t``;
* the symbol of ``A`` is ``<A e_z, e_xi> / <e_z, e_xi>``;
* ``(k *_t l)(z, xi) = c_t int k(z, eta) l(eta, xi) [z, eta, xi]^t d nu0(eta)``;
* the adjoint kernel is ``k*(z, xi) = conj k(xi, z)``.

With this symbol map the star product composes operators in reverse order,
``k_A *_t k_B = k_{BA}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import halfplane as hp
from . import modular as mf
from .quadrature import QuadratureSpec, halfplane_nodes, integrate_F, integrate_FxH, IntegralResult


def c_t(t: float) -> float:
    if t <= 1.0:
        raise ValueError(f"c_t requires t > 1, got {t}")
    return (t - 1.0) / (4.0 * math.pi)


def dc_over_c(t: float) -> float:
    """c_t'/c_t = 1/(t - 1)."""
    if t <= 1.0:
        raise ValueError(f"requires t > 1, got {t}")
    return 1.0 / (t - 1.0)


def reproducing_kernel(t: float, z) -> Callable:
    """xi -> e_z^t(xi) = c_t / a(z, xi)^t."""
    c = c_t(t)
    z = np.asarray(z, dtype=complex)
    return lambda xi: c * np.exp(-t * hp.log_a(z, xi))


def _bcast(z, xi):
    z = np.asarray(z, dtype=complex)
    xi = np.asarray(xi, dtype=complex)
    return np.broadcast_arrays(z, xi)


# ------------------------------------------------------------------- kernels


class Kernel:
    """Base class; subclasses implement ``__call__(z, xi)``."""

    label: str = "kernel"
    growth: float = 0.0
    gamma_invariant: bool = False

    def __call__(self, z, xi):  # pragma: no cover - abstract
        raise NotImplementedError

    def adjoint(self) -> "Kernel":
        return AdjointKernel(self)

    def __add__(self, other):
        return LinearCombination(((1.0, self), (1.0, as_kernel(other))))

    __radd__ = __add__

    def __sub__(self, other):
        return LinearCombination(((1.0, self), (-1.0, as_kernel(other))))

    def __rsub__(self, other):
        return LinearCombination(((1.0, as_kernel(other)), (-1.0, self)))

    def __mul__(self, scalar):
        if isinstance(scalar, Kernel):
            return SchurProduct((self, scalar))
        return LinearCombination(((complex(scalar), self),))

    __rmul__ = __mul__

    def __neg__(self):
        return LinearCombination(((-1.0, self),))

    def schur(self, other: "Kernel") -> "Kernel":
        return SchurProduct((self, other))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.label})"


def as_kernel(x) -> Kernel:
    if isinstance(x, Kernel):
        return x
    return ConstantKernel(complex(x))


@dataclass(frozen=True, repr=False)
class ConstantKernel(Kernel):
    value: complex = 1.0

    @property
    def label(self):
        return f"const({self.value:g})" if isinstance(self.value, (int, float)) else f"const({complex(self.value)})"

    gamma_invariant = True

    def __call__(self, z, xi):
        z, xi = _bcast(z, xi)
        return np.full(z.shape, complex(self.value))

    def adjoint(self):
        return ConstantKernel(np.conj(complex(self.value)))


@dataclass(frozen=True, repr=False)
class FunctionKernel(Kernel):
    fn: Callable = None
    label: str = "fn"
    growth: float = 0.0
    gamma_invariant: bool = False

    def __call__(self, z, xi):
        z, xi = _bcast(z, xi)
        return np.asarray(self.fn(z, xi), dtype=complex)


@dataclass(frozen=True, repr=False)
class AdjointKernel(Kernel):
    base: Kernel = None

    @property
    def label(self):
        return f"({self.base.label})*"

    @property
    def growth(self):
        return self.base.growth

    @property
    def gamma_invariant(self):
        return self.base.gamma_invariant

    def __call__(self, z, xi):
        return np.conj(self.base(xi, z))

    def adjoint(self):
        return self.base


@dataclass(frozen=True, repr=False)
class LinearCombination(Kernel):
    terms: tuple = ()

    @property
    def label(self):
        return " + ".join(f"{complex(c):g}*{k.label}" for c, k in self.terms)

    @property
    def growth(self):
        return max((k.growth for _, k in self.terms), default=0.0)

    @property
    def gamma_invariant(self):
        return all(k.gamma_invariant for _, k in self.terms)

    def __call__(self, z, xi):
        z, xi = _bcast(z, xi)
        out = np.zeros(z.shape, dtype=complex)
        for c, k in self.terms:
            if c != 0:
                out = out + c * k(z, xi)
        return out

    def adjoint(self):
        return LinearCombination(tuple((np.conj(c), k.adjoint()) for c, k in self.terms))


@dataclass(frozen=True, repr=False)
class SchurProduct(Kernel):
    factors: tuple = ()

    @property
    def label(self):
        return " . ".join(k.label for k in self.factors)

    @property
    def growth(self):
        return sum(k.growth for k in self.factors)

    @property
    def gamma_invariant(self):
        return all(k.gamma_invariant for k in self.factors)

    def __call__(self, z, xi):
        z, xi = _bcast(z, xi)
        out = np.ones(z.shape, dtype=complex)
        for k in self.factors:
            out = out * k(z, xi)
        return out

    def adjoint(self):
        return SchurProduct(tuple(k.adjoint() for k in self.factors))


@dataclass(frozen=True, repr=False)
class RankOneKernel(Kernel):
    """Symbol of A v = coef <v, e_p> e_q on H_t.

    R(z, xi) = coef c_t a(z, xi)^t / (a(z, p)^t a(q, xi)^t).
    """

    p: complex = 1j
    q: complex = 1j
    t: float = 6.0
    coef: complex = 1.0

    @property
    def label(self):
        return f"R[{complex(self.p)},{complex(self.q)};t={self.t}]"

    def __call__(self, z, xi):
        z, xi = _bcast(z, xi)
        lg = hp.log_a(z, xi) - hp.log_a(z, self.p) - hp.log_a(self.q, xi)
        return self.coef * c_t(self.t) * np.exp(self.t * lg)

    def adjoint(self):
        return RankOneKernel(self.q, self.p, self.t, np.conj(self.coef))


def rank_one_star_closed_form(k: RankOneKernel, l: RankOneKernel) -> RankOneKernel:
    """R_{p,q} *_t R_{r,s} = (c_t / a(q, r)^t) R_{p,s}."""
    if k.t != l.t:
        raise ValueError("rank-one kernels must share t")
    t = k.t
    factor = c_t(t) * np.exp(-t * complex(hp.log_a(k.q, l.p)))
    return RankOneKernel(k.p, l.q, t, k.coef * l.coef * factor)


def rank_one_pairing(p: complex, q: complex, t: float) -> complex:
    """<e_q, e_p> = e_q(p) = c_t / a(q, p)^t."""
    return c_t(t) * complex(np.exp(-t * hp.log_a(q, p)))


@dataclass(frozen=True, repr=False)
class PhiPowerKernel(Kernel):
    """coef * phi(z, xi)^eps = coef * exp(eps log phi)."""

    eps: float = 0.1
    coef: complex = 1.0
    cfg: mf.QSeriesConfig = mf.DEFAULT_QSERIES

    @property
    def label(self):
        return f"{complex(self.coef):g}*phi^{self.eps:g}"

    @property
    def growth(self):
        return 12.0 * max(self.eps, 0.0)

    gamma_invariant = True

    def __call__(self, z, xi):
        z, xi = _bcast(z, xi)
        return self.coef * np.exp(self.eps * mf.log_phi(z, xi, self.cfg))

    def adjoint(self):
        return PhiPowerKernel(self.eps, np.conj(self.coef), self.cfg)


@dataclass(frozen=True, repr=False)
class LogPhiKernel(Kernel):
    """(scale log phi + shift) * base."""

    base: Kernel = field(default_factory=lambda: ConstantKernel(1.0))
    scale: complex = 1.0
    shift: complex = 0.0
    cfg: mf.QSeriesConfig = mf.DEFAULT_QSERIES

    @property
    def label(self):
        return f"({complex(self.scale):g} log phi + {complex(self.shift):g}).{self.base.label}"

    @property
    def growth(self):
        return self.base.growth + 1.0

    @property
    def gamma_invariant(self):
        return self.base.gamma_invariant

    def __call__(self, z, xi):
        z, xi = _bcast(z, xi)
        return (self.scale * mf.log_phi(z, xi, self.cfg) + self.shift) * self.base(z, xi)

    def adjoint(self):
        return LogPhiKernel(self.base.adjoint(), np.conj(self.scale), np.conj(self.shift), self.cfg)


# -------------------------------------------------------- integral kernels


def _pairs_eval(fn, z, xi, spec: QuadratureSpec, decay: float):
    """Evaluate c-independent integrals int fn(z, eta, xi, log_cross) d nu0(eta) pairwise.

    ``fn`` receives z (P,1), eta (P,M), xi (P,1), log_cross (P,M) and returns
    the integrand; nodes are anchored at the hyperbolic midpoint of each pair.
    """
    z, xi = _bcast(z, xi)
    shape = z.shape
    zf = z.ravel()
    xf = xi.ravel()
    out = np.empty(zf.shape, dtype=complex)
    m_nodes = spec.n_radial * spec.n_angular
    per = max(1, spec.chunk // m_nodes)
    for s in range(0, zf.size, per):
        zc = zf[s:s + per, None]
        xc = xf[s:s + per, None]
        mid = hp.hyperbolic_midpoint(zc[:, 0], xc[:, 0])
        eta, wt = halfplane_nodes(mid, spec, decay)
        lc = hp.log_cross_ratio(zc, eta, xc)
        out[s:s + per] = np.sum(wt * fn(zc, eta, xc, lc), axis=-1)
    return out.reshape(shape)


def _decay(t: float, *kernels: Kernel) -> float:
    return 2.0 * t - sum(k.growth for k in kernels)


@dataclass(frozen=True, repr=False)
class StarKernel(Kernel):
    """k *_t l evaluated by quadrature."""

    k: Kernel = None
    l: Kernel = None
    t: float = 6.0
    spec: QuadratureSpec = field(default_factory=QuadratureSpec)

    @property
    def label(self):
        return f"({self.k.label} *_{self.t:g} {self.l.label})"

    @property
    def growth(self):
        return self.k.growth + self.l.growth

    @property
    def gamma_invariant(self):
        return self.k.gamma_invariant and self.l.gamma_invariant

    def __call__(self, z, xi):
        c = c_t(self.t)
        t = self.t

        def integrand(zz, eta, xx, lc):
            return self.k(zz, eta) * self.l(eta, xx) * np.exp(t * lc)

        return c * _pairs_eval(integrand, z, xi, self.spec, _decay(t, self.k, self.l))

    def adjoint(self):
        return StarKernel(self.l.adjoint(), self.k.adjoint(), self.t, self.spec)


def star_product(k: Kernel, l: Kernel, t: float, spec: QuadratureSpec | None = None) -> StarKernel:
    c_t(t)
    return StarKernel(as_kernel(k), as_kernel(l), t, spec or QuadratureSpec())


@dataclass(frozen=True, repr=False)
class SandwichKernel(Kernel):
    """c_t int k(z, eta) f(eta) l(eta, xi) [z, eta, xi]^t d nu0(eta).

    For antianalytic/analytic symbols this equals k *_t T_f *_t l.
    """

    k: Kernel = None
    f: Callable = None
    l: Kernel = None
    t: float = 6.0
    spec: QuadratureSpec = field(default_factory=QuadratureSpec)
    f_growth: float = 0.0
    f_label: str = "f"
    f_gamma_invariant: bool = True

    @property
    def label(self):
        return f"({self.k.label} *T[{self.f_label}]* {self.l.label})"

    @property
    def growth(self):
        return self.k.growth + self.l.growth + self.f_growth

    @property
    def gamma_invariant(self):
        return self.k.gamma_invariant and self.l.gamma_invariant and self.f_gamma_invariant

    def __call__(self, z, xi):
        c = c_t(self.t)
        t = self.t

        def integrand(zz, eta, xx, lc):
            return self.k(zz, eta) * self.f(eta) * self.l(eta, xx) * np.exp(t * lc)

        decay = _decay(t, self.k, self.l) - self.f_growth
        return c * _pairs_eval(integrand, z, xi, self.spec, decay)

    def adjoint(self):
        f = self.f
        return SandwichKernel(self.l.adjoint(), lambda eta: np.conj(f(eta)), self.k.adjoint(), self.t,
                              self.spec, self.f_growth, f"conj {self.f_label}", self.f_gamma_invariant)


def toeplitz_symbol(f: Callable, t: float, spec: QuadratureSpec | None = None, growth: float = 0.0,
                    label: str = "f", gamma_invariant: bool = True) -> SandwichKernel:
    """Symbol of the Toeplitz operator T_f on H_t: c_t int f(eta) [z, eta, xi]^t d nu0(eta)."""
    one = ConstantKernel(1.0)
    return SandwichKernel(one, f, one, t, spec or QuadratureSpec(), growth, label, gamma_invariant)


def sandwich(k: Kernel, f: Callable, l: Kernel, t: float, spec: QuadratureSpec | None = None,
             growth: float = 0.0, label: str = "f") -> SandwichKernel:
    return SandwichKernel(as_kernel(k), f, as_kernel(l), t, spec or QuadratureSpec(), growth, label)


@dataclass(frozen=True, repr=False)
class CocycleKernel(Kernel):
    """C_t(k, l) = (c'/c) k *_t l + c_t int k l [z,eta,xi]^t log[z,eta,xi] d nu0."""

    k: Kernel = None
    l: Kernel = None
    t: float = 6.0
    spec: QuadratureSpec = field(default_factory=QuadratureSpec)

    @property
    def label(self):
        return f"C_{self.t:g}({self.k.label}, {self.l.label})"

    @property
    def growth(self):
        return self.k.growth + self.l.growth

    @property
    def gamma_invariant(self):
        return self.k.gamma_invariant and self.l.gamma_invariant

    def __call__(self, z, xi):
        c = c_t(self.t)
        t = self.t
        g = dc_over_c(t)

        def integrand(zz, eta, xx, lc):
            return self.k(zz, eta) * self.l(eta, xx) * np.exp(t * lc) * (g + lc)

        return c * _pairs_eval(integrand, z, xi, self.spec, _decay(t, self.k, self.l) - 0.5)


def cocycle(k: Kernel, l: Kernel, t: float, spec: QuadratureSpec | None = None) -> CocycleKernel:
    c_t(t)
    return CocycleKernel(as_kernel(k), as_kernel(l), t, spec or QuadratureSpec())


def cocycle_finite_difference(k: Kernel, l: Kernel, t: float, z, xi, h: float = 0.05,
                              spec: QuadratureSpec | None = None, side: int = 1):
    """Richardson-extrapolated one-sided difference of s -> k *_s l at s = t."""
    spec = spec or QuadratureSpec()
    f0 = star_product(k, l, t, spec)(z, xi)
    f1 = star_product(k, l, t + side * h, spec)(z, xi)
    f2 = star_product(k, l, t + side * h / 2, spec)(z, xi)
    d1 = (f1 - f0) / (side * h)
    d2 = (f2 - f0) / (side * h / 2)
    return 2.0 * d2 - d1


# ------------------------------------------------------ traces and norms


def _require_invariant(*kernels: Kernel) -> None:
    for k in kernels:
        if not k.gamma_invariant:
            raise ValueError(f"kernel {k.label} is not Gamma-invariant; trace over F is not defined")


def trace(k: Kernel, spec: QuadratureSpec | None = None, area: float = hp.AREA_F) -> IntegralResult:
    """tau(k) = (1/area) int_F k(z, z) d nu0."""
    _require_invariant(k)
    r = integrate_F(lambda z: k(z, z), spec)
    return IntegralResult(r.value / area, r.error_estimate / area, r.nodes_used, r.flagged)


def pairing(x: Kernel, y: Kernel, t: float, spec: QuadratureSpec | None = None,
            weight: Callable | None = None, area: float = hp.AREA_F) -> IntegralResult:
    """tau(x *_t y) = (c_t/area) int_F int_H x(z, eta) y(eta, z) d^{2t} [weight(z, eta)]."""
    _require_invariant(x, y)
    c = c_t(t)

    def f(z, eta):
        val = x(z, eta) * y(eta, z) * hp.weight_d(z, eta) ** (2.0 * t)
        if weight is not None:
            val = val * weight(z, eta)
        return val

    r = integrate_FxH(f, _decay(t, x, y), spec)
    return IntegralResult(c * r.value / area, c * r.error_estimate / area, r.nodes_used, r.flagged)


def inner_product(k: Kernel, l: Kernel, t: float, spec: QuadratureSpec | None = None) -> IntegralResult:
    """<k, l> = tau(k *_t l*) = (c/area) int int k conj(l) d^{2t}."""
    return pairing(k, l.adjoint(), t, spec)


def l2_norm(k: Kernel, t: float, spec: QuadratureSpec | None = None) -> float:
    r = inner_product(k, k, t, spec)
    return math.sqrt(max(r.value.real, 0.0))


def dirichlet_form(k: Kernel, l: Kernel, t: float, spec: QuadratureSpec | None = None) -> IntegralResult:
    """E_t(k, l) = (c/area) int_F int_H k(z,eta) conj l(z,eta) d^{2t} ln d."""
    return pairing(k, l.adjoint(), t, spec, weight=lambda z, eta: hp.log_weight_d(z, eta))


@dataclass(frozen=True)
class CocycleTrace:
    value: complex
    dirichlet_route: complex
    derivative_route: complex

    @property
    def residual(self) -> float:
        return abs(self.value - self.dirichlet_route)

    @property
    def derivative_residual(self) -> float:
        return abs(self.value - self.derivative_route)


def cocycle_trace(k: Kernel, l: Kernel, t: float, spec: QuadratureSpec | None = None,
                  h: float = 0.05) -> CocycleTrace:
    """tau(C_t(k, l)) by three routes.

    primary: trace of the cocycle kernel; dirichlet: (c'/c) tau(k*l) + 2 E_t(k, l*);
    derivative: Richardson difference of s -> tau(k *_s l).
    """
    spec = spec or QuadratureSpec()
    primary = trace(cocycle(k, l, t, spec), spec).value
    tkl = pairing(k, l, t, spec).value
    dirichlet = dc_over_c(t) * tkl + 2.0 * dirichlet_form(k, l.adjoint(), t, spec).value
    f1 = pairing(k, l, t + h, spec).value
    f2 = pairing(k, l, t + h / 2, spec).value
    deriv = 2.0 * (f2 - tkl) / (h / 2) - (f1 - tkl) / h
    return CocycleTrace(primary, dirichlet, deriv)


# ------------------------------------------------------------------ hat norm


def default_probe_set(n: int = 32) -> np.ndarray:
    """32 points in F (a deterministic grid) and their translates by +-1."""
    xs = np.linspace(-0.45, 0.45, 4)
    ys = np.array([0.95, 1.3, 1.9, 3.0])
    base = (xs[:, None] + 1j * ys[None, :]).ravel()
    base = np.where(np.abs(base) < 1.0, base.real + 1j * np.sqrt(1 - base.real**2 + 1e-9) + 0.05j, base)
    pts = np.concatenate([base, base + 1.0])
    return pts[:n]


def hat_norm(k: Kernel, t: float, spec: QuadratureSpec | None = None, probes=None) -> float:
    """max of sup_z int |k(z,eta)| d^t and sup_z int |k(eta,z)| d^t over a probe set (a lower bound)."""
    spec = spec or QuadratureSpec()
    probes = default_probe_set() if probes is None else np.asarray(probes, dtype=complex)
    eta, wt = halfplane_nodes(probes, spec, t - k.growth)
    z = probes[:, None]
    dt = hp.weight_d(z, eta) ** t
    left = np.sum(wt * np.abs(k(z, eta)) * dt, axis=-1)
    right = np.sum(wt * np.abs(k(eta, z)) * dt, axis=-1)
    return float(max(left.max(), right.max()))


# ------------------------------------------------------------- positivity


@dataclass(frozen=True)
class GramMatrix:
    matrix: np.ndarray
    t: float
    label: str

    def hermitian_defect(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def eigenvalues(self) -> np.ndarray:
        h = 0.5 * (self.matrix + self.matrix.conj().T)
        return np.linalg.eigvalsh(h)


@dataclass(frozen=True)
class PointCloud:
    points: tuple

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=complex)
        if pts.size < 1:
            raise ValueError("cloud must contain at least one point")
        hp.as_points(pts)
        if len(set(np.round(pts, 14).tolist())) != pts.size:
            raise ValueError("cloud points must be distinct")

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=complex)

    @classmethod
    def random(cls, rng: np.random.Generator, n: int, re=(-1.0, 1.0), im=(0.3, 2.0)) -> "PointCloud":
        return cls(tuple(hp.random_points(rng, n, re, im).tolist()))


def gram_matrix(k: Kernel | None, t: float, cloud: PointCloud, normalized: bool = True) -> GramMatrix:
    """[k(z_i, z_j) / a(z_i, z_j)^t], optionally congruence-normalized by (y_i y_j)^{t/2}.

    The normalization is a congruence by a positive diagonal matrix, so it
    preserves the inertia (and hence every sign test) while making the
    diagonal of the base kernel equal to one.
    """
    z = cloud.array
    zi, zj = z[:, None], z[None, :]
    base = np.exp(-t * hp.log_a(zi, zj))
    if normalized:
        base = base * np.exp(0.5 * t * (np.log(zi.imag) + np.log(zj.imag)))
    vals = base if k is None else k(zi, zj) * base
    return GramMatrix(np.asarray(vals, dtype=complex), t, "base" if k is None else k.label)


def block_gram_matrix(kernels, t: float, cloud: PointCloud, normalized: bool = True) -> np.ndarray:
    """(N P) x (N P) block matrix [K_ij(z_p, z_q)/a^t] for an N x N array of kernels."""
    n = len(kernels)
    blocks = [[gram_matrix(kernels[i][j], t, cloud, normalized).matrix for j in range(n)] for i in range(n)]
    return np.block(blocks)


def default_psd_tolerance(matrix: np.ndarray) -> float:
    """1e-8 times dimension times the largest diagonal entry."""
    return 1e-8 * matrix.shape[0] * float(np.max(np.abs(np.diag(matrix))))


def _min_max_eig(m: np.ndarray) -> tuple[float, float]:
    ev = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    return float(ev[0]), float(ev[-1])


def _cloud_params(cloud: PointCloud) -> list:
    return [complex(p) for p in cloud.array]


def psd_check(k: Kernel, t: float, cloud: PointCloud, tol: float | None = None,
              normalized: bool = True) -> "VerificationReport":
    """0 <= [k/a^t] <= [1/a^t] on the cloud; residuals are the sign violations."""
    from .reports import VerificationReport

    g = gram_matrix(k, t, cloud, normalized).matrix
    base = gram_matrix(None, t, cloud, normalized).matrix
    tol = default_psd_tolerance(base) if tol is None else tol
    lo, _ = _min_max_eig(g)
    lo_diff, _ = _min_max_eig(base - g)
    return VerificationReport.build(
        "symbols.psd_check", "two-sided Gram bound for symbols of contractions",
        labels={"k": k.label}, params={"t": t, "cloud": _cloud_params(cloud)},
        residuals=[max(-lo, 0.0), max(-lo_diff, 0.0)], tolerance=tol,
        details={"min_eig": lo, "min_eig_upper_gap": lo_diff,
                 "lower_bound_pass": lo >= -tol, "upper_bound_pass": lo_diff >= -tol},
    )


def matrix_psd_check(kernels, t: float, cloud: PointCloud, tol: float | None = None,
                     normalized: bool = True) -> "VerificationReport":
    """Block Gram matrix [K_ij(z_p, z_q)/a^t] of an N x N kernel array is PSD."""
    from .reports import VerificationReport

    m = block_gram_matrix(kernels, t, cloud, normalized)
    tol = default_psd_tolerance(m) if tol is None else tol
    ev = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    labels = [[k.label if k is not None else "base" for k in row] for row in kernels]
    return VerificationReport.build(
        "symbols.matrix_psd_check", "block Gram matrix positivity",
        labels={"K": labels}, params={"t": t, "cloud": _cloud_params(cloud)},
        residuals=[max(-float(ev[0]), 0.0)], tolerance=tol,
        details={"spectrum": ev.tolist()},
    )


def complete_positivity_probe(k_list, t0: float, t: float, cloud: PointCloud,
                              spec: QuadratureSpec | None = None, tol: float = 1e-3,
                              s_offset: float = 0.1) -> "VerificationReport":
    """Block matrix of cocycle kernels [C_t(k_j, k_i*)] on the cloud must be NSD.

    The cross-check assembles the Stinespring defect D_ij = k_j *_s k_i* - k_j *_t k_i*
    at s = t + s_offset on the same cloud (Gram exponent s); it is NSD as well.
    """
    from .reports import VerificationReport

    if not t0 < t:
        raise ValueError("requires t0 < t")
    spec = spec or QuadratureSpec()
    ks = [as_kernel(k) for k in k_list]
    n = len(ks)
    blocks = [[cocycle(ks[j], ks[i].adjoint(), t, spec) for j in range(n)] for i in range(n)]
    m = block_gram_matrix(blocks, t, cloud)
    ev = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    s = t + s_offset
    dblocks = [[star_product(ks[j], ks[i].adjoint(), s, spec) - star_product(ks[j], ks[i].adjoint(), t, spec)
                for j in range(n)] for i in range(n)]
    dm = block_gram_matrix(dblocks, s, cloud)
    dev = np.linalg.eigvalsh(0.5 * (dm + dm.conj().T))
    return VerificationReport.build(
        "symbols.complete_positivity_probe", "negativity of the cocycle block matrix",
        labels={"k_list": [k.label for k in ks]}, params={"t0": t0, "t": t, "s": s, "cloud": _cloud_params(cloud)},
        residuals=[max(float(ev[-1]), 0.0), max(float(dev[-1]), 0.0)], tolerance=tol, spec=spec,
        details={"cocycle_spectrum": ev.tolist(), "stinespring_spectrum": dev.tolist()},
    )


def submultiplicativity_ratio(k: Kernel, l: Kernel, s: float, spec: QuadratureSpec | None = None,
                              probes=None) -> float:
    """hat_norm(k *_s l) / (hat_norm(k) hat_norm(l)), all at s, on the probe set."""
    spec = spec or QuadratureSpec()
    num = hat_norm(star_product(k, l, s, spec), s, spec, probes)
    return num / (hat_norm(k, s, spec, probes) * hat_norm(l, s, spec, probes))


def toeplitz_trace_check(f: Callable, t: float, spec: QuadratureSpec | None = None) -> tuple[complex, complex]:
    """tau(T_f) by tracing the quadrature Toeplitz symbol, and (1/area) int_F f by direct quadrature."""
    spec = spec or QuadratureSpec()
    lhs = trace(toeplitz_symbol(f, t, spec), spec).value
    rhs = integrate_F(f, spec).value / hp.AREA_F
    return lhs, rhs


__all__ = [name for name in dir() if not name.startswith("_")]
