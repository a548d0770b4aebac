"""Deformation machinery: intertwiners, Schur multiplication by log phi,
the generator L_t, test vectors, monotone families and coboundary identities.

Normalizations used throughout (each is checked numerically in the tests):

* ``X_t(k) = ((1/12) log phi - c'/c) k`` and ``T = T_f`` with
  ``f(eta) = (1/12) log phi(eta, eta)``; the generator is
  ``L_t = X_t - (1/2){T, .}`` and its coboundary is the cocycle ``C_t``.
* Pairings use ``<x, y> = tau(x *_t y*)``.
* ``R_t`` multiplies a kernel by ``-log d - (1/2) c'/c``.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import halfplane as hp
from . import modular as mf
from . import nystrom as ny
from .invariant_traces import CyclicTerms, InvariantTraceEngine, cyclic_terms, sym_commutator_trace, composite_generator_trace
from .quadrature import QuadratureSpec, cartesian_rule, integrate_F, integrate_FxH
from .reports import VerificationReport
from .symbols import (
    ConstantKernel, FunctionKernel, Kernel, LogPhiKernel, PhiPowerKernel, PointCloud, SchurProduct,
    StarKernel, as_kernel, c_t, cocycle, dc_over_c, gram_matrix, sandwich, star_product, toeplitz_symbol, trace,
)


@dataclass(frozen=True)
class DeformationParams:
    t: float = 8.0
    s: float | None = None
    epsilon: float = 0.1
    h: float = 0.05

    def __post_init__(self) -> None:
        if self.t <= 1.0:
            raise ValueError("t must exceed 1")
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        if self.h <= 0.0:
            raise ValueError("h must be positive")


# ------------------------------------------------------------- log phi helpers


def diag_log_phi(eta, cfg: mf.QSeriesConfig = mf.DEFAULT_QSERIES):
    """log phi(eta, eta) = 2 log G(eta), real."""
    eta = np.asarray(eta, dtype=complex)
    return 2.0 * (np.real(mf.log_delta1(eta, cfg)) + 6.0 * np.log(eta.imag))


def toeplitz_generator_function(scale: float = 1.0 / 12.0):
    """eta -> scale log phi(eta, eta)."""
    return lambda eta: scale * diag_log_phi(eta)


# ------------------------------------------------------------ intertwiners


def intertwiner_symbol(f_log: Callable, k_order: float, t: float,
                       g_log: Callable | None = None, label: str = "f") -> Kernel:
    """Symbol of S_f S_g* on H_t: (c_{t-k}/c_t) conj f(z) g(xi) a(z, xi)^k, with f = exp(f_log)."""
    if t - k_order <= 1.0:
        raise ValueError("intertwiner requires t - k_order > 1")
    g_log = f_log if g_log is None else g_log
    const = c_t(t - k_order) / c_t(t)

    def fn(z, xi):
        return const * np.exp(np.conj(f_log(z)) + g_log(xi) + k_order * hp.log_a(z, xi))

    return FunctionKernel(fn, f"S_{label} S_{label}* (k={k_order:g}, t={t:g})", 0.0, False)


def delta_power_intertwiner(eps: float, t: float) -> Kernel:
    """Symbol of S S* for S = multiplication by Delta_1^eps: (c_{t-12 eps}/c_t) phi^eps."""
    if t - 12.0 * eps <= 1.0:
        raise ValueError("requires t - 12 eps > 1")
    return PhiPowerKernel(eps, c_t(t - 12.0 * eps) / c_t(t))


def theta(k: Kernel, s: float, t: float) -> Kernel:
    """theta_{s,t}(k) = (c_t/c_s) k phi^{(s-t)/12}, s >= t."""
    if s < t:
        raise ValueError("theta requires s >= t; use chi_dual for s < t")
    if s == t:
        return k
    return SchurProduct((as_kernel(k), PhiPowerKernel((s - t) / 12.0, c_t(t) / c_t(s))))


def lambda_schur(k: Kernel, scale: float = 1.0, shift: float = 0.0) -> Kernel:
    """(scale log phi + shift) k, pointwise."""
    return LogPhiKernel(as_kernel(k), scale, shift)


def lambda_finite_difference(k: Kernel, z, xi, h: float) -> np.ndarray:
    """Richardson combination of ((phi^h - 1)/h) k at steps h and h/2."""
    lp = mf.log_phi(z, xi)
    d1 = np.expm1(h * lp) / h
    d2 = np.expm1(0.5 * h * lp) / (0.5 * h)
    return (2.0 * d2 - d1) * k(z, xi)


def shifted_log_phi_kernel(t: float, eps: float) -> Kernel:
    """phi^eps [log phi - 12/(t - 1 - 12 eps)]."""
    if t - 1.0 - 12.0 * eps <= 0:
        raise ValueError("requires t - 1 - 12 eps > 0")
    return LogPhiKernel(PhiPowerKernel(eps), 1.0, -12.0 / (t - 1.0 - 12.0 * eps))


def scaled_phi_power_kernel(v: float, eps: float, k: Kernel) -> Kernel:
    """((v - 1 - eps)/(v - 1)) phi^{eps/12} k."""
    return SchurProduct((PhiPowerKernel(eps / 12.0, (v - 1.0 - eps) / (v - 1.0)), as_kernel(k)))


def g_epsilon_family(eps: float, t: float) -> Kernel:
    """G_eps = (1/eps)[(c_{t-12 eps}/c_t) phi^eps - 1], evaluated without cancellation."""
    if eps <= 0 or t - 12.0 * eps <= 1.0:
        raise ValueError("requires eps > 0 and t - 12 eps > 1")
    rho = c_t(t - 12.0 * eps) / c_t(t)
    shift = -12.0 / (t - 1.0)

    def fn(z, xi):
        return rho * np.expm1(eps * mf.log_phi(z, xi)) / eps + shift

    return FunctionKernel(fn, f"G_{eps:g}", 1.0, True)


def g_epsilon_limit(t: float) -> Kernel:
    """Pointwise limit of G_eps: log phi - 12 c'/c."""
    return LogPhiKernel(ConstantKernel(1.0), 1.0, -12.0 * dc_over_c(t))


# ------------------------------------------------------------- generator


def X_t(k: Kernel, t: float) -> Kernel:
    """((1/12) log phi - c'/c) k."""
    return lambda_schur(k, 1.0 / 12.0, -dc_over_c(t))


def toeplitz_left(k: Kernel, t: float, spec: QuadratureSpec) -> Kernel:
    """T *_t k by the insertion rule."""
    return sandwich(ConstantKernel(1.0), toeplitz_generator_function(), k, t, spec, 2.0, "log phi/12")


def toeplitz_right(k: Kernel, t: float, spec: QuadratureSpec) -> Kernel:
    """k *_t T by the insertion rule."""
    return sandwich(k, toeplitz_generator_function(), ConstantKernel(1.0), t, spec, 2.0, "log phi/12")


def toeplitz_middle(k: Kernel, l: Kernel, t: float, spec: QuadratureSpec, f: Callable | None = None) -> Kernel:
    """k *_t T_f *_t l by the insertion rule (default f = (1/12) log phi diagonal)."""
    f = toeplitz_generator_function() if f is None else f
    return sandwich(k, f, l, t, spec, 2.0, "f")


def generator_L(k: Kernel, t: float, spec: QuadratureSpec) -> Kernel:
    """L_t(k) = X_t(k) - (1/2)(T *_t k + k *_t T)."""
    k = as_kernel(k)
    return X_t(k, t) - 0.5 * (toeplitz_left(k, t, spec) + toeplitz_right(k, t, spec))


def coboundary_L(k: Kernel, l: Kernel, t: float, spec: QuadratureSpec,
                 inner_spec: QuadratureSpec | None = None) -> Kernel:
    """(del L)(k, l) = L(k*l) - L(k)*l - k*L(l); ``inner_spec`` drives the nested integrals."""
    inner = inner_spec or spec
    kl = star_product(k, l, t, inner)
    return (generator_L(kl, t, spec) - star_product(generator_L(k, t, inner), l, t, spec)
            - star_product(k, generator_L(l, t, inner), t, spec))


def generator_cocycle_sides(k: Kernel, l: Kernel, t: float, spec: QuadratureSpec) -> tuple[Kernel, Kernel]:
    """Both sides of X(k*l) + k*T*l = X(k)*l + C(k,l) + k*X(l)."""
    lhs = X_t(star_product(k, l, t, spec), t) + toeplitz_middle(k, l, t, spec)
    rhs = star_product(X_t(k, t), l, t, spec) + cocycle(k, l, t, spec) + star_product(k, X_t(l, t), t, spec)
    return lhs, rhs


def theta_multiplicativity_sides(k: Kernel, l: Kernel, s: float, t: float,
                                 spec: QuadratureSpec) -> tuple[Kernel, Kernel]:
    """theta(k *_t T_{G^{2 eps}} *_t l) and theta(k) *_s theta(l), eps = (s - t)/12."""
    eps = (s - t) / 12.0
    f = lambda eta: np.exp(eps * diag_log_phi(eta))  # noqa: E731
    lhs = theta(sandwich(k, f, l, t, spec, 0.0, f"G^{2 * eps:g}"), s, t)
    rhs = star_product(theta(k, s, t), theta(l, s, t), s, spec)
    return lhs, rhs


# --------------------------------------------------------- test vectors


@dataclass(frozen=True)
class TestVector:
    """v(z) = lam Delta_1^{eps_delta}(z) exp(i eps_damp z) / (z - conj a)^alpha."""

    a: complex = 1j
    alpha: complex = 4.0
    eps_damp: float = 1.0
    eps_delta: float = 0.0
    lam: complex = 1.0

    __test__ = False  # not a pytest class

    def __post_init__(self) -> None:
        if np.imag(self.a) <= 0:
            raise ValueError("a must lie in H")
        if np.real(self.alpha) < 3.0:
            raise ValueError("Re alpha must be at least 3")
        if self.eps_damp <= 0:
            raise ValueError("eps_damp must be positive")
        if self.eps_delta < 0:
            raise ValueError("eps_delta must be non-negative")

    def log_value(self, z):
        z = np.asarray(z, dtype=complex)
        out = 1j * self.eps_damp * z - self.alpha * np.log(z - np.conj(self.a))
        if self.eps_delta:
            out = out + self.eps_delta * mf.log_delta1(z)
        return out

    def __call__(self, z):
        if self.lam == 0:
            return np.zeros(np.shape(z), dtype=complex)
        return self.lam * np.exp(self.log_value(z))

    def scaled(self, c: complex) -> "TestVector":
        return TestVector(self.a, self.alpha, self.eps_damp, self.eps_delta, self.lam * c)

    @property
    def label(self) -> str:
        return (f"v(a={complex(self.a)}, alpha={complex(self.alpha)}, damp={self.eps_damp}, "
                f"delta^{self.eps_delta}, lam={complex(self.lam)})")

    def decay_rate(self) -> float:
        return 2.0 * self.eps_damp + 4.0 * math.pi * self.eps_delta

    def rule(self, t: float, n_x: int = 64, n_y: int = 40):
        return cartesian_rule(float(np.real(self.a)), max(1.0, float(np.imag(self.a))) * 1.5, t,
                              self.decay_rate(), n_x, n_y)


@dataclass(frozen=True)
class FormRule:
    n_x: int = 64
    n_y: int = 40

    def half(self) -> "FormRule":
        return FormRule(max(4, self.n_x // 2), max(4, self.n_y // 2))


def nu_t_norm_sq(v: TestVector, t: float, rule: FormRule = FormRule()) -> float:
    z, w = v.rule(t, rule.n_x, rule.n_y)
    return float(np.sum(w * np.abs(v(z)) ** 2))


def diagonal_form(v: TestVector, w: TestVector, weight: Callable, t: float,
                  rule: FormRule = FormRule()) -> complex:
    """int weight(z) v(z) conj w(z) d nu_t."""
    z, wt = v.rule(t, rule.n_x, rule.n_y)
    return complex(np.sum(wt * weight(z) * v(z) * np.conj(w(z))))


def double_form(kernel: Callable | None, v: TestVector, w: TestVector, t: float,
                rule: FormRule = FormRule()) -> complex:
    """c_t int int kernel(z, xi) / a(z, xi)^t v(z) conj w(xi) d nu_t d nu_t (= <A v, w>)."""
    z, wt = v.rule(t, rule.n_x, rule.n_y)
    vz = wt * v(z)
    wz = wt * w(z)
    zi, zj = z[:, None], z[None, :]
    k = np.exp(-t * hp.log_a(zi, zj))
    if kernel is not None:
        k = k * kernel(zi, zj)
    return complex(c_t(t) * (vz @ k @ np.conj(wz)))


def toeplitz_lnphi_form(v: TestVector, w: TestVector, t: float, rule: FormRule = FormRule()) -> complex:
    """<T_{log phi} v, w> = int log phi(z, z) v conj w d nu_t."""
    if v.eps_delta <= 0 or w.eps_delta <= 0:
        raise ValueError("test vectors need eps_delta > 0 for the log phi form")
    return diagonal_form(v, w, diag_log_phi, t, rule)


@dataclass(frozen=True)
class IdentityResidual:
    lhs: complex
    rhs: complex

    @property
    def relative(self) -> float:
        return abs(self.lhs - self.rhs) / max(abs(self.lhs), 1e-300)


def log_height_identity(v: TestVector, t: float, rule: FormRule = FormRule()) -> IdentityResidual:
    """int log y |v|^2 d nu_t  vs  c int int log a / a^t v conj v - (c'/c) |v|^2."""
    lhs = diagonal_form(v, v, lambda z: np.log(z.imag), t, rule)
    rhs = double_form(lambda z, xi: hp.log_a(z, xi), v, v, t, rule) - dc_over_c(t) * nu_t_norm_sq(v, t, rule)
    return IdentityResidual(lhs, rhs)


def log_phi_form_identity(v: TestVector, t: float, rule: FormRule = FormRule(), constant: float = 12.0) -> IdentityResidual:
    """int log phi(z,z)|v|^2  vs  c int int log phi / a^t v conj v - constant (c'/c) |v|^2."""
    lhs = toeplitz_lnphi_form(v, v, t, rule)
    rhs = double_form(lambda z, xi: mf.log_phi(z, xi), v, v, t, rule) - constant * dc_over_c(t) * nu_t_norm_sq(v, t, rule)
    return IdentityResidual(lhs, rhs)


@dataclass(frozen=True)
class ConvergenceFit:
    epsilons: tuple
    values: tuple
    target: complex
    richardson: complex
    slope: float

    @property
    def relative_error(self) -> float:
        return abs(self.richardson - self.target) / abs(self.target)


def g_epsilon_form_convergence(v: TestVector, t: float, eps: float = 0.04, rule: FormRule = FormRule()) -> ConvergenceFit:
    """<G_eps v, v> at eps, eps/2, eps/4; slope of successive differences and Richardson limit."""
    target = toeplitz_lnphi_form(v, v, t, rule)
    z, wt = v.rule(t, rule.n_x, rule.n_y)
    vz = wt * v(z)
    zi, zj = z[:, None], z[None, :]
    base = c_t(t) * np.exp(-t * hp.log_a(zi, zj))
    lp = mf.log_phi(zi, zj)
    epss = (eps, eps / 2.0, eps / 4.0)
    vals = []
    for e in epss:
        rho = c_t(t - 12.0 * e) / c_t(t)
        g = rho * np.expm1(e * lp) / e - 12.0 / (t - 1.0)
        vals.append(complex(vz @ (base * g) @ np.conj(vz)))
    d1 = abs(vals[0] - vals[1])
    d2 = abs(vals[1] - vals[2])
    slope = math.log(d1 / d2, 2.0)
    rich = 2.0 * vals[2] - vals[1]
    return ConvergenceFit(epss, tuple(vals), target, rich, slope)


# --------------------------------------------------------- positivity helpers


def normalized_gram(kernel: Kernel | None, t: float, cloud: PointCloud) -> np.ndarray:
    m = gram_matrix(kernel, t, cloud, normalized=True).matrix
    return 0.5 * (m + m.conj().T)


def loewner_min(a: np.ndarray, b: np.ndarray) -> float:
    """Smallest eigenvalue of a - b (>= 0 means a >= b)."""
    d = a - b
    return float(np.linalg.eigvalsh(0.5 * (d + d.conj().T))[0])


def fit_g_epsilon_monotonicity_constant(t: float, pairs: Sequence[tuple[float, float]], clouds: Sequence[PointCloud]) -> float:
    """Largest K with Gram(G_e) - Gram(G_e') >= K (e - e') Gram(1) on all clouds and pairs e > e'."""
    best = math.inf
    for cloud in clouds:
        g0 = normalized_gram(None, t, cloud)
        l0 = np.linalg.cholesky(g0)
        li = np.linalg.inv(l0)
        for e, ep in pairs:
            d = normalized_gram(g_epsilon_family(e, t), t, cloud) - normalized_gram(g_epsilon_family(ep, t), t, cloud)
            m = li @ d @ li.conj().T
            lam = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0])
            best = min(best, lam / (e - ep))
    return best


def g_epsilon_monotonicity_margin(t: float, K: float, e: float, ep: float, cloud: PointCloud) -> float:
    """Smallest eigenvalue of Gram(G_e) - Gram(G_e') - K (e - e') Gram(1)."""
    g0 = normalized_gram(None, t, cloud)
    d = normalized_gram(g_epsilon_family(e, t), t, cloud) - normalized_gram(g_epsilon_family(ep, t), t, cloud)
    return loewner_min(d, K * (e - ep) * g0)


# --------------------------------------------------------- trace identities


def delta_trace_ratio(s: float, spec: QuadratureSpec) -> dict:
    """Both traces of S_g S_g* and S_g* S_g for g = Delta_1 (weight 12), by independent routes.

    tau(S_g S_g*) in A_{s+12}: diagonal of g(z) (S_g* e_z)(z) / e_z(z), with
    S_g* e_z computed by an H-quadrature.  tau(S_g* S_g) in A_s: the Toeplitz
    operator with symbol G^2 on H_s, traced as the diagonal of its
    quadrature symbol.
    """
    t = s + 12.0
    cs, ct = c_t(s), c_t(t)

    def sgsg_diag(z, eta):
        # g(z) conj g(eta) e^t_z(eta) conj e^s_z(eta) y_eta^t / e^t_z(z), integrand in eta (nu0)
        l1z = mf.log_delta1(z)
        l1e = mf.log_delta1(eta)
        log_val = (l1z + np.conj(l1e) - t * hp.log_a(z, eta) - s * hp.log_a(eta, z)
                   + t * np.log(eta.imag) + t * np.log(z.imag))
        return ct * cs / ct * np.exp(log_val)

    r1 = integrate_FxH(sgsg_diag, 2.0 * s + 12.0, spec)
    tau_ss_star = r1.value / hp.AREA_F
    gsq = lambda eta: mf.height_G(eta) ** 2  # noqa: E731
    tsym = toeplitz_symbol(gsq, s, spec, 0.0, "G^2")
    r2 = trace(tsym, spec)
    tau_sstar_s = r2.value
    closed = integrate_F(gsq, spec).value / hp.AREA_F
    return {
        "tau_SgSg*": tau_ss_star,
        "tau_Sg*Sg": tau_sstar_s,
        "tau_Sg*Sg_closed": closed,
        "ratio_measured": tau_ss_star / tau_sstar_s,
        "ratio_expected": cs / ct,
        "errors": (r1.error_estimate / hp.AREA_F, r2.error_estimate),
    }


# -------------------------------------------------------- cyclic cocycle


@dataclass(frozen=True)
class TraceBudget:
    """Node counts of the Gamma-invariant trace engine (F nodes per axis, outer and inner H rules)."""

    n_f: int = 12
    outer: tuple = (24, 32)
    inner: tuple = (24, 36)

    def engine(self, t: float) -> InvariantTraceEngine:
        return InvariantTraceEngine(t, self.n_f, self.outer, self.inner)


def cyclic_cocycle(k: Kernel, l: Kernel, m: Kernel, t: float, budget: TraceBudget = TraceBudget()) -> CyclicTerms:
    """Psi_t(k, l, m) with its decomposition terms (see invariant_traces.cyclic_terms)."""
    return cyclic_terms(budget.engine(t), k, l, m)


def chi_form(k: Kernel, l: Kernel, t: float, budget: TraceBudget = TraceBudget()) -> complex:
    """chi_t(k, l) = tau(k l 2i Im log phi) for kernels in the log phi family."""
    eng = budget.engine(t)
    k_f, _ = eng.values(k)
    _, l_b = eng.values(l)
    return eng.pair(k_f, l_b, eng.chi_weight())


def sym_phi_checks(k: Kernel, l: Kernel, m: Kernel, t: float, budget: TraceBudget = TraceBudget(),
                   factors: tuple | None = None) -> dict:
    """tau(E m) and the composite generator trace identity on one engine.

    ``factors`` = (k1, k2, l1, l2) for the composite identity; defaults to
    square-root splittings of phi-power inputs.
    """
    eng = budget.engine(t)
    e = sym_commutator_trace(eng, k, l, m)
    if factors is None:
        factors = (_half_power(k), _half_power(k), _half_power(l), _half_power(l))
    f = composite_generator_trace(eng, *factors)
    return {"sym_commutator": e, "composite_generator": f}


def _half_power(k: Kernel) -> Kernel:
    if isinstance(k, PhiPowerKernel):
        return PhiPowerKernel(0.5 * k.eps, complex(k.coef) ** 0.5)
    raise TypeError("default factorization needs phi-power inputs; pass factors explicitly")


# ------------------------------------------------------------- duals (chi)


def chi_dual(k: Kernel, s: float, t: float, spec: QuadratureSpec) -> Kernel:
    """chi_{s,t}(k) = (c_t/c_s) P_s[k conj(phi)^eps d^{24 eps}], eps = (t - s)/12, P_s = 1 *_s (.) *_s 1."""
    if s > t:
        raise ValueError("chi_dual requires s <= t")
    eps = (t - s) / 12.0
    const = c_t(t) / c_t(s)
    k = as_kernel(k)

    def fn(z, xi):
        return const * k(z, xi) * np.exp(eps * (np.conj(mf.log_phi(z, xi)) + 24.0 * hp.log_weight_d(z, xi)))

    inner = FunctionKernel(fn, f"chi-integrand[{k.label}; eps={eps:g}]", k.growth, k.gamma_invariant)
    one = ConstantKernel(1.0)
    return star_product(star_product(one, inner, s, spec), one, s, spec)


def projection(k: Kernel, s: float, spec: QuadratureSpec) -> Kernel:
    one = ConstantKernel(1.0)
    return star_product(star_product(one, as_kernel(k), s, spec), one, s, spec)


@dataclass(frozen=True)
class GridBudget:
    """Nystrom grid size and finite-difference step for the chi-dual derivatives."""

    n_radial: int = 24
    n_angular: int = 48
    h: float = 0.1


def dual_coboundary_check(k: Kernel, l: Kernel, t: float, probes: Sequence[tuple[complex, complex]],
                          budget: GridBudget = GridBudget(), spec: QuadratureSpec | None = None,
                          tol: float = 1e-1) -> list[VerificationReport]:
    """Y-coboundary identity at probe pairs, literal and with the (c'/c) k l term.

    Y is the Richardson s-derivative of the Nystrom chi dual; C_t(k, l) comes
    from the independent midpoint-anchored cocycle quadrature.
    """
    start = time.perf_counter()
    spec = spec or QuadratureSpec()
    rows = []
    for z, xi in probes:
        c_val = complex(cocycle(k, l, t, spec)(z, xi))
        rows.append(ny.dual_coboundary_at(k, l, t, z, xi, budget.h, budget.n_radial, budget.n_angular, c_val))
    params = {"t": t, "probes": [list(p) for p in probes], "grid": [budget.n_radial, budget.n_angular], "h": budget.h}
    labels = {"k": k.label, "l": l.label}
    details = {"nabla_Y": [r.nabla_y for r in rows], "k_Lam1_l": [r.k_lam_l for r in rows],
               "kl": [r.kl for r in rows], "C": [r.cocycle for r in rows]}
    literal = VerificationReport.build(
        "deform.dual_coboundary.literal", "Y-coboundary identity without the (c'/c) k l term",
        labels=labels, params=params, residuals=[r.literal_residual for r in rows], tolerance=tol,
        spec=spec, start=start, details=dict(details))
    corrected = VerificationReport.build(
        "deform.dual_coboundary.corrected", "Y-coboundary identity with the (c'/c) k l term",
        labels=labels, params=params, residuals=[r.corrected_residual(t) for r in rows], tolerance=tol,
        spec=spec, start=start, details=dict(details))
    return [literal, corrected]


@dataclass(frozen=True)
class Y1Comparison:
    y1: complex
    minus_T: complex
    r1: complex

    def kappa(self, t: float) -> float:
        """kappa in Y(1) = -T - kappa (c'/c) + 2 R(1); the printed formula has kappa = 1."""
        return float(np.real((self.minus_T + 2.0 * self.r1 - self.y1) / dc_over_c(t)))


def y_of_one(t: float, z: complex, xi: complex, budget: GridBudget = GridBudget(),
             spec: QuadratureSpec | None = None) -> Y1Comparison:
    """Y_t(1) by finite differences, -T by the Toeplitz quadrature and R_t(1) = -P_t(log d) - (1/2) c'/c."""
    spec = spec or QuadratureSpec()
    g = ny.NystromGrid(z, xi, budget.n_radial, budget.n_angular, decay=2.0 * t)
    y1 = ny.y_derivative_grid(g.function("one"), t, budget.h).at_pair
    r1 = -ny.projection(g.function("log_d"), t).at_pair - 0.5 * dc_over_c(t)
    minus_T = -complex(toeplitz_symbol(toeplitz_generator_function(), t, spec, 2.0)(z, xi))
    return Y1Comparison(y1, minus_T, r1)


# -------------------------------------------------------- general g (A1)


def theta_general(g_log: Callable) -> Kernel:
    """theta(z, xi) = conj g(z) + g(xi) + log a(z, xi)."""
    def fn(z, xi):
        return np.conj(g_log(z)) + g_log(xi) + hp.log_a(z, xi)

    return FunctionKernel(fn, "theta_g", 1.0, True)


def theta_diag(g_log: Callable) -> Callable:
    """theta(eta, eta) = 2 Re g(eta) + log Im eta."""
    return lambda eta: 2.0 * np.real(g_log(eta)) + np.log(np.imag(np.asarray(eta, dtype=complex)))


def general_coboundary_sides(g_log: Callable, k: Kernel, l: Kernel, t: float, spec: QuadratureSpec) -> dict:
    """M_th(kl) - M_th(k) l - k M_th(l) + k (T_th + shift) l  vs  C(k, l), for shift in {0, c'/c}."""
    th = theta_general(g_log)
    kl = star_product(k, l, t, spec)
    left = th.schur(kl) - star_product(th.schur(k), l, t, spec) - star_product(k, th.schur(l), t, spec)
    mid = sandwich(k, theta_diag(g_log), l, t, spec, 2.0, "theta diag")
    literal = left + mid
    corrected = literal + dc_over_c(t) * kl
    return {"literal": literal, "corrected": corrected, "cocycle": cocycle(k, l, t, spec)}


def default_g_log(z):
    return mf.log_delta1(z) / 12.0



def hochschild_defect(k: Kernel, l: Kernel, m: Kernel, t: float, spec: QuadratureSpec,
                      inner_spec: QuadratureSpec | None = None) -> tuple[Kernel, Kernel]:
    """k*C(l,m) - C(k*l,m) + C(k,l*m) - C(k,l)*m, and the sum of the absolute terms as scale."""
    inner = inner_spec or spec
    terms = (star_product(k, cocycle(l, m, t, inner), t, spec),
             cocycle(star_product(k, l, t, inner), m, t, spec),
             cocycle(k, star_product(l, m, t, inner), t, spec),
             star_product(cocycle(k, l, t, inner), m, t, spec))
    defect = terms[0] - terms[1] + terms[2] - terms[3]
    return defect, terms


__all__ = [name for name in dir() if not name.startswith("_")]
