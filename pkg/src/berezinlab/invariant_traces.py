"""Fast F x H traces for kernels that are functions of log phi.

Every Gamma-invariant kernel in the damped test family (constants, phi^eps,
log phi multiples, the G_eps family and their linear combinations) is a
function of ``log phi(z, xi) = conj L(z) + L(xi) + 12 log a(z, xi)`` with
``L = log Delta_1``.  The engine evaluates ``L`` once per node and builds
every pair value from ``log a``, which turns the depth-two traces (pairings
of star products, cocycles and Toeplitz insertions) into dense array work.

Node layout: ``z_p`` on F, outer ``eta_pj`` and inner ``eta'_pi`` both
anchored at ``z_p``.  A pairing is

    tau(A B) = (c_t/area) sum_p sum_j wz_p w_pj A(z_p, eta_pj) B(eta_pj, z_p) d^{2t} [weight]
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import halfplane as hp
from . import modular as mf
from .quadrature import fundamental_domain_rule, halfplane_nodes, QuadratureSpec
from .symbols import (
    AdjointKernel, ConstantKernel, Kernel, LinearCombination, LogPhiKernel, PhiPowerKernel,
    SchurProduct, c_t, dc_over_c,
)


PhiTerms = tuple  # ((coef, eps, power), ...) meaning sum coef lp^power exp(eps lp)


def _merge(terms) -> PhiTerms:
    acc: dict = {}
    for c, e, n in terms:
        key = (float(e), int(n))
        acc[key] = acc.get(key, 0.0) + complex(c)
    return tuple((c, e, n) for (e, n), c in sorted(acc.items()) if c != 0)


def phi_terms(k: Kernel) -> PhiTerms:
    """Expand k(z, xi) = sum c lp^n exp(e lp), lp = log phi(z, xi); raise outside the family."""
    if isinstance(k, ConstantKernel):
        return _merge([(complex(k.value), 0.0, 0)])
    if isinstance(k, PhiPowerKernel):
        return _merge([(complex(k.coef), k.eps, 0)])
    if isinstance(k, LogPhiKernel):
        a, b = complex(k.scale), complex(k.shift)
        base = phi_terms(k.base)
        return _merge([(a * c, e, n + 1) for c, e, n in base] + [(b * c, e, n) for c, e, n in base])
    if isinstance(k, LinearCombination):
        return _merge([(complex(w) * c, e, n) for w, kk in k.terms for c, e, n in phi_terms(kk)])
    if isinstance(k, SchurProduct):
        out = [(1.0, 0.0, 0)]
        for f in k.factors:
            out = [(c1 * c2, e1 + e2, n1 + n2) for c1, e1, n1 in out for c2, e2, n2 in phi_terms(f)]
        return _merge(out)
    if isinstance(k, AdjointKernel):
        # k*(z, xi) = conj k(xi, z) and log phi(xi, z) = conj log phi(z, xi)
        return _merge([(np.conj(c), e, n) for c, e, n in phi_terms(k.base)])
    fn = getattr(k, "phi_terms", None)
    if fn is not None:
        return fn()
    raise TypeError(f"kernel {k.label} is not a function of log phi")


def eval_terms(terms: PhiTerms, lp):
    out = np.zeros(np.shape(lp), dtype=complex)
    for c, e, n in terms:
        out = out + c * (lp**n if n else 1.0) * np.exp(e * lp)
    return out


def log_phi_function(k: Kernel) -> Callable:
    """Return F with k(z, xi) = F(log phi(z, xi))."""
    terms = phi_terms(k)
    return lambda lp: eval_terms(terms, lp)


@dataclass(frozen=True)
class Compose:
    """Request for a composite x . y evaluated on the outer grid.

    kind: "star" (x *_t y), "cocycle" (C_t(x, y)) or "toeplitz" (x *_t T *_t y
    with T the Toeplitz operator of (1/12) log phi(eta, eta)).
    """

    x: Kernel
    y: Kernel
    kind: str = "star"


class InvariantTraceEngine:
    def __init__(self, t: float, n_f: int = 12, outer: tuple[int, int] = (24, 32),
                 inner: tuple[int, int] = (24, 32), growth: float = 2.0,
                 cfg: mf.QSeriesConfig = mf.DEFAULT_QSERIES) -> None:
        self.t = float(t)
        self.c = c_t(t)
        self.g = dc_over_c(t)
        self.cfg = cfg
        spec = QuadratureSpec()
        z, wz = fundamental_domain_rule(n_f, n_f)
        self.z = np.asarray(z)
        self.wz = np.asarray(wz)
        decay = 2.0 * self.t - growth
        self.eta, self.w = halfplane_nodes(self.z, spec, decay, *outer)
        self.eta_in, self.w_in = halfplane_nodes(self.z, spec, decay, *inner)
        self.Lz = mf.log_delta1(self.z, cfg)
        self.Le = mf.log_delta1(self.eta, cfg)
        self.Li = mf.log_delta1(self.eta_in, cfg)
        zc = self.z[:, None]
        self.la_ze = hp.log_a(zc, self.eta)
        self.la_zi = hp.log_a(zc, self.eta_in)
        self.lp_ze = np.conj(self.Lz)[:, None] + self.Le + 12.0 * self.la_ze
        self.lp_zi = np.conj(self.Lz)[:, None] + self.Li + 12.0 * self.la_zi
        self.log_d = hp.log_weight_d(zc, self.eta)
        ly = np.log(self.eta_in.imag)
        self.ly_in = ly
        self.f_in = (2.0 * np.real(self.Li) + 12.0 * ly) / 12.0
        self.f_z = (2.0 * np.real(self.Lz) + 12.0 * np.log(self.z.imag)) / 12.0
        self.outer_weight = (self.wz[:, None] * self.w) * np.exp(2.0 * self.t * self.log_d)

    @property
    def shape(self) -> tuple:
        return self.eta.shape

    # ---------------------------------------------------------- direct values

    def values(self, k: Kernel) -> tuple[np.ndarray, np.ndarray]:
        """k(z, eta) and k(eta, z) on the outer grid."""
        f = log_phi_function(k)
        return f(self.lp_ze), f(np.conj(self.lp_ze))

    # ------------------------------------------------------------ composites

    def compose(self, requests: Sequence[Compose]) -> list[tuple[np.ndarray, np.ndarray]]:
        """Evaluate each request at (z, eta) and at (eta, z); one pass over the F nodes.

        forward:  c sum_i w_i x(z, eta'_i) y(eta'_i, eta) [z, eta'_i, eta]^t extra
        backward: c sum_i w_i x(eta, eta'_i) y(eta'_i, z) [eta, eta'_i, z]^t extra
        The backward cross ratio and log phi values are conjugates of the forward ones.
        """
        reqs = [(phi_terms(r.x), phi_terms(r.y), r.kind) for r in requests]
        for _, _, kind in reqs:
            if kind not in ("star", "cocycle", "toeplitz"):
                raise ValueError(f"unknown composite kind {kind!r}")
        fwd = [np.empty(self.shape, dtype=complex) for _ in reqs]
        bwd = [np.empty(self.shape, dtype=complex) for _ in reqs]
        t = self.t
        for p in range(self.z.size):
            la_ij = hp.log_a(self.eta_in[p][:, None], self.eta[p][None, :])
            lp_ij = np.conj(self.Li[p])[:, None] + self.Le[p][None, :] + 12.0 * la_ij
            lc = self.la_ze[p][None, :] + self.ly_in[p][:, None] - self.la_zi[p][:, None] - la_ij
            tlc = t * lc
            cache: dict = {}

            def E(e, n):
                key = (e, n)
                if key not in cache:
                    if n == 0:
                        cache[key] = np.exp(e * lp_ij + tlc)
                    else:
                        cache[key] = E(e, 0) * lp_ij**n
                return cache[key]

            lp_zi = self.lp_zi[p]
            wi = self.w_in[p]
            for q, (tx, ty, kind) in enumerate(reqs):
                vx = wi * eval_terms(tx, lp_zi)
                vy = wi * eval_terms(ty, np.conj(lp_zi))
                if kind == "toeplitz":
                    vx = vx * self.f_in[p]
                    vy = vy * self.f_in[p]
                sf = sum(c * E(e, n) for c, e, n in ty)
                sb = sum(np.conj(c) * E(e, n) for c, e, n in tx)
                if kind == "cocycle":
                    sf = sf * (self.g + lc)
                    sb = sb * (self.g + lc)
                fwd[q][p] = self.c * (vx @ sf)
                # backward kernel is the conjugate of sum conj(c) E, weighted by vy
                bwd[q][p] = self.c * (vy @ np.conj(sb))
        return list(zip(fwd, bwd))

    # ---------------------------------------------------------------- traces

    def pair(self, a_ze: np.ndarray, b_ez: np.ndarray, weight: np.ndarray | None = None) -> complex:
        """tau(A *_t B) from A(z, eta) and B(eta, z) on the outer grid."""
        v = self.outer_weight * a_ze * b_ez
        if weight is not None:
            v = v * weight
        return complex(self.c * np.sum(v) / hp.AREA_F)

    def r_weight(self) -> np.ndarray:
        return -self.log_d - 0.5 * self.g

    def chi_weight(self) -> np.ndarray:
        return 2j * np.imag(self.lp_ze)

    def toeplitz_z_weight(self) -> np.ndarray:
        return np.broadcast_to(self.f_z[:, None], self.shape)


@dataclass(frozen=True)
class CyclicTerms:
    psi: complex
    tau_klm: complex
    chi_sum: complex
    pieces: dict

    def residual(self, gamma: float, beta: float, t: float) -> float:
        return abs(self.psi - gamma * dc_over_c(t) * self.tau_klm - beta * self.chi_sum)


def cyclic_terms(engine: InvariantTraceEngine, k: Kernel, l: Kernel, m: Kernel) -> CyclicTerms:
    """Psi(k,l,m) = tau(C(k,l) m) - tau(R(kl) m) + tau(R(k) lm) + tau(R(l) mk), and its pieces.

    ``chi_sum`` = chi(kl, m) + chi(lm, k) + chi(mk, l) with
    chi(x, y) = tau(x y (2i Im log phi)) (L0 = multiplication by log phi).
    """
    (c_kl, _), (kl, _), (lm_f, lm_b), (mk_f, mk_b) = engine.compose(
        [Compose(k, l, "cocycle"), Compose(k, l), Compose(l, m), Compose(m, k)])
    k_f, k_b = engine.values(k)
    l_f, l_b = engine.values(l)
    _, m_b = engine.values(m)
    rw = engine.r_weight()
    cw = engine.chi_weight()
    tau_cm = engine.pair(c_kl, m_b)
    r_kl_m = engine.pair(kl, m_b, rw)
    r_k_lm = engine.pair(k_f, lm_b, rw)
    r_l_mk = engine.pair(l_f, mk_b, rw)
    psi = tau_cm - r_kl_m + r_k_lm + r_l_mk
    tau_klm = engine.pair(kl, m_b)
    chi = engine.pair(kl, m_b, cw) + engine.pair(lm_f, k_b, cw) + engine.pair(mk_f, l_b, cw)
    pieces = {"tau_Cm": tau_cm, "tau_R_kl_m": r_kl_m, "tau_R_k_lm": r_k_lm, "tau_R_l_mk": r_l_mk,
              "tau_klm_via_lm": engine.pair(k_f, lm_b), "tau_klm_via_mk": engine.pair(l_f, mk_b)}
    return CyclicTerms(psi, tau_klm, chi, pieces)


def fit_cyclic_constants(terms: Sequence[CyclicTerms], t: float) -> dict:
    """Least squares for Psi = gamma (c'/c) tau(klm) + beta chi_sum over several triples."""
    a = np.array([[dc_over_c(t) * tr.tau_klm, tr.chi_sum] for tr in terms], dtype=complex)
    b = np.array([tr.psi for tr in terms], dtype=complex)
    ar = np.vstack([a.real, a.imag])
    br = np.concatenate([b.real, b.imag])
    sol, _, rank, _ = np.linalg.lstsq(ar, br, rcond=None)
    resid = br - ar @ sol
    dof = max(br.size - 2, 1)
    sigma2 = float(resid @ resid) / dof
    cov = sigma2 * np.linalg.pinv(ar.T @ ar)
    return {"gamma": float(sol[0]), "beta": float(sol[1]),
            "gamma_std": math.sqrt(max(float(cov[0, 0]), 0.0)),
            "beta_std": math.sqrt(max(float(cov[1, 1]), 0.0)),
            "rank": int(rank), "max_residual": float(np.max(np.abs(resid)))}


def sym_commutator_trace(engine: InvariantTraceEngine, k: Kernel, l: Kernel, m: Kernel) -> dict:
    """tau(E m) for E = Sym(kl) - Sym(k) l - k Sym(l) + k T l, Sym(x) = (1/2)(T x + x T).

    Each occurrence of a triple product is grouped differently, so the
    cancellation happens between independently computed traces.
    """
    one = ConstantKernel(1.0)
    (tk_f, tk_b), (lm_f, lm_b), (kl_f, kl_b), (tm_f, tm_b), (ktl_f, ktl_b), (kt_f, _) = engine.compose(
        [Compose(one, k, "toeplitz"), Compose(l, m), Compose(k, l), Compose(one, m, "toeplitz"),
         Compose(k, l, "toeplitz"), Compose(k, one, "toeplitz")])
    m_f, m_b = engine.values(m)
    sym_kl_m = 0.5 * (engine.pair(tk_f, lm_b) + engine.pair(kl_f, tm_b))
    sym_k_lm = 0.5 * (engine.pair(lm_f, tk_b) + engine.pair(ktl_f, m_b))
    k_sym_l_m = 0.5 * (engine.pair(m_f, ktl_b) + engine.pair(tm_f, kl_b))
    ktlm = engine.pair(kt_f, lm_b)
    e_val = sym_kl_m - sym_k_lm - k_sym_l_m + ktlm
    scale = max(abs(sym_kl_m), abs(sym_k_lm), abs(k_sym_l_m), abs(ktlm), 1e-300)
    return {"tau_Em": e_val, "scale": scale, "relative": abs(e_val) / scale,
            "terms": {"Sym(kl)m": sym_kl_m, "Sym(k)lm": sym_k_lm, "kSym(l)m": k_sym_l_m, "kTlm": ktlm}}


def composite_generator_trace(engine: InvariantTraceEngine, k1: Kernel, k2: Kernel, l1: Kernel, l2: Kernel) -> dict:
    """tau(k2 L(l) k1) + tau(l2 L(k) l1) + tau(C(k, l)) against -(c'/c) tau(k l), k = k1 k2, l = l1 l2.

    tau(x T y) traces use the Toeplitz trace formula on the diagonal of x *_t y,
    tau(C(k, l)) is the F-integral of the cocycle diagonal, and the X-terms
    multiply by (1/12) log phi - c'/c on the outer grid.
    """
    (k_f, k_b), (l_f, l_b) = engine.compose([Compose(k1, k2), Compose(l1, l2)])
    fz = engine.toeplitz_z_weight()
    xw = engine.lp_ze / 12.0 - engine.g

    def tau_L_times(x_f, y_b, y_f, x_b):
        # tau(L(x) y) = tau(X(x) y) - (1/2)[tau(T x y) + tau(x T y)]
        return engine.pair(x_f * xw, y_b) - 0.5 * (engine.pair(x_f, y_b, fz) + engine.pair(y_f, x_b, fz))

    a = tau_L_times(l_f, k_b, k_f, l_b)
    b = tau_L_times(k_f, l_b, l_f, k_b)
    c = engine.pair(k_f, l_b, engine.g + 2.0 * engine.log_d)
    lhs = a + b + c
    rhs = -engine.g * engine.pair(k_f, l_b)
    return {"lhs": lhs, "rhs": rhs, "relative": abs(lhs - rhs) / abs(rhs),
            "terms": {"tau(k2 L(l) k1)": a, "tau(l2 L(k) l1)": b, "tau(C(k,l))": c}}


__all__ = ["phi_terms", "eval_terms", "log_phi_function", "Compose", "InvariantTraceEngine", "CyclicTerms", "cyclic_terms",
           "fit_cyclic_constants", "sym_commutator_trace", "composite_generator_trace"]
