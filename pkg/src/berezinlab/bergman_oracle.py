"""Finite sections in the weighted Bergman basis of the disk.

The Cayley map ``w = (z - i)/(z + i)`` carries H_t onto the weighted Bergman
space of the disk.  The functions

    f_n(z) = (1 - w)^t w^n / (2 sqrt(h_n)),   h_n = pi B(n + 1, t - 1)

form an orthonormal basis of H_t.  For an operator A with symbol k the
operator kernel is ``K(z, xi) = k(z, xi) e_z(xi)`` and

    K(z, xi) / (conj(1 - w_z)^t (1 - w_xi)^t) = (1/4) sum A_mn conj(g_n(w_z)) g_m(w_xi)

with ``g_n = w^n / sqrt(h_n)`` and ``A_mn = <A f_n, f_m>``.  The section
``S(k) = A^T`` is multiplicative for the star product, ``S(k *_t l) = S(k) S(l)``,
and satisfies ``S(k*) = S(k)^H``.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy import special

from . import halfplane as hp
from .quadrature import QuadratureSpec
from .reports import VerificationReport
from .symbols import Kernel, c_t, star_product


@dataclass(frozen=True)
class FiniteSection:
    dimension: int
    matrix: np.ndarray
    t: float

    def __matmul__(self, other: "FiniteSection") -> "FiniteSection":
        return FiniteSection(self.dimension, self.matrix @ other.matrix, self.t)

    def adjoint(self) -> "FiniteSection":
        return FiniteSection(self.dimension, self.matrix.conj().T, self.t)

    def to_csv(self) -> str:
        rows = []
        for i, row in enumerate(self.matrix):
            for j, v in enumerate(row):
                rows.append(f"{i},{j},{v.real!r},{v.imag!r}")
        return "row,col,re,im\n" + "\n".join(rows) + "\n"


def log_norms(t: float, n: int) -> np.ndarray:
    """log h_k = log(pi B(k + 1, t - 1)) for k < n."""
    k = np.arange(n)
    return math.log(math.pi) + special.betaln(k + 1.0, t - 1.0)


def basis_function(n: int, t: float, z):
    z = np.asarray(z, dtype=complex)
    w = hp.cayley_to_disk(z)
    one_minus = 2j / (z + 1j)
    return np.exp(t * np.log(one_minus)) * w**n / (2.0 * math.exp(0.5 * log_norms(t, n + 1)[n]))


def operator_kernel(k: Kernel, t: float, z, xi):
    """K(z, xi) = k(z, xi) c_t / a(z, xi)^t."""
    return k(z, xi) * c_t(t) * np.exp(-t * hp.log_a(z, xi))


def _reduced_kernel(k: Kernel, t: float, wz, wx):
    """K / (conj(1 - w_z)^t (1 - w_xi)^t) on disk points."""
    z = hp.disk_to_halfplane(wz)
    xi = hp.disk_to_halfplane(wx)
    scale = np.exp(t * (np.conj(np.log(1.0 - wz)) + np.log(1.0 - wx)))
    return operator_kernel(k, t, z, xi) / scale


def section_cauchy(k: Kernel, t: float, n: int, radius: float = 0.6, n_theta: int = 96) -> FiniteSection:
    """Section by Cauchy extraction of the double power series on |w| = radius."""
    if n_theta < 2 * n:
        raise ValueError("n_theta must be at least 2 N")
    ang = 2.0 * math.pi * np.arange(n_theta) / n_theta
    circ = radius * np.exp(1j * ang)
    # rows: conj(w_z) = radius e^{-i alpha}, so w_z = radius e^{i alpha}
    vals = _reduced_kernel(k, t, circ[:, None], circ[None, :])
    # coefficient of conj(w_z)^b w_xi^a: average vals * e^{+i b alpha} e^{-i a beta}
    coeff = np.fft.ifft(np.fft.fft(vals, axis=1), axis=0) / n_theta  # [b, a]
    coeff = coeff[:n, :n]
    b = np.arange(n)[:, None]
    a = np.arange(n)[None, :]
    lh = log_norms(t, n)
    scale = 4.0 * np.exp(0.5 * (lh[:, None] + lh[None, :])) / radius ** (a + b)
    # entry [b, a] equals A_{a b}, which is the section S = A^T
    return FiniteSection(n, coeff * scale, t)


def _area_rule(t: float, n_radial: int, n_theta: int):
    x, wx = special.roots_jacobi(n_radial, t - 2.0, 0.0)
    u = 0.5 * (1.0 + x)
    wu = wx * 0.5 ** (t - 1.0)
    th = 2.0 * math.pi * (np.arange(n_theta) + 0.5) / n_theta
    w = (np.sqrt(u)[:, None] * np.exp(1j * th)[None, :]).ravel()
    # dA = (1/2) du dtheta; measure (1-u)^{t-2} dA absorbed by the Jacobi weight
    weights = (0.5 * wu[:, None] * (2.0 * math.pi / n_theta) * np.ones((1, n_theta))).ravel()
    return w, weights


def section_area(k: Kernel, t: float, n: int, n_radial: int = 32, n_theta: int = 64) -> FiniteSection:
    """Section by area quadrature against (1 - |w|^2)^{t-2} dA in both variables."""
    w, wt = _area_rule(t, n_radial, n_theta)
    lh = log_norms(t, n)
    g = (w[None, :] ** np.arange(n)[:, None]) * np.exp(-0.5 * lh)[:, None]
    red = _reduced_kernel(k, t, w[:, None], w[None, :])
    # S_mn = 4 sum red(z_j, xi_k) g_m(w_j) conj g_n(w_k) W_j W_k
    mat = 4.0 * (g * wt[None, :]) @ red @ (g.conj() * wt[None, :]).T
    return FiniteSection(n, mat, t)


def symbol_to_section(k: Kernel, t: float, n: int = 24, method: str = "cauchy", **kw) -> FiniteSection:
    if method == "cauchy":
        return section_cauchy(k, t, n, **kw)
    if method == "area":
        return section_area(k, t, n, **kw)
    raise ValueError(f"unknown section method {method!r}")


def numerical_rank(section: FiniteSection, tol: float = 1e-6) -> int:
    s = np.linalg.svd(section.matrix, compute_uv=False)
    return int(np.sum(s > tol * s[0])) if s[0] > 0 else 0


def section_star_check(k: Kernel, l: Kernel, t: float, n: int = 24,
                       spec: QuadratureSpec | None = None, tol: float = 1e-3) -> VerificationReport:
    """Compare S(k *_t l) (quadrature star product) with S(k) S(l) on the top-left N/2 block."""
    start = time.perf_counter()
    spec = spec or QuadratureSpec()
    sk = symbol_to_section(k, t, n)
    sl = symbol_to_section(l, t, n)
    skl = symbol_to_section(star_product(k, l, t, spec), t, n)
    h = n // 2
    ref = (sk @ sl).matrix[:h, :h]
    diff = skl.matrix[:h, :h] - ref
    res = float(np.linalg.norm(diff) / np.linalg.norm(ref))
    return VerificationReport.build(
        "bergman.section_star", "finite-section oracle for the star product",
        labels={"k": k.label, "l": l.label}, params={"t": t, "N": n},
        residuals=[res], tolerance=tol, spec=spec, start=start,
    )
