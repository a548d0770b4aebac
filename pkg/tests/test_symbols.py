import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from berezinlab import symbols as S
from berezinlab.quadrature import QuadratureSpec
from conftest import upper_half_plane

SPEC = QuadratureSpec(n_radial=32, n_angular=40, n_f=16)
PROBES_Z = np.array([1j, 0.2 + 0.9j])
PROBES_XI = np.array([0.3 + 1.2j, -0.3 + 1.5j])


def test_normalization_constants():
    assert S.c_t(4.0) == pytest.approx(3.0 / (4.0 * np.pi))
    assert S.dc_over_c(8.0) == pytest.approx(1.0 / 7.0)


@pytest.mark.parametrize("t", [4.0, 6.0, 8.0, 12.0])
def test_constant_star_constant_is_constant(t):
    one = S.ConstantKernel(1.0)
    vals = S.star_product(one, one, t, SPEC)(PROBES_Z, PROBES_XI)
    assert np.max(np.abs(vals - 1.0)) < 1e-10


@given(upper_half_plane(re=(-0.8, 0.8), im=(0.6, 1.8)), upper_half_plane(re=(-0.8, 0.8), im=(0.6, 1.8)),
       upper_half_plane(re=(-0.8, 0.8), im=(0.6, 1.8)), upper_half_plane(re=(-0.8, 0.8), im=(0.6, 1.8)))
def test_rank_one_star_matches_closed_form(p, q, r, s):
    k, l = S.RankOneKernel(p, q, 6.0), S.RankOneKernel(r, s, 6.0)
    quad = S.star_product(k, l, 6.0, SPEC)(PROBES_Z, PROBES_XI)
    closed = S.rank_one_star_closed_form(k, l)(PROBES_Z, PROBES_XI)
    assert np.max(np.abs(quad - closed) / np.abs(closed)) < 1e-6


@given(upper_half_plane(), upper_half_plane(), st.floats(0.01, 0.5))
def test_adjoint_is_conjugate_transpose(z, xi, eps):
    k = S.PhiPowerKernel(eps, 1 + 2j)
    assert complex(k.adjoint()(z, xi)) == pytest.approx(np.conj(complex(k(xi, z))), rel=1e-12)


@given(st.floats(-2, 2), st.floats(-2, 2))
def test_star_product_is_linear(a, b):
    k1, k2, l = S.PhiPowerKernel(0.1), S.PhiPowerKernel(0.2), S.PhiPowerKernel(0.05)
    lhs = S.star_product(a * k1 + b * k2, l, 8.0, SPEC)(PROBES_Z, PROBES_XI)
    rhs = a * S.star_product(k1, l, 8.0, SPEC)(PROBES_Z, PROBES_XI) + b * S.star_product(k2, l, 8.0, SPEC)(PROBES_Z, PROBES_XI)
    assert np.allclose(lhs, rhs, rtol=1e-10, atol=1e-12)


def test_trace_of_identity_is_one():
    assert S.trace(S.ConstantKernel(1.0), SPEC).value == pytest.approx(1.0, abs=1e-10)


def test_rank_one_pairing_is_reproducing_kernel():
    assert S.rank_one_pairing(1j, 1j, 6.0) == pytest.approx(S.c_t(6.0), rel=1e-12)


def test_base_gram_is_positive_definite(rng):
    cloud = S.PointCloud.random(rng, 6)
    ev = S.gram_matrix(None, 8.0, cloud).eigenvalues()
    assert ev[0] > 0


@given(st.floats(0.01, 0.4), st.integers(0, 1000))
def test_delta_power_symbols_are_two_sided_bounded(eps, seed):
    from berezinlab.deform import delta_power_intertwiner
    cloud = S.PointCloud.random(np.random.default_rng(seed), 5, (-1, 1), (0.5, 2.0))
    r = S.psd_check(delta_power_intertwiner(eps, 8.0), 8.0, cloud, tol=1e-6)
    assert r.passed, r.details


def test_psd_check_flags_negative_kernel(rng):
    cloud = S.PointCloud.random(rng, 5)
    r = S.psd_check(S.ConstantKernel(-1.0), 8.0, cloud)
    assert not r.passed
    assert not r.details["lower_bound_pass"]


def test_point_cloud_rejects_duplicates():
    with pytest.raises(ValueError):
        S.PointCloud((1j, 1j))


def test_toeplitz_trace_formula():
    from berezinlab.modular import height_G
    f = height_G
    lhs, rhs = S.toeplitz_trace_check(f, 8.0, SPEC)
    assert abs(lhs - rhs) / abs(rhs) < 1e-4


def test_cocycle_matches_finite_difference():
    k = S.PhiPowerKernel(0.1)
    c = S.cocycle(k, k, 8.0, SPEC)(PROBES_Z, PROBES_XI)
    fd = S.cocycle_finite_difference(k, k, 8.0, PROBES_Z, PROBES_XI, 0.05, SPEC)
    assert np.max(np.abs(c - fd) / np.abs(c)) < 1e-3
