import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from berezinlab import deform as D
from berezinlab import halfplane as hp
from berezinlab import modular as mf
from berezinlab import symbols as S
from berezinlab.quadrature import QuadratureSpec
from conftest import modular_words, upper_half_plane

Z = np.array([1j, 0.2 + 0.9j])
XI = np.array([0.3 + 1.2j, -0.3 + 1.5j])
SPEC = QuadratureSpec(n_radial=32, n_angular=40)


def test_params_validation():
    with pytest.raises(ValueError):
        D.DeformationParams(t=1.0)
    with pytest.raises(ValueError):
        D.DeformationParams(epsilon=0.0)


def test_theta_requires_upward_weights():
    with pytest.raises(ValueError):
        D.theta(S.ConstantKernel(1.0), 7.0, 8.0)


@given(st.floats(0.01, 0.2), upper_half_plane(re=(-1, 1), im=(0.4, 2)), upper_half_plane(re=(-1, 1), im=(0.4, 2)))
def test_g_epsilon_approaches_limit(eps, z, xi):
    t = 8.0
    a = complex(D.g_epsilon_family(eps, t)(z, xi))
    b = complex(D.g_epsilon_family(eps / 2, t)(z, xi))
    lim = complex(D.g_epsilon_limit(t)(z, xi))
    assert abs(b - lim) <= abs(a - lim) * 0.75 + 1e-9


@given(upper_half_plane(re=(-1, 1), im=(0.3, 2)), upper_half_plane(re=(-1, 1), im=(0.3, 2)), modular_words())
def test_general_theta_is_gamma_invariant(z, xi, g):
    th = D.theta_general(D.default_g_log)
    a, b = complex(th(z, xi)), complex(th(g(z), g(xi)))
    k = (b - a) / (2j * np.pi)
    assert abs(k - round(k.real)) < 1e-8


def test_lambda_finite_difference_matches_schur():
    k = S.PhiPowerKernel(0.1)
    fd = D.lambda_finite_difference(k, Z, XI, 1e-3)
    exact = mf.log_phi(Z, XI) * k(Z, XI)
    assert np.allclose(fd, exact, rtol=1e-6)


def test_shifted_log_kernel_domain():
    with pytest.raises(ValueError):
        D.shifted_log_phi_kernel(8.0, 0.6)


def test_schur_toeplitz_split_is_exact():
    k = S.PhiPowerKernel(0.1)
    lhs, rhs = D.generator_cocycle_sides(k, k, 8.0, SPEC)
    a, b = lhs(Z, XI), rhs(Z, XI)
    assert np.max(np.abs(a - b) / np.abs(b)) < 1e-10


def test_theta_multiplicativity_for_constants():
    one = S.ConstantKernel(1.0)
    lhs, rhs = D.theta_multiplicativity_sides(one, one, 8.5, 8.0, SPEC)
    assert np.allclose(lhs(Z, XI), rhs(Z, XI), rtol=1e-10)


def test_theta_contraction_gram_order(rng):
    cloud = S.PointCloud.random(rng, 6, (-1, 1), (0.5, 2))
    g1 = D.normalized_gram(D.theta(S.ConstantKernel(1.0), 12.0, 11.0), 12.0, cloud)
    g2 = D.normalized_gram(D.theta(S.ConstantKernel(1.0), 12.0, 10.0), 12.0, cloud)
    assert D.loewner_min(g1, g2) > -1e-10


def test_test_vector_validation():
    with pytest.raises(ValueError):
        D.TestVector(-1j)
    with pytest.raises(ValueError):
        D.TestVector(1j, 2.0)


def test_log_height_identity_single_vector():
    r = D.log_height_identity(D.TestVector(1j, 4, 1.0), 10.0, D.FormRule(48, 32))
    assert r.relative < 1e-3


def test_intertwiner_symbol_normalization():
    # c_{t - 12 eps} / c_t prefactor keeps the symbol at the identity scale near the diagonal
    k = D.delta_power_intertwiner(0.1, 8.0)
    assert complex(k.coef).real == pytest.approx(S.c_t(8.0 - 1.2) / S.c_t(8.0))


def test_y_of_one_matches_minus_toeplitz():
    y = D.y_of_one(8.0, 1j, 0.3 + 1.2j, D.GridBudget(24, 32, 0.1), SPEC)
    assert abs(y.y1 - y.minus_T) / abs(y.minus_T) < 1e-2
