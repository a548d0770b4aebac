import math

import numpy as np
import pytest
from hypothesis import given

from berezinlab import halfplane as hp
from conftest import modular_words, upper_half_plane


def test_point_rejects_lower_half_plane():
    with pytest.raises(ValueError):
        hp.Point(0.0, -1.0)


def test_moebius_requires_unit_determinant():
    with pytest.raises(ValueError):
        hp.MoebiusTransform(2, 0, 0, 1)


@given(upper_half_plane(), upper_half_plane(), modular_words())
def test_weight_d_is_invariant(z, eta, g):
    assert hp.weight_d(g(z), g(eta)) == pytest.approx(hp.weight_d(z, eta), rel=1e-8, abs=1e-12)


@given(upper_half_plane(), upper_half_plane())
def test_weight_d_is_sech_of_half_distance(z, eta):
    assert hp.weight_d(z, eta) == pytest.approx(1.0 / math.cosh(hp.hyperbolic_distance(z, eta) / 2.0), rel=1e-10)


@given(upper_half_plane(), upper_half_plane(), upper_half_plane(), modular_words())
def test_cross_ratio_modulus_is_invariant(z, eta, xi, g):
    a = abs(hp.cross_ratio(z, eta, xi))
    b = abs(hp.cross_ratio(g(z), g(eta), g(xi)))
    assert b == pytest.approx(a, rel=1e-7)


@given(upper_half_plane(), upper_half_plane())
def test_log_a_principal_branch(z, xi):
    la = hp.log_a(z, xi)
    assert abs(la.imag) < math.pi / 2
    assert np.exp(la) == pytest.approx((xi - np.conj(z)) / 2j, rel=1e-12)


@given(upper_half_plane(re=(-20, 20), im=(0.01, 5)))
def test_reduction_lands_in_fundamental_domain(z):
    w, g = hp.reduce_to_fundamental_domain(z)
    assert hp.in_fundamental_domain(complex(w), tol=1e-9)
    assert complex(g(z)) == pytest.approx(complex(w), rel=1e-8, abs=1e-10)


def test_midpoint_is_equidistant():
    z, xi = 1j, 2.0 + 0.5j
    m = hp.hyperbolic_midpoint(np.array([z]), np.array([xi]))[0]
    d1, d2 = hp.hyperbolic_distance(z, m), hp.hyperbolic_distance(m, xi)
    assert d1 == pytest.approx(d2, rel=1e-10)
    assert d1 + d2 == pytest.approx(hp.hyperbolic_distance(z, xi), rel=1e-10)


def test_fundamental_domain_area():
    assert hp.fundamental_domain_area() == pytest.approx(math.pi / 3.0, abs=1e-12)


def test_principal_log_matches_numpy():
    w = np.array([1 + 1j, -2 + 0.1j, 0.3 - 4j])
    assert np.allclose(hp.principal_log(w), np.log(w), rtol=1e-14)
