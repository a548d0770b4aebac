import math

import mpmath
import numpy as np
import pytest
from hypothesis import given

from berezinlab import halfplane as hp
from berezinlab import modular as mf
from conftest import modular_words, upper_half_plane


def mp_delta(z: complex) -> complex:
    """Independent oracle: q (q; q)_inf^24 in mpmath at 30 digits."""
    with mpmath.workdps(30):
        q = mpmath.exp(2j * mpmath.pi * mpmath.mpc(z))
        return complex(q * mpmath.qp(q) ** 24)


@pytest.mark.parametrize("z", [1j, 0.3 + 0.9j, -0.45 + 1.7j, 0.1 + 0.5j])
def test_delta_matches_mpmath_product(z):
    assert complex(mf.delta(z)) == pytest.approx(mp_delta(z), rel=1e-11)


def test_delta_at_i_closed_form():
    # Gamma(1/4)^24 / (2^24 pi^18)
    assert mf.delta_at_i_closed_form() == pytest.approx(0.0017853698506421465, rel=1e-14)
    assert complex(mf.delta(1j)).real == pytest.approx(mf.delta_at_i_closed_form(), rel=1e-12)


@given(upper_half_plane(re=(-1, 1), im=(0.3, 2.5)), modular_words())
def test_delta_weight_twelve(z, g):
    lhs = mf.log_delta(g(z))
    rhs = mf.log_delta(z) + 12.0 * np.log(g.factor(z))
    k = (lhs - rhs) / (2j * math.pi)
    assert abs(k - round(k.real)) < 1e-7


@given(upper_half_plane(re=(-5, 5), im=(0.05, 3)))
def test_reduced_route_agrees_modulo_2pi_i(z):
    a = mf.log_delta(z)
    b = mf.log_delta_via_reduction(np.array([z]))[0]
    k = (a - b) / (2j * math.pi)
    assert abs(a.real - b.real) < 1e-8 * max(1.0, abs(a.real))
    assert abs(k - round(k.real)) < 1e-7


@given(upper_half_plane(re=(-1, 1), im=(0.3, 2)), upper_half_plane(re=(-1, 1), im=(0.3, 2)), modular_words())
def test_log_phi_gamma_invariant(z, xi, g):
    a = mf.log_phi(z, xi)
    b = mf.log_phi(g(z), g(xi))
    k = (b - a) / (2j * math.pi)
    assert abs(b.real - a.real) < 1e-7
    assert abs(k - round(k.real)) < 1e-7


@given(upper_half_plane(re=(-1, 1), im=(0.2, 4)), upper_half_plane(re=(-1, 1), im=(0.2, 4)))
def test_phi_bounded_by_inverse_d_power(z, xi):
    # |phi(z, xi)| <= d(z, xi)^(-12), since |phi| = G(z) G(xi) / d^12 and G <= 1
    assert abs(complex(mf.phi(z, xi))) <= hp.weight_d(z, xi) ** -12 * (1 + 1e-9)


def test_height_bounded_by_one_with_maximum_at_rho():
    rho = complex(-0.5, math.sqrt(3) / 2)
    assert mf.normalization_maximizer() == pytest.approx(rho, abs=1e-6)
    xs, ys = np.meshgrid(np.linspace(-0.5, 0.5, 21), np.linspace(0.87, 3.0, 21))
    g = mf.height_G(xs + 1j * ys)
    assert np.max(g) <= 1.0 + 1e-12
    assert float(mf.height_G(rho)) == pytest.approx(1.0, abs=1e-10)


def test_log_phi_diagonal_is_real():
    z = np.array([1j, 0.3 + 0.8j, -0.2 + 2j])
    assert np.max(np.abs(mf.log_phi(z, z).imag)) < 1e-12


def test_qseries_config_validation():
    with pytest.raises(ValueError):
        mf.QSeriesConfig(truncation_order=0)
