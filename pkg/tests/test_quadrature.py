import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from berezinlab import halfplane as hp
from berezinlab import quadrature as q


def test_spec_validation():
    with pytest.raises(ValueError):
        q.QuadratureSpec(scheme="monte-carlo")
    with pytest.raises(ValueError):
        q.QuadratureSpec(n_radial=0)
    with pytest.raises(ValueError):
        q.QuadratureSpec(radial_cutoff=0.0)


@pytest.mark.parametrize("t", [4.0, 5.0, 6.0, 8.0, 12.0])
def test_inner_constant_matches_closed_form(t):
    assert complex(q.inner_constant_K(t)).real == pytest.approx(q.K_closed_form(t), rel=1e-8)


def test_inner_constant_diverges_at_two():
    assert q.K_closed_form(2.0) == math.inf


@given(st.floats(4.0, 14.0), st.floats(-1.0, 1.0), st.floats(0.4, 2.5))
def test_inner_constant_anchor_independent(t, x, y):
    val = complex(q.inner_constant_K(t, anchor=complex(x, y))).real
    assert val == pytest.approx(8.0 * math.pi / (t - 2.0), rel=1e-7)


def test_area_routes():
    assert q.fundamental_domain_area().value.real == pytest.approx(math.pi / 3.0, abs=1e-12)
    f = q.integrate_F(lambda z: np.ones_like(z, dtype=complex))
    assert f.value.real == pytest.approx(math.pi / 3.0, abs=1e-10)


def test_quasi_random_scheme_is_seeded_and_close():
    spec = q.QuadratureSpec(scheme="quasi-random", n_qmc=4096, seed=3)
    a = q.integrate_H(lambda eta: hp.weight_d(1j, eta) ** 6, spec=spec, decay=6.0)
    b = q.integrate_H(lambda eta: hp.weight_d(1j, eta) ** 6, spec=spec, decay=6.0)
    assert a.value == b.value
    assert a.value.real == pytest.approx(2.0 * math.pi, rel=1e-2)


def test_cartesian_rule_integrates_nu_t_mass():
    # int y^(t-2) exp(-2 r y) dx dy / (x^2 + 1)^2 at t = 6, r = 1: (pi/2) * Gamma(5)/2^5
    t, r = 6.0, 1.0
    val = q.integrate_cartesian(lambda z: np.exp(-2 * r * z.imag) / (z.real**2 + 1) ** 2, 0.0, 1.0, t, r, 64, 32)
    assert val.value.real == pytest.approx(0.5 * math.pi * math.gamma(5) / 2**5, rel=1e-10)


def test_disk_rule_weights_sum_to_area_of_beta_density():
    w, wt = q.disk_rule(16, 16, 0.0)
    # nu0 pulled back to the disk has infinite mass; the weights integrate d^p for p = 4 exactly
    eta = hp.disk_to_halfplane(w, 1j)
    assert np.sum(wt * hp.weight_d(1j, eta) ** 4) == pytest.approx(4.0 * math.pi, rel=1e-10)
