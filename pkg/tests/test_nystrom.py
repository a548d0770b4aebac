import numpy as np
import pytest

from berezinlab import nystrom as ny
from berezinlab import symbols as S
from berezinlab.quadrature import QuadratureSpec
from berezinlab.symbols import dc_over_c


@pytest.fixture(scope="module")
def grid():
    return ny.NystromGrid(1j, 0.3 + 1.2j, 20, 24, decay=16.0)


def test_constant_star_constant(grid):
    one = grid.function("one")
    out = one.star(one, 8.0)
    assert abs(out.at_pair - 1.0) < 1e-10


def test_star_matches_generic_quadrature(grid):
    k = S.PhiPowerKernel(0.1)
    K = grid.kernel(k)
    val = K.star(K, 8.0).at_pair
    ref = complex(S.star_product(k, k, 8.0, QuadratureSpec())(1j, 0.3 + 1.2j))
    assert abs(val - ref) / abs(ref) < 1e-4


def test_grid_cocycle_matches_generic():
    grid = ny.NystromGrid(1j, 0.3 + 1.2j, 24, 32, decay=16.0)
    k = S.PhiPowerKernel(0.1)
    K = grid.kernel(k)
    val = ny.grid_cocycle(K, K, 8.0).at_pair
    ref = complex(S.cocycle(k, k, 8.0, QuadratureSpec())(1j, 0.3 + 1.2j))
    # absolute agreement is about 5e-6 on a cocycle of size 1e-2
    assert abs(val - ref) / abs(ref) < 1e-3


def test_chi_at_equal_weights_is_projection(grid):
    K = grid.kernel(S.PhiPowerKernel(0.1))
    a = ny.chi_dual_grid(K, 8.0, 8.0).at_pair
    b = ny.projection(K, 8.0).at_pair
    assert a == pytest.approx(b, rel=1e-12)
    with pytest.raises(ValueError):
        ny.chi_dual_grid(K, 9.0, 8.0)


def test_projection_of_log_d(grid):
    # P_t(log d) = -(1/2) c'/c on constants' scale: the projection of log d is constant
    val = ny.projection(grid.function("log_d"), 8.0).at_pair
    assert val.real == pytest.approx(-0.5 * dc_over_c(8.0), rel=2e-3)


def test_unknown_grid_function(grid):
    with pytest.raises(ValueError):
        grid.function("nope")
