import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from berezinlab import modular as mf
from berezinlab import symbols as S
from berezinlab.invariant_traces import Compose, InvariantTraceEngine, eval_terms, phi_terms

Z = np.array([1j, 0.2 + 0.9j, -0.4 + 1.3j])
XI = np.array([0.3 + 1.2j, -0.3 + 1.5j, 0.1 + 0.7j])

kernel_family = st.sampled_from([
    S.ConstantKernel(2.0), S.PhiPowerKernel(0.1), S.PhiPowerKernel(0.25, 1 - 1j),
    S.LogPhiKernel(S.PhiPowerKernel(0.2), 1.0, -0.5), S.LogPhiKernel(S.ConstantKernel(1.0), 0.5, 0.0),
])


@given(kernel_family, kernel_family, st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
def test_term_expansion_reproduces_kernel(k, l, a):
    for kern in (k + a * l, k.schur(l), k.adjoint()):
        terms = phi_terms(kern)
        vals = eval_terms(terms, mf.log_phi(Z, XI))
        assert np.allclose(vals, kern(Z, XI), rtol=1e-10, atol=1e-12)


def test_term_expansion_rejects_foreign_kernels():
    with pytest.raises(TypeError):
        phi_terms(S.RankOneKernel(1j, 1j, 6.0))


@pytest.fixture(scope="module")
def engine():
    return InvariantTraceEngine(8.0, 4, (12, 16), (12, 20))


def test_engine_trace_of_identity(engine):
    one = S.ConstantKernel(1.0)
    f, b = engine.values(one)
    assert engine.pair(f, b) == pytest.approx(1.0, rel=1e-3)


def test_engine_values_match_kernel(engine):
    k = S.PhiPowerKernel(0.1, 1 + 1j)
    f, b = engine.values(k)
    zc = engine.z[:, None]
    assert np.allclose(f, k(zc, engine.eta), rtol=1e-10)
    assert np.allclose(b, k(engine.eta, zc), rtol=1e-10)


def test_engine_groupings_agree(engine):
    k, l, m = S.PhiPowerKernel(0.1), S.PhiPowerKernel(0.2), S.PhiPowerKernel(0.15)
    (kl_f, _), (lm_f, lm_b) = engine.compose([Compose(k, l), Compose(l, m)])
    _, m_b = engine.values(m)
    k_f, _ = engine.values(k)
    a = engine.pair(kl_f, m_b)
    b = engine.pair(k_f, lm_b)
    assert abs(a - b) / abs(a) < 5e-3


def test_engine_rejects_unknown_kind(engine):
    with pytest.raises(ValueError):
        engine.compose([Compose(S.ConstantKernel(1.0), S.ConstantKernel(1.0), "bogus")])
