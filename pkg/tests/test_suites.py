import numpy as np
import pytest

from berezinlab import halfplane as hp
from berezinlab import suites as su
from berezinlab.reports import VerificationReport


def test_aliases_expand_in_order():
    assert su.resolve_suites(["positivity-basic"]) == ["positivity"]
    assert su.resolve_suites(["all"]) == list(su.SUITES)
    assert su.resolve_suites(["area", "core"])[0] == "area"


def test_unknown_suite():
    with pytest.raises(KeyError):
        su.resolve_suites(["nope"])


def test_unknown_budget():
    with pytest.raises(ValueError):
        su.SuiteOptions(budget="huge").level


def test_quadrature_override_applies():
    opt = su.SuiteOptions(budget="low", quadrature=(("n_f", 12),))
    assert opt.level.spec.n_f == 12


def test_near_probe_pairs_within_distance():
    pairs = su.near_probe_pairs(np.random.default_rng(0), 25, 1.0)
    assert all(hp.hyperbolic_distance(z, xi) <= 1.0 for z, xi in pairs)


def test_diagnostic_reports_do_not_gate():
    ok = VerificationReport.build("a", "d", labels={}, params={}, residuals=[0.0], tolerance=1.0)
    bad = VerificationReport.build("b", "d", labels={}, params={}, residuals=[2.0], tolerance=1.0)
    bad.details["role"] = "diagnostic"
    assert su.suite_passed([ok, bad])
    bad.details["role"] = "gate"
    assert not su.suite_passed([ok, bad])


def test_cheap_suites_pass_at_low_budget():
    for name in ("calibration", "area", "rank-one", "positivity", "traces"):
        assert su.suite_passed(su.run_suite(name, su.SuiteOptions(budget="low"))), name
