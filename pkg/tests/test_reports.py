import json

from berezinlab import reports as R
from berezinlab.quadrature import QuadratureSpec


def test_report_schema_and_pass_logic():
    r = R.VerificationReport.build("x.y", "description", labels={"k": "1"}, params={"t": 8.0},
                                   residuals=[1e-9, 2e-9], tolerance=1e-8, spec=QuadratureSpec())
    d = json.loads(r.to_json())
    assert set(d) >= {"identity_id", "paper_ref", "inputs", "residuals", "tolerance", "pass", "spec_hash",
                      "wall_time_ms"}
    assert d["pass"] is True
    assert d["inputs"] == {"labels": {"k": "1"}, "params": {"t": 8.0}}
    assert d["wall_time_ms"] is None


def test_nan_residual_fails():
    r = R.VerificationReport.build("x", "d", labels={}, params={}, residuals=[float("nan")], tolerance=1.0)
    assert not r.passed


def test_spec_hash_depends_on_spec():
    a = R.spec_hash(QuadratureSpec(), {"t": 8})
    b = R.spec_hash(QuadratureSpec(n_f=12), {"t": 8})
    assert a != b and a == R.spec_hash(QuadratureSpec(), {"t": 8})


def test_csv_quoting():
    text = R.write_csv([["a,b", 1.5]], ["name", "value"])
    assert text == 'name,value\n"a,b",1.5\n'


def test_complex_serialization():
    assert R._jsonable(1 + 2j) == {"re": 1.0, "im": 2.0}
