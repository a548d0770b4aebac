"""The eleven acceptance criteria at their stated tolerances and runtime limits.

Each test prints one line ``PASS|FAIL <n> <name>: ...``.  Gate reports decide
the outcome; diagnostic reports (identities in a normalization that the
measurement rejects) are listed in the line but never gate it.
"""
import time

import pytest

from berezinlab.cli import suite_document
from berezinlab.suites import SuiteOptions, gate_reports, run_suite

CRITERIA = [
    # number, name, suites, budget, runtime limit in seconds
    (1, "reproducing calibration", ["calibration"], "med", 60),
    (2, "fundamental-domain area", ["area"], "med", 5),
    (3, "rank-one star-product oracle", ["rank-one"], "med", 300),
    (4, "Bergman finite-section oracle", ["bergman"], "med", 300),
    (5, "positivity suite", ["positivity"], "med", 120),
    (6, "monotonicity suites", ["monotonicity"], "med", 120),
    (7, "trace identities", ["traces"], "med", 120),
    (8, "analytic form identities", ["analytic"], "med", 600),
    (9, "coboundary suite", ["coboundary"], "med", 1800),
    (10, "dual and general-g suite", ["dual"], "high", 2700),
]


def _describe(reports) -> str:
    gates = gate_reports(reports)
    worst = max(gates, key=lambda r: r.max_residual / r.tolerance if r.tolerance else r.max_residual)
    diag = [r for r in reports if r.details.get("role") == "diagnostic"]
    text = f"{len(gates)} gate reports, worst {worst.identity_id} {worst.max_residual:.2e} (tol {worst.tolerance:.0e})"
    if diag:
        text += "; diagnostics: " + ", ".join(
            f"{r.identity_id} {'PASS' if r.passed else 'FAIL'} {r.max_residual:.2e}" for r in diag)
    return text


@pytest.mark.slow
@pytest.mark.parametrize("number,name,suites,budget,limit", CRITERIA, ids=[f"criterion{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, name, suites, budget, limit, acceptance_log):
    opt = SuiteOptions(budget=budget, seed=0)
    start = time.perf_counter()
    reports = [r for s in suites for r in run_suite(s, opt)]
    elapsed = time.perf_counter() - start
    gates_ok = all(r.passed for r in gate_reports(reports))
    ok = gates_ok and elapsed < limit
    acceptance_log(f"{'PASS' if ok else 'FAIL'} {number} {name} [budget {budget}, {elapsed:.1f}s < {limit}s]: "
                   f"{_describe(reports)}")
    failing = [r.summary_line() for r in gate_reports(reports) if not r.passed]
    assert gates_ok, failing
    assert elapsed < limit


@pytest.mark.slow
def test_criterion11_determinism(acceptance_log):
    names = ["calibration", "rank-one", "positivity", "monotonicity", "traces", "analytic"]
    opt = SuiteOptions(budget="low", seed=11)
    first = [suite_document(n, opt, run_suite(n, opt)) for n in names]
    second = [suite_document(n, opt, run_suite(n, opt)) for n in names]
    same = [a == b for a, b in zip(first, second)]
    ok = all(same)
    acceptance_log(f"{'PASS' if ok else 'FAIL'} 11 determinism: {sum(same)}/{len(names)} suite JSON documents "
                   f"byte-identical across two runs (seed 11, budget low)")
    assert ok
