"""Run the acceptance criteria without pytest and print one PASS/FAIL line per criterion.

    python3 scripts/run_acceptance.py [--only 1,2,9]
"""
import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))

from test_acceptance import CRITERIA, _describe  # noqa: E402

from berezinlab.cli import suite_document  # noqa: E402
from berezinlab.suites import SuiteOptions, gate_reports, run_suite  # noqa: E402


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--only", help="comma-separated criterion numbers")
    args = p.parse_args()
    wanted = {int(x) for x in args.only.split(",")} if args.only else None
    all_ok = True
    for number, name, suites, budget, limit in CRITERIA:
        if wanted and number not in wanted:
            continue
        opt = SuiteOptions(budget=budget)
        start = time.perf_counter()
        reports = [r for s in suites for r in run_suite(s, opt)]
        elapsed = time.perf_counter() - start
        ok = all(r.passed for r in gate_reports(reports)) and elapsed < limit
        all_ok &= ok
        print(f"{'PASS' if ok else 'FAIL'} {number} {name} [{elapsed:.1f}s < {limit}s]: {_describe(reports)}", flush=True)
    if not wanted or 11 in wanted:
        names = ["calibration", "rank-one", "positivity", "monotonicity", "traces", "analytic"]
        opt = SuiteOptions(budget="low", seed=11)
        same = [suite_document(n, opt, run_suite(n, opt)) == suite_document(n, opt, run_suite(n, opt)) for n in names]
        all_ok &= all(same)
        print(f"{'PASS' if all(same) else 'FAIL'} 11 determinism: {sum(same)}/{len(names)} byte-identical", flush=True)
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
