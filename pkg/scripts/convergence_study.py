"""Residual against quadrature size for a few identities; writes a CSV table.

    python3 scripts/convergence_study.py --out convergence.csv
"""
import argparse
import sys

import numpy as np

from berezinlab import bergman_oracle as bo
from berezinlab import nystrom as ny
from berezinlab import symbols as S
from berezinlab.quadrature import QuadratureSpec
from berezinlab.reports import write_csv

Z, XI = 1j, 0.3 + 1.2j


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", help="CSV file (default stdout)")
    p.add_argument("--t", type=float, default=8.0)
    args = p.parse_args()
    t = args.t
    rows = []
    one = S.ConstantKernel(1.0)
    k = S.PhiPowerKernel(0.1)
    ref_spec = QuadratureSpec(n_radial=64, n_angular=80)
    c_ref = complex(S.cocycle(k, k, t, ref_spec)(Z, XI))
    for nr in (8, 12, 16, 24, 32, 48):
        spec = QuadratureSpec(n_radial=nr, n_angular=nr + 8)
        rows.append(["reproducing", nr, spec.n_angular, abs(complex(S.star_product(one, one, t, spec)(Z, XI)) - 1.0)])
        c = complex(S.cocycle(k, k, t, spec)(Z, XI))
        rows.append(["cocycle_vs_reference", nr, spec.n_angular, abs(c - c_ref) / abs(c_ref)])
    for na in (24, 32, 40, 48):
        r = ny.dual_coboundary_at(k, k, t, Z, XI, 0.1, 24, na, cocycle_value=c_ref)
        rows.append(["y_coboundary_corrected", 24, na, r.corrected_residual(t)])
    r1 = S.RankOneKernel(1j, 0.3 + 1.1j, 6.0)
    r2 = S.RankOneKernel(-0.2 + 0.8j, 0.5 + 1.4j, 6.0)
    for n in (8, 12, 16, 24, 32):
        rep = bo.section_star_check(r1, r2, 6.0, n)
        rows.append(["bergman_section", n, 0, rep.max_residual])
    text = write_csv(rows, ["identity", "n_radial_or_N", "n_angular", "residual"])
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
