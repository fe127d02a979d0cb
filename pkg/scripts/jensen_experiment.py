#!/usr/bin/env python3
"""Compute the power-series coefficients of the completed zeta function on
the critical line (in the rotated variable t, where s = 1/2 + i*sqrt(t)),
build the degree-3 binomially weighted polynomial, and run the root-sum
iteration on it for m = 1 and m = 2.

Run: python scripts/jensen_experiment.py [n_max]
"""

import sys

from nrsm import nrs, xi
from nrsm.scalars import print_scalar


def main() -> None:
    n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 100
    series = xi.xi_coefficients(n_max, 8, 384)
    print(f"series coefficients (truncation n_max = {n_max}):")
    for j, aj in enumerate(series.a[:4]):
        print(f"  a_{j} = {print_scalar(aj)}")

    p = xi.jensen_polynomial(series, 3)
    print("\ndegree-3 polynomial coefficients:")
    print("  " + "  ".join(print_scalar(c) for c in p.coeffs))

    for m in (1, 2):
        result = nrs.run(p, m, max_steps=40)
        print(f"\nm = {m}: verdict {result.verdict}")
        for row in result.rows[:8]:
            print(f"  n={row.n}  J_total={print_scalar(row.J_total)}  "
                  f"sum={print_scalar(row.partial_sum)}")
        print(f"  limit = {print_scalar(result.limit)}")


if __name__ == "__main__":
    main()
