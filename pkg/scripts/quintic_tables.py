#!/usr/bin/env python3
"""Reproduce the iteration tables for the rational quintic with zeros
1, 2, 4, 8, 16: one table per m in 1..4 plus the m = 5 shortcut row.

Run: python scripts/quintic_tables.py
"""

from nrsm import nrs
from nrsm.scalars import poly_from_strings, print_scalar

COEFFS = ["1", "-31/16", "155/128", "-155/512", "31/1024", "-1/1024"]
STEPS = {1: 7, 2: 8, 3: 8, 4: 7}


def emit(m: int, steps: int) -> None:
    p = poly_from_strings(COEFFS, 384, force_float=True)
    result = nrs.run(p, m, max_steps=steps)
    print(f"\n== m = {m} ==")
    header = ["n"] + [f"J_{i}" for i in range(m)] + ["J_total", "partial_sum"]
    print("  ".join(h.rjust(17) for h in header))
    for row in result.rows:
        cells = ([str(row.n)] + [print_scalar(j) for j in row.J]
                 + [print_scalar(row.J_total), print_scalar(row.partial_sum)])
        print("  ".join(c.rjust(17) for c in cells))


def main() -> None:
    for m, steps in STEPS.items():
        emit(m, steps)
    # m = degree: the aux system vanishes and the base term is already the
    # full root sum 1 + 2 + 4 + 8 + 16 = 31, exactly in rational mode
    p = poly_from_strings(COEFFS, None)
    result = nrs.run(p, 5, max_steps=2)
    print(f"\n== m = 5 (exact) ==")
    print(f"verdict {result.verdict}; partial sum = {result.limit.value}")


if __name__ == "__main__":
    main()
