import random

import pytest

from nrsm.scalars import Polynomial, Scalar, poly_from_strings

# f(z) = (1-z)(1-z/2)(1-z/4)(1-z/8)(1-z/16); zeros 1, 2, 4, 8, 16
QUINTIC_COEFFS = ["1", "-31/16", "155/128", "-155/512", "31/1024", "-1/1024"]


@pytest.fixture(scope="session")
def quintic_exact() -> Polynomial:
    return poly_from_strings(QUINTIC_COEFFS, None)


@pytest.fixture(scope="session")
def quintic_float() -> Polynomial:
    return poly_from_strings(QUINTIC_COEFFS, 384, force_float=True)


def poly_from_roots(roots, precision=None):
    """prod (1 - z/r) with exact rational roots; float if precision given."""
    coeffs = [Scalar.exact(1)]
    for r in roots:
        inv = -(Scalar.exact(1) / Scalar.exact(*r if isinstance(r, tuple) else (r,)))
        nxt = [Scalar.exact(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] = nxt[i] + c
            nxt[i + 1] = nxt[i + 1] + c * inv
        coeffs = nxt
    p = Polynomial(coeffs)
    return p.to_float(precision) if precision else p


def random_distinct_roots(rng: random.Random, count, lo=1, hi=50, min_ratio=None):
    """Distinct rational roots in [lo, hi], optionally ratio-separated."""
    if min_ratio is None:
        vals = set()
        while len(vals) < count:
            vals.add((rng.randint(lo * 4, hi * 4), 4))
        return sorted(vals, key=lambda t: t[0] / t[1])
    roots = []
    current = rng.randint(lo * 4, lo * 8)  # quarters
    roots.append((current, 4))
    for _ in range(count - 1):
        current = int(current * min_ratio) + rng.randint(1, current // 2 + 1)
        roots.append((current, 4))
    return roots
