"""Power-series coefficients of the completed zeta function on the critical
line, and the Jensen polynomials built from them.

The series is xi(1/2 + i*sqrt(t)) = sum a_k t^k, computed from the expansion

    xi(s) = 1 - 2 sum_n 1/(n+1)! sum_{k<=n} (b_{k+1}/2^{k+1}) [n k] P_k(s)
    P_k(s) = s * prod_{j=0..k} (-s + 1 - 2j) + (1-s) * prod_{j=0..k} (s - 2j)
    b_k    = sum_{n>=1} e^{-pi n^2} / (pi n^2)^k

with [n k] the unsigned Stirling number of the first kind. Everything
polynomial is done in u = s - 1/2 with exact rational coefficients; the two
products swap under u -> -u, so each P_k is even in u exactly, and the
variable change u = i*sqrt(t) reduces to a sign per coefficient. Only the
b_k scaling is floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import List

import gmpy2

from .scalars import DEFAULT_PRECISION, Polynomial, Scalar

__all__ = [
    "XiError",
    "RangeError",
    "OddPowerResidual",
    "StirlingTable",
    "stirling_unsigned",
    "b_coefficient",
    "XiSeries",
    "xi_coefficients",
    "jensen_polynomial",
]

DEFAULT_NMAX = 100
DEFAULT_KMAX = 8


class XiError(Exception):
    pass


class RangeError(XiError):
    pass


class OddPowerResidual(XiError):
    """The u-expansion failed to be even; implementation or truncation fault."""


class StirlingTable:
    """Unsigned Stirling numbers of the first kind [n k], exact, n <= n_max.

    Recurrence: [0 0] = 1, [n+1 k] = n [n k] + [n k-1].
    """

    def __init__(self, n_max: int):
        if n_max < 0:
            raise RangeError("n_max must be non-negative")
        self.n_max = n_max
        rows: List[List[int]] = [[1]]
        for n in range(n_max):
            prev = rows[n]
            row = [0] * (n + 2)
            for k in range(n + 1):
                row[k] += n * prev[k]
                row[k + 1] += prev[k]
            rows.append(row)
        self.rows = rows

    def __call__(self, n: int, k: int) -> int:
        if not 0 <= n <= self.n_max:
            raise RangeError(f"n = {n} outside 0..{self.n_max}")
        if not 0 <= k <= n:
            raise RangeError(f"k = {k} outside 0..{n}")
        return self.rows[n][k]


def stirling_unsigned(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise RangeError("n and k must be non-negative")
    if k > n:
        raise RangeError(f"k = {k} exceeds n = {n}")
    return StirlingTable(n)(n, k)


def b_coefficient(k: int, precision: int = DEFAULT_PRECISION) -> Scalar:
    """Partial sum of e^{-pi n^2} / (pi n^2)^k until the next term is below
    2^(-precision-8) times the running sum. Terms decay like e^{-pi n^2}."""
    if k < 1:
        raise RangeError("k must be at least 1")
    with gmpy2.context(precision=precision + 16):
        pi = gmpy2.const_pi()
        total = gmpy2.mpfr(0)
        cutoff = gmpy2.mpfr(2) ** (-precision - 8)
        n = 1
        while True:
            pn2 = pi * (n * n)
            term = gmpy2.exp(-pn2) / pn2 ** k
            total += term
            if term < total * cutoff:
                break
            n += 1
    return Scalar(gmpy2.mpfr(total, precision), precision)


# --- exact polynomial arithmetic in u = s - 1/2 ----------------------------

def _poly_mul(a: List[Fraction], b: List[Fraction], cap: int) -> List[Fraction]:
    out = [Fraction(0)] * min(len(a) + len(b) - 1, cap + 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if i + j > cap:
                break
            out[i + j] += ai * bj
    return out


def _p_k_in_u(k: int, cap: int) -> List[Fraction]:
    """P_k(s) = s prod_{j=0..k}(-s+1-2j) + (1-s) prod_{j=0..k}(s-2j),
    as a polynomial in u = s - 1/2, truncated at degree cap."""
    half = Fraction(1, 2)
    # s * prod (-s + 1 - 2j): s = u + 1/2, -s + 1 - 2j = -u + 1/2 - 2j
    t1 = [half, Fraction(1)]
    for j in range(k + 1):
        t1 = _poly_mul(t1, [half - 2 * j, Fraction(-1)], cap)
    # (1 - s) * prod (s - 2j): 1 - s = 1/2 - u, s - 2j = u + 1/2 - 2j
    t2 = [half, Fraction(-1)]
    for j in range(k + 1):
        t2 = _poly_mul(t2, [half - 2 * j, Fraction(1)], cap)
    n = max(len(t1), len(t2))
    t1 += [Fraction(0)] * (n - len(t1))
    t2 += [Fraction(0)] * (n - len(t2))
    return [x + y for x, y in zip(t1, t2)]


@dataclass
class XiSeries:
    n_max: int
    k_max: int
    precision: int
    a: List[Scalar]

    def coeff(self, j: int) -> Scalar:
        if not 0 <= j <= self.k_max:
            raise RangeError(f"coefficient index {j} outside 0..{self.k_max}")
        return self.a[j]


def xi_coefficients(n_max: int = DEFAULT_NMAX, k_max: int = DEFAULT_KMAX,
                    precision: int = DEFAULT_PRECISION) -> XiSeries:
    """Coefficients a_0..a_{k_max} of xi(1/2 + i*sqrt(t)) = sum a_j t^j.

    The double sum over (n, k) collapses to exact rational weights
    W_k = sum_{n=k}^{n_max} [n k]/(n+1)!; each W_k multiplies the even exact
    polynomial P_k(u) and the float scale b_{k+1}/2^{k+1}. Since every P_k is
    even in u by construction, any odd-power residual is raised as a fault
    rather than silently dropped.
    """
    if n_max < 2 * k_max:
        raise RangeError(f"n_max = {n_max} below 2 * k_max = {2 * k_max}")
    if precision < 128:
        raise RangeError("precision must be at least 128 bits")
    cap = 2 * k_max
    table = StirlingTable(n_max)
    weights = [Fraction(0)] * (n_max + 1)
    for n in range(n_max + 1):
        fact = factorial(n + 1)
        for k in range(n + 1):
            weights[k] += Fraction(table(n, k), fact)

    # exact even-degree accumulation of sum_k W_k * P_k(u), one bucket per k
    # (the float b-scale differs per k, so exactness stops at that product)
    u_coeffs = [Scalar.flt(0, precision) for _ in range(cap + 1)]
    for k in range(n_max + 1):
        if weights[k] == 0:
            continue
        pk = _p_k_in_u(k, cap)
        for d in range(1, len(pk), 2):
            if pk[d] != 0:
                raise OddPowerResidual(
                    f"odd coefficient u^{d} of P_{k} is {pk[d]} != 0")
        scale = b_coefficient(k + 1, precision) * Scalar.exact(1, 2 ** (k + 1)).to_float(precision)
        for d in range(0, len(pk), 2):
            if pk[d] == 0:
                continue
            w = weights[k] * pk[d]
            u_coeffs[d] = u_coeffs[d] + scale * Scalar.exact(
                w.numerator, w.denominator).to_float(precision)

    two = Scalar.flt(2, precision)
    one_f = Scalar.flt(1, precision)
    a = []
    for j in range(k_max + 1):
        # xi = 1 - 2 * sum; u = i sqrt(t) gives u^{2j} = (-1)^j t^j
        c = -(two * u_coeffs[2 * j])
        if j == 0:
            c = c + one_f
        sign = Scalar.flt(1 if j % 2 == 0 else -1, precision)
        a.append(sign * c)
    return XiSeries(n_max=n_max, k_max=k_max, precision=precision, a=a)


def jensen_polynomial(series: XiSeries, N: int) -> Polynomial:
    """sum_{k=0..N} C(N, k) a_k z^k."""
    if not 0 <= N <= series.k_max:
        raise RangeError(f"N = {N} outside 0..{series.k_max}")
    prec = series.precision
    coeffs = [series.a[k] * Scalar.flt(comb(N, k), prec) for k in range(N + 1)]
    return Polynomial(coeffs)
