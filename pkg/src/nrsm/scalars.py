"""Numeric foundation: exact rationals and arbitrary-precision binary floats.

A Scalar is either Exact (a gmpy2.mpq, always in lowest terms with positive
denominator) or Float (a gmpy2.mpfr carrying its own mantissa precision).
The two variants never mix silently: combining them raises VariantMismatch.
All higher modules do their arithmetic through this single currency.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpc, mpfr, mpq, mpz

DEFAULT_PRECISION = 384

ROOT_ITERATION_CAP = 10000


class ScalarError(Exception):
    pass


class VariantMismatch(ScalarError):
    pass


class ParseError(ScalarError):
    pass


class ZeroDenominator(ScalarError):
    pass


class SingularMatrix(ScalarError):
    pass


class DimensionMismatch(ScalarError):
    pass


class NoConvergence(ScalarError):
    pass


@functools.lru_cache(maxsize=None)
def _ctx(precision: int) -> gmpy2.context:
    return gmpy2.context(precision=precision)


class Scalar:
    """Exact rational or arbitrary-precision binary float."""

    __slots__ = ("value", "precision")

    def __init__(self, value, precision=None):
        # Internal constructor; use exact()/flt()/parse_scalar() instead.
        self.value = value
        self.precision = precision

    @staticmethod
    def exact(num, den=1) -> "Scalar":
        if den == 0:
            raise ZeroDenominator("exact scalar with zero denominator")
        return Scalar(mpq(num, den), None)

    @staticmethod
    def flt(value, precision: int = DEFAULT_PRECISION) -> "Scalar":
        if precision < 64:
            raise ScalarError("float precision must be at least 64 bits")
        if isinstance(value, mpq):
            with _ctx(precision):
                return Scalar(mpfr(value), precision)
        return Scalar(mpfr(value, precision), precision)

    @property
    def is_exact(self) -> bool:
        return self.precision is None

    def to_float(self, precision: int = DEFAULT_PRECISION) -> "Scalar":
        if self.is_exact:
            return Scalar.flt(self.value, precision)
        return Scalar(mpfr(self.value, precision), precision)

    def _binop(self, other, op):
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.is_exact != other.is_exact:
            raise VariantMismatch("cannot mix Exact and Float scalars")
        if self.is_exact:
            return Scalar(op(None, self.value, other.value), None)
        if self.precision != other.precision:
            raise VariantMismatch(
                f"float precision mismatch: {self.precision} vs {other.precision}"
            )
        ctx = _ctx(self.precision)
        return Scalar(op(ctx, self.value, other.value), self.precision)

    def __add__(self, other):
        return self._binop(other, lambda c, a, b: a + b if c is None else c.add(a, b))

    def __sub__(self, other):
        return self._binop(other, lambda c, a, b: a - b if c is None else c.sub(a, b))

    def __mul__(self, other):
        return self._binop(other, lambda c, a, b: a * b if c is None else c.mul(a, b))

    def __truediv__(self, other):
        if isinstance(other, Scalar) and other.is_zero():
            raise ZeroDenominator("division by zero scalar")
        return self._binop(other, lambda c, a, b: a / b if c is None else c.div(a, b))

    def __neg__(self):
        if self.is_exact:
            return Scalar(-self.value, None)
        return Scalar(_ctx(self.precision).minus(self.value), self.precision)

    def __abs__(self):
        if self.is_exact:
            return Scalar(abs(self.value), None)
        with _ctx(self.precision):
            return Scalar(abs(self.value), self.precision)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("scalar powers must be integers")
        if n < 0:
            if self.is_zero():
                raise ZeroDenominator("zero scalar raised to negative power")
            return (Scalar.exact(1) if self.is_exact
                    else Scalar.flt(1, self.precision)) / self ** (-n)
        if self.is_exact:
            return Scalar(self.value ** n, None)
        with _ctx(self.precision):
            return Scalar(self.value ** n, self.precision)

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.is_exact != other.is_exact:
            return False
        return self.value == other.value

    def __lt__(self, other):
        if self.is_exact != other.is_exact:
            raise VariantMismatch("cannot order Exact against Float")
        return self.value < other.value

    def __le__(self, other):
        return self == other or self < other

    def __hash__(self):
        return hash((self.is_exact, self.value))

    def __repr__(self):
        if self.is_exact:
            return f"Scalar.exact({self.value})"
        return f"Scalar.flt({self.value!r}, {self.precision})"

    def __float__(self):
        return float(self.value)


def zero(like: Scalar) -> Scalar:
    return Scalar.exact(0) if like.is_exact else Scalar.flt(0, like.precision)


def one(like: Scalar) -> Scalar:
    return Scalar.exact(1) if like.is_exact else Scalar.flt(1, like.precision)


def parse_scalar(text: str, precision: int = DEFAULT_PRECISION) -> Scalar:
    """Parse "p/q", an integer, or decimal/scientific notation.

    Rational and integer forms yield Exact scalars; anything with a decimal
    point or exponent yields a Float at the given precision.
    """
    text = text.strip()
    if not text:
        raise ParseError("empty scalar text")
    if "/" in text:
        parts = text.split("/")
        if len(parts) != 2:
            raise ParseError(f"malformed rational: {text!r}")
        try:
            num, den = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"malformed rational: {text!r}") from None
        if den == 0:
            raise ZeroDenominator(f"zero denominator in {text!r}")
        return Scalar.exact(num, den)
    try:
        return Scalar.exact(int(text))
    except ValueError:
        pass
    try:
        return Scalar(mpfr(text, precision), precision)
    except ValueError:
        raise ParseError(f"malformed scalar: {text!r}") from None


def print_scalar(x: Scalar, sigfigs: int = 10) -> str:
    """Render in the d.ddd...e<exp> style used by the numeric tables."""
    if x.is_exact:
        v = mpfr(x.value, max(64, 4 * sigfigs))
    else:
        v = x.value
    if v == 0:
        return "0." + "0" * (sigfigs - 1) + "e0"
    digits, exp, _ = gmpy2.digits(abs(v), 10, sigfigs)
    # digits form 0.<digits> x 10^exp; shift to d.ddd x 10^(exp-1)
    digits = digits.ljust(sigfigs, "0")
    sign = "-" if v < 0 else ""
    return f"{sign}{digits[0]}.{digits[1:]}e{exp - 1}"


class Polynomial:
    """Dense univariate polynomial a_0 + a_1 z + ... + a_d z^d over Scalar."""

    def __init__(self, coeffs: Sequence[Scalar]):
        coeffs = list(coeffs)
        if not coeffs:
            raise ScalarError("polynomial needs at least one coefficient")
        if len(coeffs) > 1 and coeffs[-1].is_zero():
            raise ScalarError("leading coefficient must be nonzero")
        variants = {c.is_exact for c in coeffs}
        if len(variants) != 1:
            raise VariantMismatch("polynomial coefficients must share one variant")
        precisions = {c.precision for c in coeffs}
        if len(precisions) != 1:
            raise VariantMismatch("polynomial coefficients must share one precision")
        self.coeffs = coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_exact(self) -> bool:
        return self.coeffs[0].is_exact

    @property
    def precision(self):
        return self.coeffs[0].precision

    def coeff(self, k: int) -> Scalar:
        """a_k, with a_k = 0 outside 0..d."""
        if 0 <= k <= self.degree:
            return self.coeffs[k]
        return zero(self.coeffs[0])

    def __call__(self, x: Scalar) -> Scalar:
        acc = zero(x)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            return Polynomial([zero(self.coeffs[0])])
        d = []
        for k in range(1, len(self.coeffs)):
            mult = Scalar.exact(k) if self.is_exact else Scalar.flt(k, self.precision)
            d.append(self.coeffs[k] * mult)
        return Polynomial(d)

    def to_float(self, precision: int = DEFAULT_PRECISION) -> "Polynomial":
        return Polynomial([c.to_float(precision) for c in self.coeffs])

    def __repr__(self):
        return f"Polynomial({self.coeffs!r})"




class Vector:
    def __init__(self, entries: Iterable[Scalar]):
        self.entries = list(entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        return isinstance(other, Vector) and self.entries == other.entries

    def __repr__(self):
        return f"Vector({self.entries!r})"


class Matrix:
    """Row-major dense square matrix of Scalars."""

    def __init__(self, rows: Iterable[Iterable[Scalar]]):
        self.rows = [list(r) for r in rows]
        n = len(self.rows)
        if n < 1 or any(len(r) != n for r in self.rows):
            raise DimensionMismatch("matrix must be square and non-empty")

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self):
        return f"Matrix({self.rows!r})"


def solve_linear(A: Matrix, b: Vector) -> Vector:
    """Gaussian elimination with partial pivoting; exact for Exact scalars."""
    n = A.n
    if len(b) != n:
        raise DimensionMismatch(f"matrix is {n}x{n} but vector has {len(b)}")
    rows = [list(r) for r in A.rows]
    rhs = list(b)
    is_exact = rhs[0].is_exact if n else True
    for col in range(n):
        pivot_row = max(range(col, n), key=lambda r: abs(rows[r][col]).value)
        pivot = rows[pivot_row][col]
        if is_exact:
            if pivot.is_zero():
                raise SingularMatrix(f"zero pivot in column {col}")
        else:
            scale = max(
                (abs(x).value for x in rows[pivot_row]), default=mpfr(0)
            )
            threshold = mpfr(2) ** (-(pivot.precision // 2))
            if abs(pivot.value) < threshold * scale or pivot.is_zero():
                raise SingularMatrix(f"pivot below threshold in column {col}")
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            rhs[col], rhs[pivot_row] = rhs[pivot_row], rhs[col]
        for r in range(col + 1, n):
            if rows[r][col].is_zero():
                continue
            factor = rows[r][col] / rows[col][col]
            for c in range(col, n):
                rows[r][c] = rows[r][c] - factor * rows[col][c]
            rhs[r] = rhs[r] - factor * rhs[col]
    x = [zero(rhs[0]) for _ in range(n)]
    for r in range(n - 1, -1, -1):
        acc = rhs[r]
        for c in range(r + 1, n):
            acc = acc - rows[r][c] * x[c]
        x[r] = acc / rows[r][r]
    return Vector(x)


def polynomial_roots(p: Polynomial, precision: int = DEFAULT_PRECISION,
                     max_iterations: int = ROOT_ITERATION_CAP):
    """All d roots by Aberth-Ehrlich simultaneous iteration.

    Returns a list of (re, im) Float Scalar pairs sorted by ascending modulus,
    ties broken by ascending argument. Used only as an independent oracle for
    the iteration limits; nothing in the solver path depends on it.
    """
    if p.is_exact:
        p = p.to_float(precision)
    elif p.precision != precision:
        p = p.to_float(precision)
    d = p.degree
    ctx = _ctx(precision + 32)
    coeffs = [mpfr(c.value, precision + 32) for c in p.coeffs]
    dcoeffs = [ctx.mul(mpfr(k, precision + 32), coeffs[k]) for k in range(1, d + 1)]

    def ev(cs, z):
        acc = mpc(0, 0, precision=precision + 32)
        for c in reversed(cs):
            acc = ctx.add(ctx.mul(acc, z), c)
        return acc

    with ctx:
        radius = 1 + max(abs(c / coeffs[-1]) for c in coeffs[:-1])
        pi = gmpy2.const_pi()
        z = [
            mpc(radius * gmpy2.cos(2 * pi * k / d + mpfr("0.4")),
                radius * gmpy2.sin(2 * pi * k / d + mpfr("0.4")))
            for k in range(d)
        ]
        target = mpfr(2) ** (-precision + 16)
        for _ in range(max_iterations):
            done = True
            w = []
            for k in range(d):
                pv = ev(coeffs, z[k])
                dv = ev(dcoeffs, z[k])
                if dv == 0:
                    wk = mpc(0)
                else:
                    wk = pv / dv
                w.append(wk)
                if abs(wk) >= target:
                    done = False
            if done:
                break
            for k in range(d):
                s = mpc(0)
                for j in range(d):
                    if j != k and z[k] != z[j]:
                        s += 1 / (z[k] - z[j])
                denom = 1 - w[k] * s
                if denom == 0:
                    z[k] = z[k] - w[k]
                else:
                    z[k] = z[k] - w[k] / denom
        else:
            raise NoConvergence(
                f"root iteration did not converge in {max_iterations} steps"
            )
        z.sort(key=lambda c: (abs(c), gmpy2.phase(c)))
    return [
        (Scalar(mpfr(c.real, precision), precision),
         Scalar(mpfr(c.imag, precision), precision))
        for c in z
    ]


def poly_from_strings(texts: Sequence[str], precision: int = DEFAULT_PRECISION,
                      force_float: bool = False) -> Polynomial:
    """Build a polynomial from textual coefficients a_0..a_d.

    All coefficients land in a single variant: Float if any coefficient is a
    decimal or force_float is set, otherwise Exact.
    """
    coeffs = [parse_scalar(t, precision) for t in texts]
    if force_float or any(not c.is_exact for c in coeffs):
        coeffs = [c.to_float(precision) for c in coeffs]
    return Polynomial(coeffs)
