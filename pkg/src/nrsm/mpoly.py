"""Sparse multivariate polynomials over Scalar in variables x_0..x_{m-1}.

Terms live in a map from exponent vector to nonzero coefficient; zero results
are the empty map. This is the carrier for the auxiliary functions and their
gradients, so the operation set is deliberately small: ring operations,
formal partial derivatives, and evaluation.
"""

from __future__ import annotations

from typing import Dict, Iterable, Tuple

from .scalars import Scalar, one, zero

Expo = Tuple[int, ...]


class MPolyError(Exception):
    pass


class DimensionMismatch(MPolyError):
    pass


class IndexOutOfRange(MPolyError):
    pass


class MPoly:
    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Dict[Expo, Scalar] | None = None):
        self.m = m
        self.terms: Dict[Expo, Scalar] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != m:
                    raise DimensionMismatch(f"exponent {e} has length != {m}")
                if not c.is_zero():
                    self.terms[tuple(e)] = c

    @staticmethod
    def constant(m: int, c: Scalar) -> "MPoly":
        return MPoly(m, {(0,) * m: c})

    @staticmethod
    def variable(m: int, j: int, like: Scalar) -> "MPoly":
        if not 0 <= j < m:
            raise IndexOutOfRange(f"variable index {j} outside 0..{m - 1}")
        e = tuple(1 if i == j else 0 for i in range(m))
        return MPoly(m, {e: one(like)})

    @staticmethod
    def zero(m: int) -> "MPoly":
        return MPoly(m)

    def is_zero(self) -> bool:
        return not self.terms

    def _require_same_m(self, other: "MPoly") -> None:
        if self.m != other.m:
            raise DimensionMismatch(f"variable counts differ: {self.m} vs {other.m}")

    def __add__(self, other: "MPoly") -> "MPoly":
        self._require_same_m(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            if e in terms:
                s = terms[e] + c
                if s.is_zero():
                    del terms[e]
                else:
                    terms[e] = s
            else:
                terms[e] = c
        out = MPoly(self.m)
        out.terms = terms
        return out

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + other.scale_by(-1)

    def __mul__(self, other: "MPoly") -> "MPoly":
        self._require_same_m(other)
        terms: Dict[Expo, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if e in terms:
                    s = terms[e] + c
                    if s.is_zero():
                        del terms[e]
                    else:
                        terms[e] = s
                elif not c.is_zero():
                    terms[e] = c
        out = MPoly(self.m)
        out.terms = terms
        return out

    def scale(self, c: Scalar) -> "MPoly":
        if c.is_zero():
            return MPoly(self.m)
        out = MPoly(self.m)
        out.terms = {e: v * c for e, v in self.terms.items()}
        return out

    def scale_by(self, n: int) -> "MPoly":
        if not self.terms:
            return MPoly(self.m)
        sample = next(iter(self.terms.values()))
        c = Scalar.exact(n) if sample.is_exact else Scalar.flt(n, sample.precision)
        return self.scale(c)

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise MPolyError("negative polynomial power")
        result: "MPoly" | None = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        if result is None:
            # x^0 needs a coefficient variant; default exact 1
            return MPoly.constant(self.m, Scalar.exact(1))
        return result

    def partial_derivative(self, j: int) -> "MPoly":
        if not 0 <= j < self.m:
            raise IndexOutOfRange(f"variable index {j} outside 0..{self.m - 1}")
        terms: Dict[Expo, Scalar] = {}
        for e, c in self.terms.items():
            k = e[j]
            if k == 0:
                continue
            mult = Scalar.exact(k) if c.is_exact else Scalar.flt(k, c.precision)
            e2 = e[:j] + (k - 1,) + e[j + 1:]
            v = c * mult
            if e2 in terms:
                terms[e2] = terms[e2] + v
            else:
                terms[e2] = v
        out = MPoly(self.m)
        out.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        return out

    def evaluate(self, point: Iterable[Scalar]) -> Scalar:
        point = list(point)
        if len(point) != self.m:
            raise DimensionMismatch(f"point has {len(point)} coords, need {self.m}")
        if not self.terms:
            return Scalar.exact(0) if (not point or point[0].is_exact) else zero(point[0])
        # cache per-variable powers up to the largest exponent used
        max_e = [0] * self.m
        for e in self.terms:
            for i, k in enumerate(e):
                if k > max_e[i]:
                    max_e[i] = k
        powers = []
        for i in range(self.m):
            p = [one(point[i])]
            for _ in range(max_e[i]):
                p.append(p[-1] * point[i])
            powers.append(p)
        acc = None
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    term = term * powers[i][k]
            acc = term if acc is None else acc + term
        return acc

    def sorted_terms(self):
        """Graded lexicographic term order, largest first."""
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __repr__(self):
        return f"MPoly({self.m}, {self.render()})"

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{i}^{k}" if k > 1 else f"x{i}"
                for i, k in enumerate(e) if k
            )
            cs = str(c.value)
            parts.append(f"({cs})*{mono}" if mono else f"({cs})")
        return " + ".join(parts)

    def to_float(self, precision: int) -> "MPoly":
        out = MPoly(self.m)
        out.terms = {e: c.to_float(precision) for e, c in self.terms.items()}
        return out
