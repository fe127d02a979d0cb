"""Construction of the auxiliary functions f_{i,m} for a given polynomial.

The functions are built from partial blocks and partial trees via the
three-case recurrence (terminal class 0, the middle classes, and the top
class m-1). A direct enumerator over block sequences is included as an
independent oracle for the recurrence at desk scale.
"""

from __future__ import annotations

import math
from typing import Dict, List, Tuple

from .mpoly import MPoly
from .scalars import Polynomial, Scalar, ZeroDenominator

__all__ = [
    "AuxError",
    "RangeError",
    "SOnFinal",
    "AuxSystem",
    "partial_block",
    "partial_trees",
    "aux_function",
    "build_aux_system",
    "enumerate_partial_tree_sums",
]


class AuxError(Exception):
    pass


class RangeError(AuxError):
    pass


class SOnFinal(AuxError):
    """The top terminal class is only defined with zero trailing empties."""


def _ratio(p: Polynomial, idx: int, m: int) -> Scalar:
    """-a_idx / a_m, with a_idx = 0 outside the coefficient range."""
    am = p.coeff(m)
    if am.is_zero():
        raise ZeroDenominator(f"a_{m} = 0")
    return -(p.coeff(idx) / am)


def _int_scalar(n: int, like: Scalar) -> Scalar:
    return Scalar.exact(n) if like.is_exact else Scalar.flt(n, like.precision)


def partial_block(m: int, k: int, h: int, p: Polynomial) -> MPoly:
    """Sum of the monomials of all (k,h) partial blocks, as a polynomial in x.

    (-a_{m-h-1}/a_m) (-a_{m-1}/a_m)^{k-2-h} * sum_{i=h-k+2}^{m-1} (x_i + c*[i==1])
    with c = -a_{m-1}/a_m. The [i==1] constant covers the block whose lead tree
    is the single vertex; it enters exactly when h = k-1.
    """
    if m < 2:
        raise RangeError("no blocks of length >= 2 exist when m = 1")
    if not (1 <= h <= m - 1 and 2 <= k <= h + 1):
        raise RangeError(f"(k={k}, h={h}) outside 2<=k<=h+1<=m")
    c = _ratio(p, m - 1, m)
    if c.is_zero() and k - 2 - h < 0:
        raise ZeroDenominator("a_{m-1} = 0 with negative block exponent")
    lead = _ratio(p, m - h - 1, m) * c ** (k - 2 - h)
    acc = MPoly.zero(m)
    for i in range(h - (k - 2), m):
        term = MPoly.variable(m, i, lead)
        if i == 1:
            term = term + MPoly.constant(m, c)
        acc = acc + term
    return acc.scale(lead)


def _block_sums(m: int, p: Polynomial) -> Dict[int, MPoly]:
    """sum_{h=k-1}^{m-1} partial_block(k, h) for each block length k = 2..m."""
    sums: Dict[int, MPoly] = {}
    for k in range(2, m + 1):
        acc = MPoly.zero(m)
        for h in range(k - 1, m):
            acc = acc + partial_block(m, k, h, p)
        sums[k] = acc
    return sums


class _Builder:
    """Memoizing builder for one (polynomial, m) pair."""

    def __init__(self, m: int, p: Polynomial):
        if not 1 <= m <= p.degree:
            raise RangeError(f"m = {m} outside 1..deg = {p.degree}")
        if p.coeff(m).is_zero():
            raise ZeroDenominator(f"a_{m} = 0")
        if p.coeff(m - 1).is_zero():
            raise ZeroDenominator(f"a_{m - 1} = 0")
        self.m = m
        self.p = p
        self.c = _ratio(p, m - 1, m)
        self.block_sums = _block_sums(m, p) if m >= 2 else {}
        self._pt: Dict[int, MPoly] = {}
        self._f: Dict[Tuple[int, int], MPoly] = {}
        # x_0 + ... + x_{m-1} + c, the unit-length block sum
        acc = MPoly.constant(m, self.c)
        for i in range(m):
            acc = acc + MPoly.variable(m, i, self.c)
        self.unit_sum = acc

    def partial_trees(self, s: int) -> MPoly:
        if s in self._pt:
            return self._pt[s]
        m, p = self.m, self.p
        d = p.degree
        budget = d - m + 1 - s  # cap on sum(i * n_i): larger indices vanish
        acc = MPoly.zero(m)
        if budget >= 0:
            for nvec in _bounded_vectors(m, budget):
                weighted = sum(i * n for i, n in enumerate(nvec, start=1))
                if s + weighted < 2:
                    continue
                root = _ratio(p, s + m - 1 + weighted, m)
                if root.is_zero():
                    continue
                multinom = math.factorial(sum(nvec))
                for n in nvec:
                    multinom //= math.factorial(n)
                term = MPoly.constant(m, root * _int_scalar(multinom, root))
                if nvec[0]:
                    term = term * self.unit_sum ** nvec[0]
                for k in range(2, m + 1):
                    if nvec[k - 1]:
                        term = term * self.block_sums[k] ** nvec[k - 1]
                acc = acc + term
        self._pt[s] = acc
        return acc

    def aux(self, i: int, s: int) -> MPoly:
        if not 0 <= i <= self.m - 1:
            raise RangeError(f"terminal class {i} outside 0..{self.m - 1}")
        if s < 0:
            raise RangeError("s must be non-negative")
        key = (i, s)
        if key in self._f:
            return self._f[key]
        m = self.m
        if i == m - 1:
            # top class wins over class 0 when m = 1
            if s != 0:
                raise SOnFinal("the top terminal class is defined at s = 0 only")
            f = self.partial_trees(m - 1).scale(self.c ** (m - 1))
            for k in range(0, m - 1):
                xs = MPoly.zero(m)
                for j in range(m - k - 1, m):
                    xs = xs + MPoly.variable(m, j, self.c)
                f = f + (xs * self.partial_trees(k + 1)).scale(self.c ** k)
        elif i == 0:
            f = MPoly.variable(m, 0, self.c) * self.partial_trees(s + 1)
            for k in range(2, m + 1):
                f = f + self.block_sums[k] * self.partial_trees(s + k)
            if s >= 2:
                f = f + MPoly.constant(m, _ratio(self.p, m - 1 + s, m))
        else:
            f = (MPoly.variable(m, i, self.c) * self.partial_trees(s + 1)
                 + self.aux(i - 1, s + 1).scale(self.c))
        self._f[key] = f
        return f


def _bounded_vectors(m: int, budget: int) -> List[Tuple[int, ...]]:
    """All (n_1..n_m) >= 0 with sum(i * n_i) <= budget."""
    out: List[Tuple[int, ...]] = []

    def rec(prefix: List[int], i: int, left: int) -> None:
        if i > m:
            out.append(tuple(prefix))
            return
        for n in range(left // i + 1):
            rec(prefix + [n], i + 1, left - i * n)

    rec([], 1, budget)
    return out


def partial_trees(m: int, s: int, p: Polynomial) -> MPoly:
    return _Builder(m, p).partial_trees(s)


def aux_function(m: int, i: int, s: int, p: Polynomial) -> MPoly:
    return _Builder(m, p).aux(i, s)


class AuxSystem:
    """The m auxiliary functions of a polynomial plus their Jacobian."""

    def __init__(self, m: int, p: Polynomial, f: List[MPoly], jac: List[List[MPoly]]):
        self.m = m
        self.p = p
        self.f = f
        self.jac = jac

    def dump(self) -> str:
        """Graded-lex rendering of every function, for golden-file comparison."""
        lines = []
        for i, fi in enumerate(self.f):
            lines.append(f"f[{i}] = {fi.render()}")
        return "\n".join(lines)


def build_aux_system(m: int, p: Polynomial) -> AuxSystem:
    builder = _Builder(m, p)
    f = [builder.aux(i, 0) for i in range(m)]
    jac = [[fi.partial_derivative(j) for j in range(m)] for fi in f]
    return AuxSystem(m, p, f, jac)


# --- independent oracle: direct enumeration of block sequences ------------

def _all_blocks(m: int, p: Polynomial):
    """Every partial block with its (tag, length, monomial) description."""
    blocks = []
    c = _ratio(p, m - 1, m)
    for i in range(m):
        blocks.append((("var", i), 1, MPoly.variable(m, i, c)))
    blocks.append((("t0",), 1, MPoly.constant(m, c)))
    for h in range(1, m):
        for k in range(2, h + 2):
            lead = _ratio(p, m - 1 - h, m) * c ** (k - 2 - h)
            for i in range(h - (k - 2), m):
                blocks.append((("kh", i, k, h), k,
                               MPoly.variable(m, i, c).scale(lead)))
    for k in range(2, m + 1):
        blocks.append((("t0kh", k), k,
                       MPoly.constant(m, _ratio(p, m - k, m))))
    return blocks


def _terminal_class_of_sequence(tags, m: int) -> int:
    trailing = 0
    idx = len(tags) - 1
    while idx >= 0 and tags[idx][0] == "t0":
        trailing += 1
        idx -= 1
    if idx < 0:
        return min(trailing, m - 1)
    last = tags[idx]
    if last[0] == "var":
        i = last[1]
        if i == m - 1:
            return m - 1
        return min(trailing + i, m - 1)
    # a length >= 2 block ends in a negative-degree vertex
    if trailing == 0:
        return 0
    return min(trailing, m - 1)


def enumerate_partial_tree_sums(m: int, p: Polynomial) -> List[MPoly]:
    """Sum the monomials of all block sequences with nonzero root factor,
    classified by terminal class. Independent of the recurrence path; used to
    cross-check aux_function output exactly.
    """
    d = p.degree
    max_len = d - m + 1
    blocks = _all_blocks(m, p)
    sums = [MPoly.zero(m) for _ in range(m)]

    def rec(tags, total_len, product: MPoly):
        if 2 <= total_len <= max_len:
            root = _ratio(p, m - 1 + total_len, m)
            if not root.is_zero():
                cls = _terminal_class_of_sequence(tags, m)
                sums[cls] = sums[cls] + product.scale(root)
        if total_len >= max_len:
            return
        for tag, length, poly in blocks:
            if total_len + length <= max_len:
                rec(tags + [tag], total_len + length, product * poly)

    rec([], 0, MPoly.constant(m, Scalar.exact(1) if p.is_exact
                              else Scalar.flt(1, p.precision)))
    return sums
