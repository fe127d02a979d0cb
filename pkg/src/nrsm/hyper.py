"""Bracket-series truncations and the tree-sum equivalence check.

The bracket series attached to the ratio a_{m-1}/a_m is an infinite sum over
integer tuples (i_0..i_n) constrained by vertex and degree balance; each
tuple corresponds to one degree sequence of words, so a graded truncation of
the series can be compared exactly against the graded tree sums. The
comparison is deliberately a report, not an assertion: a discrepancy, if one
ever appeared, would be first-class output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Optional, Tuple

from . import genluk
from .scalars import Polynomial, Scalar, ZeroDenominator, zero

IndexTuple = Tuple[int, ...]


def index_tuples(degree: int, m: int, cap: int) -> Iterator[IndexTuple]:
    """All (i_0..i_degree) >= 0 with sum_{k != m} i_k = i_m <= cap and
    sum_{k != m} k i_k = m * i_m, in sorted order."""
    slots = [k for k in range(degree + 1) if k != m]

    def rec(prefix: List[int], idx: int, left: int, weighted: int, target: int):
        if idx == len(slots):
            if left == 0 and weighted == m * target:
                full = prefix[:m] + [target] + prefix[m:]
                yield tuple(full)
            return
        k = slots[idx]
        for v in range(left + 1):
            w = weighted + k * v
            if w > m * target:
                break
            yield from rec(prefix + [v], idx + 1, left - v, w, target)

    for total in range(cap + 1):
        yield from rec([], 0, total, 0, total)


def _multinomial(total: int, parts: List[int]) -> int:
    assert sum(parts) == total
    out = factorial(total)
    for p in parts:
        out //= factorial(p)
    return out


def tuple_term(t: IndexTuple, p: Polynomial, m: int) -> Scalar:
    """One summand of the bracket series:
    ((-1)^{i_m} / (i_{m-1}+1)) * multinomial * a_{m-1} / a_m^{i_m+1} * prod a_k^{i_k}.
    """
    am = p.coeff(m)
    if am.is_zero():
        raise ZeroDenominator(f"a_{m} = 0")
    im = t[m]
    others = [t[k] for k in range(len(t)) if k != m]
    coeff = Fraction((-1) ** im * _multinomial(im, others), t[m - 1] + 1)
    num = p.coeff(m - 1)
    for k, ik in enumerate(t):
        if k != m and ik:
            num = num * p.coeff(k) ** ik
    value = num / am ** (im + 1)
    if value.is_exact:
        return value * Scalar.exact(coeff.numerator, coeff.denominator)
    scale = Scalar.exact(coeff.numerator, coeff.denominator).to_float(value.precision)
    return value * scale


def tuple_degree_sequence(t: IndexTuple, m: int) -> Dict[int, int]:
    """Degree sequence of the words a tuple accounts for:
    d_{1+k-m} = i_k for k != m, m-1 and d_0 = i_{m-1} + 1."""
    d: Dict[int, int] = {0: t[m - 1] + 1}
    for k, ik in enumerate(t):
        if k in (m, m - 1) or ik == 0:
            continue
        d[1 + k - m] = ik
    return d


def sturmfels_truncation(p: Polynomial, m: int, cap: int) -> Scalar:
    """Minus the bracket-series sum over all tuples with i_m <= cap."""
    acc = zero(p.coeff(0))
    for t in index_tuples(p.degree, m, cap):
        acc = acc + tuple_term(t, p, m)
    return -acc


def tree_truncation(p: Polynomial, m: int, grade_cap: int) -> Scalar:
    """Sum of per-word monomials over all words of grade <= grade_cap."""
    acc = zero(p.coeff(0))
    for w in genluk.enumerate_up_to_grade(m, p.degree - m + 1, grade_cap):
        acc = acc + genluk.r_expression(w, p, m)
    return acc


@dataclass
class GradeComparison:
    grade: int
    tree_sum: Scalar
    series_sum: Scalar
    equal: bool
    # exponent e with tree = series * (-a_{m-1}/a_m)^e, when such e exists
    discrepancy_exponent: Optional[int] = None
    # does tree - series equal the sum over words with no zero letter?
    gap_is_zeroless_words: bool = False


@dataclass
class EquivalenceReport:
    m: int
    grades: List[GradeComparison]

    @property
    def all_equal(self) -> bool:
        return all(g.equal for g in self.grades)

    @property
    def gap_explained(self) -> bool:
        """True when every unequal grade differs by exactly the words that
        contain no zero letter (the boundary the series never reaches, since
        each of its monomials carries a positive power of a_{m-1})."""
        return all(g.equal or g.gap_is_zeroless_words for g in self.grades)

    @property
    def verdict(self) -> str:
        if self.all_equal:
            return "equal"
        if self.gap_explained:
            return "series-misses-zeroless-words"
        return "unexplained"

    def render(self) -> str:
        lines = [f"m = {self.m}"]
        for g in self.grades:
            if g.equal:
                note = "equal"
            elif g.gap_is_zeroless_words:
                note = "DIFFER (gap = words without zero letters)"
            elif g.discrepancy_exponent is not None:
                note = f"DIFFER (ratio = base^{g.discrepancy_exponent})"
            else:
                note = "DIFFER (unexplained)"
            lines.append(
                f"  grade {g.grade}: tree = {g.tree_sum.value}, "
                f"series = {g.series_sum.value} -> {note}"
            )
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


def _monomial_exponent(tree: Scalar, series: Scalar, base: Scalar) -> Optional[int]:
    if series.is_zero() or base.is_zero() or abs(base.value) == 1:
        return None
    ratio = tree.value / series.value
    for e in range(-8, 9):
        if ratio == base.value ** e:
            return e
    return None


def equivalence_report(p: Polynomial, m: int, grade_cap: int) -> EquivalenceReport:
    """Grade-by-grade exact comparison of tree sums against series terms.

    Grade g words have g letters; the matching tuples have i_m = g - 1.
    Requires exact coefficients.
    """
    if not p.is_exact:
        raise ValueError("equivalence report requires exact coefficients")
    base = -(p.coeff(m - 1) / p.coeff(m))
    tree_by_grade: Dict[int, Scalar] = {g: zero(p.coeff(0)) for g in range(1, grade_cap + 1)}
    zeroless_by_grade: Dict[int, Scalar] = {g: zero(p.coeff(0)) for g in range(1, grade_cap + 1)}
    for w in genluk.enumerate_up_to_grade(m, p.degree - m + 1, grade_cap):
        r = genluk.r_expression(w, p, m)
        tree_by_grade[len(w)] = tree_by_grade[len(w)] + r
        if 0 not in w:
            zeroless_by_grade[len(w)] = zeroless_by_grade[len(w)] + r
    series_by_grade: Dict[int, Scalar] = {g: zero(p.coeff(0)) for g in range(1, grade_cap + 1)}
    for t in index_tuples(p.degree, m, grade_cap - 1):
        g = t[m] + 1
        series_by_grade[g] = series_by_grade[g] - tuple_term(t, p, m)
    grades = []
    for g in range(1, grade_cap + 1):
        ts, ss = tree_by_grade[g], series_by_grade[g]
        eq = ts == ss
        grades.append(GradeComparison(
            g, ts, ss, eq,
            None if eq else _monomial_exponent(ts, ss, base),
            gap_is_zeroless_words=(not eq and ts - ss == zeroless_by_grade[g]),
        ))
    return EquivalenceReport(m, grades)
