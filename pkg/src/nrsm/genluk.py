"""Generalized Lukasiewicz words and trees with negative vertex degree.

A word is a finite integer sequence with no letter equal to 1, non-negative
proper prefix sums of (letter - 1), and total sum -1. Words are the canonical
representation; the expanded classical tree is derived on demand for type
computations and rendering. This module is the exact combinatorial oracle
layer: formula counting, exhaustive enumeration, and the per-tree monomials
attached to a polynomial's coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, prod
from typing import Dict, Iterator, List, Sequence, Tuple

from .scalars import Polynomial, Scalar, ZeroDenominator, one

DEFAULT_ENUMERATION_CAP = 12
DEFAULT_GRADE_CAP = 14

Word = Tuple[int, ...]


class WordError(Exception):
    pass


class InvalidWord(WordError):
    def __init__(self, message: str, index: int):
        super().__init__(f"{message} (letter index {index})")
        self.index = index


class IncompleteSequence(WordError):
    pass


class CapExceeded(WordError):
    pass


def validate_word(letters: Sequence[int]) -> Word:
    """Return the validated word, or raise InvalidWord at the first violation."""
    letters = tuple(int(x) for x in letters)
    total = 0
    for i, l in enumerate(letters):
        if l == 1:
            raise InvalidWord("letter equal to 1", i)
        total += l - 1
        if i < len(letters) - 1 and total < 0:
            raise InvalidWord(f"prefix sum {total} negative", i)
    if total != -1:
        raise InvalidWord(f"letter sum {total} != -1", len(letters) - 1)
    return letters


def is_valid_word(letters: Sequence[int]) -> bool:
    try:
        validate_word(letters)
        return True
    except WordError:
        return False


def min_degree(word: Word) -> int:
    return min(word)


def in_luk(word: Word, m: int) -> bool:
    """Membership in the grade-m word family (all letters >= -m+1)."""
    return min_degree(word) >= -m + 1


def expand_word(word: Word) -> Word:
    """Replace each negative letter -h with h+1 zeros, yielding a classical word."""
    out: List[int] = []
    for l in word:
        if l < 0:
            out.extend([0] * (-l + 1))
        else:
            out.append(l)
    return tuple(out)


class PlaneTree:
    """Ordered tree with per-node degree and canceled flag.

    Built from the expanded classical word; the nodes whose zeros were
    introduced by expanding a negative letter are flagged canceled and carry
    no degree of their own.
    """

    def __init__(self, degree: int, children: List["PlaneTree"], canceled: bool = False):
        self.degree = degree
        self.children = children
        self.canceled = canceled

    def render(self, indent: int = 0) -> str:
        mark = "( )" if self.canceled else "•"
        label = mark if self.canceled or self.degree <= 0 else f"{mark} deg {self.degree}"
        lines = ["  " * indent + label]
        for child in self.children:
            lines.append(child.render(indent + 1))
        return "\n".join(lines)


def _parse_classical(word: Sequence[int], pos: int) -> Tuple[PlaneTree, int]:
    deg = word[pos]
    pos += 1
    children = []
    for _ in range(deg):
        child, pos = _parse_classical(word, pos)
        children.append(child)
    return PlaneTree(deg, children), pos


def classical_tree(word: Word) -> PlaneTree:
    """Parse a classical word (all letters >= 0) into its plane tree."""
    tree, pos = _parse_classical(word, 0)
    if pos != len(word):
        raise WordError("word has trailing letters after a complete tree")
    return tree


def to_tree(word: Word) -> PlaneTree:
    """Tree with negative vertex degree: expanded structure, canceled leaves marked."""
    expanded: List[int] = []
    canceled_positions = set()
    negative_at: Dict[int, int] = {}
    for l in word:
        if l < 0:
            canceled_positions.update(range(len(expanded), len(expanded) - l))
            negative_at[len(expanded) - l] = l
            expanded.extend([0] * (-l + 1))
        else:
            expanded.append(l)

    def parse(pos: int) -> Tuple[PlaneTree, int]:
        deg = expanded[pos]
        here = pos
        pos += 1
        children = []
        for _ in range(deg):
            child, pos = parse(pos)
            children.append(child)
        node = PlaneTree(negative_at.get(here, deg), children,
                         canceled=here in canceled_positions)
        return node, pos

    tree, pos = parse(0)
    if pos != len(expanded):
        raise WordError("word has trailing letters after a complete tree")
    return tree


def type_number(word: Word) -> Tuple[int, bool]:
    """(type, final) computed on the expanded classical tree.

    A single vertex has type 0 and is not final. Otherwise let t* be the
    largest type among the root subtrees and c the number attaining it:
    one attaining subtree keeps type t* (not final); two or more raise the
    type to t*+1 (final).
    """
    expanded = expand_word(word)

    def walk(pos: int) -> Tuple[int, bool, int]:
        deg = expanded[pos]
        pos += 1
        if deg == 0:
            return 0, False, pos
        best = -1
        count = 0
        for _ in range(deg):
            t, _, pos = walk(pos)
            if t > best:
                best, count = t, 1
            elif t == best:
                count += 1
        if count >= 2:
            return best + 1, True, pos
        return best, False, pos

    t, final, _ = walk(0)
    return t, final


def terminal(word: Word) -> int:
    """Number of trailing zero letters of the (generalized) word."""
    n = 0
    for l in reversed(word):
        if l != 0:
            break
        n += 1
    return n


def terminal_class(word: Word, m: int) -> int:
    """Index i of the partition cell Luk_{i,m}; -1 for the single-vertex tree."""
    if word == (0,):
        return -1
    t = terminal(word)
    if t == 0:
        return 0
    return min(t, m - 1)


def degree_sequence(word: Word) -> Dict[int, int]:
    """Letter tally d_k; canceled vertices never appear as letters."""
    d: Dict[int, int] = {}
    for l in word:
        d[l] = d.get(l, 0) + 1
    return d


def _check_complete(d: Dict[int, int]) -> None:
    if any(v < 0 for v in d.values()):
        raise IncompleteSequence("negative multiplicity")
    if d.get(1, 0) != 0:
        raise IncompleteSequence("degree 1 must have count 0")
    total = sum((k - 1) * v for k, v in d.items())
    if total != -1:
        raise IncompleteSequence(f"sum (k-1) d_k = {total} != -1")


def count_with_degree_sequence(d: Dict[int, int]) -> int:
    """Exact number of valid words with letter multiset d.

    N! / (N * prod d_k!) with N the total letter count; the cycle-lemma
    conjugation argument guarantees the quotient is integral.
    """
    _check_complete(d)
    n = sum(d.values())
    numerator = factorial(n)
    denominator = n * prod(factorial(v) for v in d.values())
    count = Fraction(numerator, denominator)
    assert count.denominator == 1
    return int(count)


def _distinct_permutations(items: List[int]) -> Iterator[Tuple[int, ...]]:
    """Lexicographic multiset permutations (next-permutation scheme)."""
    seq = sorted(items)
    n = len(seq)
    while True:
        yield tuple(seq)
        i = n - 2
        while i >= 0 and seq[i] >= seq[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while seq[j] <= seq[i]:
            j -= 1
        seq[i], seq[j] = seq[j], seq[i]
        seq[i + 1:] = reversed(seq[i + 1:])


def enumerate_by_degree_sequence(d: Dict[int, int],
                                 cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Word]:
    """All valid words with letter multiset d, in lexicographic order."""
    _check_complete(d)
    letters: List[int] = []
    for k, v in d.items():
        letters.extend([k] * v)
    if len(letters) > cap:
        raise CapExceeded(f"{len(letters)} letters exceeds cap {cap}")
    for perm in _distinct_permutations(letters):
        if is_valid_word(perm):
            yield perm


def enumerate_by_conjugation(d: Dict[int, int],
                             cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Word]:
    """Alternative generator: rotate every arrangement to its unique valid
    conjugate (the rotation past the first minimal prefix sum) and dedupe.

    Cross-checks the conjugation proof behind count_with_degree_sequence.
    """
    _check_complete(d)
    letters: List[int] = []
    for k, v in d.items():
        letters.extend([k] * v)
    if len(letters) > cap:
        raise CapExceeded(f"{len(letters)} letters exceeds cap {cap}")
    seen = set()
    for perm in _distinct_permutations(letters):
        partial = 0
        low, low_at = 0, -1
        for i, l in enumerate(perm):
            partial += l - 1
            if partial < low:
                low, low_at = partial, i
        rotated = perm[low_at + 1:] + perm[:low_at + 1]
        if rotated not in seen:
            seen.add(rotated)
            yield rotated


def enumerate_up_to_grade(m: int, max_letter: int, grade_cap: int,
                          hard_cap: int = DEFAULT_GRADE_CAP) -> Iterator[Word]:
    """All valid words with letters in [-m+1, max_letter] \\ {1} and at most
    grade_cap letters, grouped by ascending letter count and lexicographic
    within each count.
    """
    if m < 1:
        raise WordError("m must be at least 1")
    if grade_cap > hard_cap:
        raise CapExceeded(f"grade cap {grade_cap} exceeds guard {hard_cap}")
    alphabet = [l for l in range(-m + 1, max_letter + 1) if l != 1]
    for n in range(1, grade_cap + 1):
        yield from _fixed_length_words(alphabet, n)


def _fixed_length_words(alphabet: List[int], n: int) -> Iterator[Word]:
    def extend(prefix: List[int], partial: int) -> Iterator[Word]:
        remaining = n - len(prefix)
        if remaining == 0:
            if partial == -1:
                yield tuple(prefix)
            return
        for l in alphabet:
            s = partial + l - 1
            if remaining > 1 and s < 0:
                continue
            if remaining == 1 and s != -1:
                continue
            # prune: the most negative reachable final sum
            if s - (1 - alphabet[0]) * (remaining - 1) > -1 and remaining > 1:
                continue
            yield from extend(prefix + [l], s)

    yield from extend([], 0)


def r_expression(word: Word, p: Polynomial, m: int) -> Scalar:
    """Product over the word's letters k of (-a_{m+k-1}/a_m).

    Coefficient indices outside 0..deg(p) contribute a zero factor.
    """
    am = p.coeff(m)
    if am.is_zero():
        raise ZeroDenominator(f"a_{m} = 0")
    acc = one(am)
    for k, count in degree_sequence(word).items():
        factor = -(p.coeff(m + k - 1) / am)
        acc = acc * factor ** count
    return acc
