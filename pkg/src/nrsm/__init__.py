"""Root-sum iterations for polynomials: the NRS(m) family.

For a polynomial with a_m != 0 and a_{m-1} != 0, the iteration accumulates
-a_{m-1}/a_m + sum J_m(n), which (when convergent) equals the sum of the m
zeros closest to the origin. The supporting cast: exact/float scalars, tree
words and their counting oracle, sparse multivariate polynomials, the
auxiliary-function construction, bracket-series comparisons, and the
critical-line coefficient experiment.
"""

from .scalars import (
    DEFAULT_PRECISION,
    Matrix,
    Polynomial,
    Scalar,
    Vector,
    parse_scalar,
    poly_from_strings,
    polynomial_roots,
    print_scalar,
    solve_linear,
)
from .genluk import (
    count_with_degree_sequence,
    enumerate_by_degree_sequence,
    enumerate_up_to_grade,
    r_expression,
    terminal_class,
    type_number,
    validate_word,
)
from .mpoly import MPoly
from .auxfun import AuxSystem, aux_function, build_aux_system, partial_trees
from .nrs import NrsState, RunResult, init, newton_run, run, step
from .hyper import equivalence_report, sturmfels_truncation, tree_truncation
from .xi import XiSeries, b_coefficient, jensen_polynomial, stirling_unsigned, xi_coefficients

__all__ = [
    "DEFAULT_PRECISION",
    "Matrix",
    "Polynomial",
    "Scalar",
    "Vector",
    "parse_scalar",
    "poly_from_strings",
    "polynomial_roots",
    "print_scalar",
    "solve_linear",
    "count_with_degree_sequence",
    "enumerate_by_degree_sequence",
    "enumerate_up_to_grade",
    "r_expression",
    "terminal_class",
    "type_number",
    "validate_word",
    "MPoly",
    "AuxSystem",
    "aux_function",
    "build_aux_system",
    "partial_trees",
    "NrsState",
    "RunResult",
    "init",
    "newton_run",
    "run",
    "step",
    "equivalence_report",
    "sturmfels_truncation",
    "tree_truncation",
    "XiSeries",
    "b_coefficient",
    "jensen_polynomial",
    "stirling_unsigned",
    "xi_coefficients",
]
