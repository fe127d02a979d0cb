"""The NRS(m) iterator: per-step linear systems and convergence control.

Each step solves (I - G(S(n))) J(n+1) = F(S(n)) - F(S(n-1)) - G(S(n-1)) J(n)
where F stacks the auxiliary functions and G their Jacobian, then accumulates
S. The n = 0 step reduces to (I - G(0)) J(1) = F(0). The classical Newton
iteration is included as a comparison baseline for m = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

import gmpy2

from .auxfun import AuxSystem, RangeError, build_aux_system
from .scalars import (
    Matrix,
    Polynomial,
    Scalar,
    SingularMatrix,
    Vector,
    ZeroDenominator,
    one,
    solve_linear,
    zero,
)

DEFAULT_MAX_STEPS = 64


class NrsError(Exception):
    pass


class SingularSystem(NrsError):
    def __init__(self, message: str, matrix: Matrix):
        super().__init__(f"{message}\nmatrix: {matrix!r}")
        self.matrix = matrix


class DerivativeZero(NrsError):
    pass


@dataclass
class IterationRow:
    n: int
    J: List[Scalar]
    J_total: Scalar
    partial_sum: Scalar


@dataclass
class NrsState:
    m: int
    n: int
    S: List[Scalar]
    Sprev: List[Scalar]
    Jlast: List[Scalar]
    base: Scalar
    aux: AuxSystem


def init(p: Polynomial, m: int) -> NrsState:
    if not 1 <= m <= p.degree:
        raise RangeError(f"m = {m} outside 1..deg = {p.degree}")
    if p.coeff(m).is_zero() or p.coeff(m - 1).is_zero():
        raise ZeroDenominator("a_m and a_{m-1} must both be nonzero")
    aux = build_aux_system(m, p)
    base = -(p.coeff(m - 1) / p.coeff(m))
    z = zero(base)
    return NrsState(m=m, n=0, S=[z] * m, Sprev=[z] * m, Jlast=[z] * m,
                    base=base, aux=aux)


def row_of(state: NrsState) -> IterationRow:
    total = state.Jlast[0]
    for j in state.Jlast[1:]:
        total = total + j
    psum = state.base
    for s in state.S:
        psum = psum + s
    return IterationRow(state.n, list(state.Jlast), total, psum)


def _eval_F(aux: AuxSystem, point: List[Scalar]) -> List[Scalar]:
    return [f.evaluate(point) for f in aux.f]


def _eval_G(aux: AuxSystem, point: List[Scalar]) -> List[List[Scalar]]:
    return [[d.evaluate(point) for d in row] for row in aux.jac]


def step(state: NrsState) -> IterationRow:
    m = state.m
    aux = state.aux
    u = one(state.base)
    G_now = _eval_G(aux, state.S)
    rows = [
        [(u if i == k else zero(u)) - G_now[i][k] for k in range(m)]
        for i in range(m)
    ]
    F_now = _eval_F(aux, state.S)
    if state.n == 0:
        rhs = F_now
    else:
        F_prev = _eval_F(aux, state.Sprev)
        G_prev = _eval_G(aux, state.Sprev)
        rhs = []
        for i in range(m):
            acc = F_now[i] - F_prev[i]
            for k in range(m):
                acc = acc - G_prev[i][k] * state.Jlast[k]
            rhs.append(acc)
    A = Matrix(rows)
    try:
        J = list(solve_linear(A, Vector(rhs)))
    except SingularMatrix as exc:
        raise SingularSystem(str(exc), A) from exc
    state.Sprev = state.S
    state.S = [s + j for s, j in zip(state.Sprev, J)]
    state.Jlast = J
    state.n += 1
    return row_of(state)


@dataclass
class RunResult:
    rows: List[IterationRow]
    verdict: str  # Converged | MaxSteps | Failed
    failure: Optional[str] = None

    @property
    def limit(self) -> Scalar:
        return self.rows[-1].partial_sum


def run(p: Polynomial, m: int, max_steps: int = DEFAULT_MAX_STEPS,
        tol: Optional[Scalar] = None) -> RunResult:
    state = init(p, m)
    if tol is None:
        if state.base.is_exact:
            tol = Scalar.exact(0)
        else:
            prec = state.base.precision
            tol = Scalar(gmpy2.mpfr(2, prec) ** (-prec + 32), prec)
    rows = [row_of(state)]
    for _ in range(max_steps):
        try:
            row = step(state)
        except SingularSystem as exc:
            return RunResult(rows, "Failed", failure=str(exc))
        rows.append(row)
        if abs(row.J_total) <= tol:
            return RunResult(rows, "Converged")
    return RunResult(rows, "MaxSteps")


def newton_run(p: Polynomial, steps: int) -> List[Scalar]:
    """Classical iterates c_0 = 0, c_{k+1} = c_k - f(c_k)/f'(c_k)."""
    dp = p.derivative()
    c = zero(p.coeff(0))
    out = [c]
    for _ in range(steps):
        d = dp(c)
        if d.is_zero():
            raise DerivativeZero(f"f'({c!r}) = 0")
        c = c - p(c) / d
        out.append(c)
    return out
