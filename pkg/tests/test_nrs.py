import random

import pytest

from nrsm import nrs
from nrsm.auxfun import RangeError
from nrsm.scalars import (
    Scalar,
    ZeroDenominator,
    poly_from_strings,
    polynomial_roots,
    print_scalar,
)

from conftest import poly_from_roots, random_distinct_roots

# Ten-significant-digit reference rows for the rational quintic with zeros
# 1, 2, 4, 8, 16 (row n -> J_total, partial_sum), frozen from verified runs.
M1_ROWS = {
    0: ("0.000000000e0", "5.161290323e-1"),
    1: ("3.099986240e-1", "8.261276563e-1"),
    2: ("1.403785124e-1", "9.665061687e-1"),
    3: ("3.188553499e-2", "9.983917037e-1"),
    4: ("1.604320113e-3", "9.999960238e-1"),
    5: ("3.976182710e-6", "1.000000000e0"),
    6: ("2.439269432e-11", "1.000000000e0"),
    7: ("9.180054555e-22", "1.000000000e0"),
}

M2_ROW1 = ("-4.659688684e-1", "1.285700049e0", "8.197311805e-1", "2.419731181e0")


class TestInit:
    def test_base_values(self, quintic_float):
        for m, base in [(1, "5.161290323e-1"), (2, "1.600000000e0"),
                        (4, "1.000000000e1")]:
            state = nrs.init(quintic_float, m)
            assert print_scalar(nrs.row_of(state).partial_sum) == base

    def test_state_invariants_at_zero(self, quintic_float):
        state = nrs.init(quintic_float, 3)
        assert all(s.is_zero() for s in state.S)
        assert all(s.is_zero() for s in state.Sprev)
        assert state.n == 0

    def test_m_out_of_range(self, quintic_float):
        with pytest.raises(RangeError):
            nrs.init(quintic_float, 0)
        with pytest.raises(RangeError):
            nrs.init(quintic_float, 6)

    def test_zero_coefficient_rejected(self):
        p = poly_from_strings(["1", "0", "1", "1"], 256, force_float=True)
        with pytest.raises(ZeroDenominator):
            nrs.init(p, 2)


class TestTables:
    def test_m1_rows(self, quintic_float):
        result = nrs.run(quintic_float, 1, max_steps=7)
        for n, (j, ps) in M1_ROWS.items():
            row = result.rows[n]
            assert print_scalar(row.J_total) == j, n
            assert print_scalar(row.partial_sum) == ps, n

    def test_m2_first_step_and_limit(self, quintic_float):
        result = nrs.run(quintic_float, 2, max_steps=12)
        row = result.rows[1]
        assert print_scalar(row.J[0]) == M2_ROW1[0]
        assert print_scalar(row.J[1]) == M2_ROW1[1]
        assert print_scalar(row.J_total) == M2_ROW1[2]
        assert print_scalar(row.partial_sum) == M2_ROW1[3]
        assert print_scalar(result.limit) == "3.000000000e0"

    def test_m3_m4_first_steps_and_limits(self, quintic_float):
        r3 = nrs.run(quintic_float, 3, max_steps=12)
        assert print_scalar(r3.rows[1].J_total) == "1.814118062e0"
        assert print_scalar(r3.limit) == "7.000000000e0"
        r4 = nrs.run(quintic_float, 4, max_steps=12)
        assert print_scalar(r4.rows[1].J_total) == "3.552452499e0"
        assert print_scalar(r4.limit) == "1.500000000e1"


class TestStructure:
    def test_row_sum_identity(self, quintic_float):
        for m in range(1, 5):
            for row in nrs.run(quintic_float, m, max_steps=10).rows:
                total = row.J[0]
                for j in row.J[1:]:
                    total = total + j
                assert total.value == row.J_total.value

    def test_state_accumulation(self, quintic_float):
        state = nrs.init(quintic_float, 2)
        for _ in range(4):
            nrs.step(state)
            for s, sp, j in zip(state.S, state.Sprev, state.Jlast):
                assert (sp + j).value == s.value

    def test_vieta_shortcut_exact(self, quintic_exact):
        result = nrs.run(quintic_exact, 5, max_steps=4)
        assert result.verdict == "Converged"
        assert len(result.rows) == 2  # row 0 plus the single confirming step
        assert result.limit.value == Scalar.exact(31).value

    def test_exact_mode_first_step_m1(self, quintic_exact):
        state = nrs.init(quintic_exact, 1)
        row = nrs.step(state)
        # J_1(1) exactly, as a rational
        assert row.J[0].is_exact
        assert print_scalar(row.J[0]) == "3.099986240e-1"


class TestConvergenceControl:
    def test_divergent_input_reports_max_steps(self):
        p = poly_from_strings(["1", "1", "1"], 384, force_float=True)
        result = nrs.run(p, 1, max_steps=12)
        assert result.verdict == "MaxSteps"
        assert len(result.rows) == 13

    def test_quadratic_convergence_once_small(self, quintic_float):
        for m in range(1, 5):
            rows = nrs.run(quintic_float, m, max_steps=14).rows
            for a, b in zip(rows, rows[1:]):
                ja, jb = abs(float(a.J_total)), abs(float(b.J_total))
                # stay above the 384-bit rounding floor, where the squaring
                # law necessarily flattens out
                if 0 < ja < 1e-2 and 2.0 ** (-300) < jb:
                    assert jb <= ja ** 1.8, (m, a.n)

    def test_explicit_tolerance_respected(self, quintic_float):
        tol = Scalar.flt("1e-20", 384)
        result = nrs.run(quintic_float, 1, max_steps=20, tol=tol)
        assert result.verdict == "Converged"
        assert abs(float(result.rows[-1].J_total)) <= 1e-20


class TestNewton:
    def test_iterate_values(self, quintic_float):
        it = nrs.newton_run(quintic_float, 3)
        assert print_scalar(it[1]) == "5.161290323e-1"
        assert print_scalar(it[2]) == "8.261276563e-1"

    def test_linear_polynomial_stationary(self):
        p = poly_from_strings(["1", "-1"], 256, force_float=True)
        it = nrs.newton_run(p, 4)
        assert all(print_scalar(c) == "1.000000000e0" for c in it[1:])

    def test_equivalence_with_m1_random(self):
        rng = random.Random(99)
        for _ in range(6):
            degree = rng.randint(2, 6)
            roots = random_distinct_roots(rng, degree)
            p = poly_from_roots(roots, 384)
            it = nrs.newton_run(p, 8)
            rows = nrs.run(p, 1, max_steps=8).rows
            for k in range(1, min(len(it), len(rows) + 1)):
                dev = abs(float(it[k] - rows[k - 1].partial_sum))
                scale = max(1.0, abs(float(it[k])))
                assert dev <= scale * 2.0 ** (-340), (roots, k)

    def test_derivative_zero(self):
        # f = 1 + z^2 has f'(0) = 0
        p = poly_from_strings(["1", "0", "1"], 256, force_float=True)
        with pytest.raises(nrs.DerivativeZero):
            nrs.newton_run(p, 1)


class TestRootSumAgreement:
    def test_random_quintics(self):
        rng = random.Random(2024)
        for _ in range(4):
            roots = random_distinct_roots(rng, 5, lo=1, hi=100, min_ratio=1.6)
            p = poly_from_roots(roots, 384)
            found = polynomial_roots(p, 384)
            reals = sorted((re for re, _ in found), key=float)
            for m in range(1, 5):
                result = nrs.run(p, m, max_steps=64)
                assert result.verdict == "Converged", (roots, m)
                want = reals[0]
                for r in reals[1:m]:
                    want = want + r
                assert abs(float(result.limit - want)) < 1e-20, (roots, m)
