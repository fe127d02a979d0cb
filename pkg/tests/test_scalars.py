import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nrsm.scalars import (
    Matrix,
    ParseError,
    Polynomial,
    Scalar,
    SingularMatrix,
    VariantMismatch,
    Vector,
    ZeroDenominator,
    parse_scalar,
    poly_from_strings,
    polynomial_roots,
    print_scalar,
    solve_linear,
)

rationals = st.builds(
    Scalar.exact,
    st.integers(min_value=-10**6, max_value=10**6),
    st.integers(min_value=1, max_value=10**4),
)
nonzero_rationals = rationals.filter(lambda s: not s.is_zero())


class TestParsePrint:
    def test_rational(self):
        s = parse_scalar("-31/16")
        assert s.is_exact and s.value == Scalar.exact(-31, 16).value

    def test_integer_is_exact(self):
        assert parse_scalar("42").is_exact

    def test_decimal_is_float(self):
        s = parse_scalar("0.5", 256)
        assert not s.is_exact and s.precision == 256

    def test_scientific(self):
        s = parse_scalar("3.0e-2", 128)
        assert not s.is_exact

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            parse_scalar("1/0")

    def test_malformed(self):
        for bad in ["", "1/2/3", "abc"]:
            with pytest.raises(ParseError):
                parse_scalar(bad)

    def test_print_style(self):
        x = Scalar.exact(3099986240, 10**10)
        assert print_scalar(x, 10) == "3.099986240e-1"

    def test_print_negative(self):
        assert print_scalar(Scalar.exact(-1, 4), 3) == "-2.50e-1"

    def test_print_zero(self):
        assert print_scalar(Scalar.exact(0), 4) == "0.000e0"

    @given(rationals)
    def test_print_parse_roundtrip_exact_value(self, x):
        text = print_scalar(x, 30)
        back = parse_scalar(text, 384)
        assert abs(float(back) - float(x)) <= 1e-25 * (1 + abs(float(x)))


class TestFieldLaws:
    @given(rationals, rationals, rationals)
    def test_add_mul_laws(self, a, b, c):
        assert ((a + b) + c).value == (a + (b + c)).value
        assert ((a * b) * c).value == (a * (b * c)).value
        assert (a * (b + c)).value == (a * b + a * c).value
        assert (a + b).value == (b + a).value

    @given(nonzero_rationals)
    def test_inverses(self, a):
        one = Scalar.exact(1)
        assert (a / a).value == one.value
        assert (a - a).is_zero()

    @given(nonzero_rationals, st.integers(min_value=-6, max_value=6))
    def test_pow_matches_repeated_multiplication(self, a, n):
        expected = Scalar.exact(1)
        for _ in range(abs(n)):
            expected = expected * a
        if n < 0:
            expected = Scalar.exact(1) / expected
        assert (a ** n).value == expected.value


class TestVariants:
    def test_mixing_raises(self):
        with pytest.raises(VariantMismatch):
            Scalar.exact(1) + Scalar.flt(1, 128)

    def test_precision_mismatch_raises(self):
        with pytest.raises(VariantMismatch):
            Scalar.flt(1, 128) + Scalar.flt(1, 256)

    def test_float_ops_preserve_precision(self):
        a = Scalar.flt(1, 384) / Scalar.flt(3, 384)
        assert a.precision == 384 and a.value.precision == 384
        assert (-a).value.precision == 384
        assert abs(a).value.precision == 384

    def test_division_by_zero(self):
        with pytest.raises(ZeroDenominator):
            Scalar.exact(1) / Scalar.exact(0)


class TestPolynomial:
    def test_coeff_outside_range_is_zero(self, quintic_exact):
        assert quintic_exact.coeff(-1).is_zero()
        assert quintic_exact.coeff(6).is_zero()

    def test_evaluate_at_root(self, quintic_exact):
        for r in [1, 2, 4, 8, 16]:
            assert quintic_exact(Scalar.exact(r)).is_zero()

    def test_derivative(self):
        p = poly_from_strings(["1", "2", "3"], None)  # 1 + 2z + 3z^2
        dp = p.derivative()
        assert dp.coeff(0).value == Scalar.exact(2).value
        assert dp.coeff(1).value == Scalar.exact(6).value
        assert dp.degree == 1


class TestSolveLinear:
    @given(st.lists(rationals, min_size=4, max_size=4),
           st.lists(rationals, min_size=2, max_size=2))
    @settings(max_examples=50)
    def test_exact_solution_satisfies_system(self, entries, x_true):
        A = Matrix([[entries[0], entries[1]], [entries[2], entries[3]]])
        det = entries[0] * entries[3] - entries[1] * entries[2]
        b = Vector([
            entries[0] * x_true[0] + entries[1] * x_true[1],
            entries[2] * x_true[0] + entries[3] * x_true[1],
        ])
        if det.is_zero():
            with pytest.raises(SingularMatrix):
                solve_linear(A, b)
        else:
            x = solve_linear(A, b)
            assert x[0].value == x_true[0].value
            assert x[1].value == x_true[1].value

    def test_float_residual_small(self):
        prec = 384
        A = Matrix([[Scalar.flt(v, prec) for v in row]
                    for row in [[2, 1, 0], [1, 3, 1], [0, 1, 4]]])
        b = Vector([Scalar.flt(v, prec) for v in [1, 2, 3]])
        x = solve_linear(A, b)
        for i in range(3):
            resid = b[i]
            for j in range(3):
                resid = resid - A[i, j] * x[j]
            assert abs(float(resid)) < 2.0 ** (-prec + 32)

    def test_zero_pivot_exact(self):
        z, o = Scalar.exact(0), Scalar.exact(1)
        with pytest.raises(SingularMatrix):
            solve_linear(Matrix([[z, z], [z, o]]), Vector([o, o]))


class TestRoots:
    def test_quintic_roots(self, quintic_float):
        roots = polynomial_roots(quintic_float, 384)
        assert len(roots) == 5
        expected = [1, 2, 4, 8, 16]
        for (re, im), want in zip(roots, expected):
            assert abs(float(re) - want) < 1e-60
            assert abs(float(im)) < 1e-60

    def test_complex_pair(self):
        # 1 + z^2: roots +/- i, modulus 1
        p = poly_from_strings(["1", "0", "1"], 256, force_float=True)
        roots = polynomial_roots(p, 256)
        ims = sorted(float(im) for _, im in roots)
        assert abs(ims[0] + 1) < 1e-40 and abs(ims[1] - 1) < 1e-40
