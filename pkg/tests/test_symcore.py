from fractions import Fraction

import pytest

from g2twistor.symcore import (
    Affine, Chart, ChartMismatch, DivisionByZero, ExpressionSyntaxError,
    FractionalExponentOnNonDistinguishedVariable, Inconsistent, Matrix, NotSymmetric,
    Radical, RatExpr, ShapeMismatch, UnboundParameter, Unique, exact_linear_solve,
    inverse, kernel_basis, parse_scalar, rank, signature_of_symmetric,
)

QX = Chart(("x", "q"), "q")


def s(text, **kw):
    return parse_scalar(text, QX, {k: Fraction(v) for k, v in kw.items()})


class TestParsing:
    def test_fractional_powers_multiply(self):
        e = s("q^(1/3)*x + q^(2/3)")
        assert e * e == s("x^2*q^(2/3) + 2*x*q + q^(4/3)")

    def test_parameter_exponent(self):
        assert s("q^(k-2)", k="1/2") == s("1/q^(3/2)")

    def test_unparenthesized_exponent_binds_tightly(self):
        assert s("q^2/2") == s("(q^2)/2")

    def test_fraction_on_wrong_variable(self):
        with pytest.raises(FractionalExponentOnNonDistinguishedVariable):
            s("x^(1/2)")

    def test_syntax_error_position(self):
        with pytest.raises(ExpressionSyntaxError) as info:
            s("x +* 2")
        assert info.value.position == 3

    def test_unbound(self):
        with pytest.raises(UnboundParameter):
            s("k*x")

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            s("1/(x - x)")

    @pytest.mark.parametrize("text", ["x*q^(1/3) + q^(2/3)", "(x + q)/(x - 2*q^2)", "-3*x/q^(5/2)", "0", "7/3"])
    def test_printing_round_trips(self, text):
        e = s(text)
        assert s(str(e)) == e


class TestArithmetic:
    def test_cancellation(self):
        assert s("(x^2 - q^2)/(x - q)") == s("x + q")

    def test_derivative_of_root(self):
        assert s("q^(1/2)").differentiate("q") == s("1/(2*q^(1/2))")

    def test_substitute(self):
        assert s("x/(x + q)").substitute({"x": s("q^2")}) == s("q/(q + 1)")

    def test_evaluate_exact(self):
        assert s("q^(1/2)*x").evaluate({"q": Fraction(9, 4), "x": Fraction(2)}) == 3

    def test_chart_mismatch(self):
        other = Chart(("x",))
        with pytest.raises(ChartMismatch):
            RatExpr.var(QX, "x") + RatExpr.var(other, "x")

    def test_adjoined_radical(self):
        ch = Chart(("x",), None, (Radical(10, 2),))
        r = RatExpr.radical(ch, 10, Fraction(1, 2))
        assert r * r == RatExpr.const(ch, 10)
        assert RatExpr.radical(ch, 10, Fraction(3, 2)) == r * 10

    def test_radical_needs_adjoining(self):
        with pytest.raises(FractionalExponentOnNonDistinguishedVariable):
            RatExpr.radical(QX, 10, Fraction(1, 2))


class TestLinearAlgebra:
    def test_unique(self):
        res = exact_linear_solve(Matrix([[1, 2], [3, 4]]), [5, 6])
        assert isinstance(res, Unique) and res.solution == (Fraction(-4), Fraction(9, 2))

    def test_affine_kernel(self):
        res = exact_linear_solve(Matrix([[1, 1, 1]]), [1])
        assert isinstance(res, Affine) and len(res.kernel) == 2

    def test_inconsistent_certificate(self):
        res = exact_linear_solve(Matrix([[1, 1], [2, 2]]), [1, 3])
        assert isinstance(res, Inconsistent)
        y = res.certificate
        assert y[0] * 1 + y[1] * 2 == 0 and y[0] * 1 + y[1] * 3 != 0

    def test_function_matrix(self):
        x, q = RatExpr.var(QX, "x"), RatExpr.var(QX, "q")
        A = Matrix([[x, q], [q, x]])
        res = exact_linear_solve(A, [x + q, x + q])
        assert isinstance(res, Unique)
        assert all(c == 1 for c in res.solution)

    def test_inverse(self):
        A = Matrix([[2, 1], [1, 1]])
        assert inverse(A).rows == ((1, -1), (-1, 2))

    def test_kernel_and_rank(self):
        A = Matrix([[1, 2, 3], [2, 4, 6]])
        assert rank(A) == 1 and len(kernel_basis(A)) == 2

    def test_signature(self):
        assert signature_of_symmetric(Matrix([[0, 1], [1, 0]])) == (1, 1, 0)
        assert signature_of_symmetric(Matrix([[1, 0, 0], [0, 0, 0], [0, 0, -2]])) == (1, 1, 1)

    def test_signature_rejects_asymmetric(self):
        with pytest.raises(NotSymmetric):
            signature_of_symmetric(Matrix([[0, 1], [2, 0]]))

    def test_shape(self):
        with pytest.raises(ShapeMismatch):
            exact_linear_solve(Matrix([[1, 2]]), [1, 2])
