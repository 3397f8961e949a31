import pytest

import hopfzero as hz
from hopfzero import ParseError


class TestParseSystem:
    def test_with_params(self):
        src = hz.parse_system("params a\ndx = -2*y + a*z\ndy = 2*x\ndz = x^2 + y^2\n")
        assert src.parameter_names == ("a",)
        field = src.to_field()
        assert field.params == ("a",)
        a = hz.ParamPolynomial.variable("a", ("a",))
        assert field.fx.coefficient((0, 0, 1)) == a

    def test_without_params(self):
        src = hz.parse_system("dx = -2*y\ndy = 2*x\ndz = x^2 + y^2\n")
        assert src.parameter_names == ()
        assert src.to_field() == hz.principal_part(())

    def test_comments_and_blank_lines(self):
        text = "# a comment\n\nparams a  # trailing\ndx = -2*y\ndy = 2*x\ndz = x^2 + y^2 + a*z^2\n"
        src = hz.parse_system(text)
        assert src.parameter_names == ("a",)

    def test_rational_literals(self):
        src = hz.parse_system("dx = -2*y + 3/8*z\ndy = 2*x\ndz = x^2 + y^2\n")
        assert src.to_field().fx.coefficient((0, 0, 1)) == \
            hz.ParamPolynomial.constant(hz.rat("3/8"), ())

    def test_division_by_variable_rejected(self):
        with pytest.raises(ParseError) as err:
            hz.parse_system("dx = x/y\ndy = 2*x\ndz = x^2 + y^2\n")
        assert "division by variable" in str(err.value)
        assert "line 1" in str(err.value)

    def test_division_by_parenthesized_rejected(self):
        with pytest.raises(ParseError) as err:
            hz.parse_system("dx = x/(2)\ndy = 2*x\ndz = x^2 + y^2\n")
        assert "division by non-literal" in str(err.value)

    def test_undeclared_identifier(self):
        with pytest.raises(ParseError) as err:
            hz.parse_system("dx = -2*y + q*z\ndy = 2*x\ndz = x^2 + y^2\n")
        assert "undeclared identifier 'q'" in str(err.value)

    def test_negative_exponent_rejected(self):
        with pytest.raises(ParseError) as err:
            hz.parse_system("dx = x^-2\ndy = 2*x\ndz = x^2 + y^2\n")
        assert "exponent" in str(err.value)

    def test_missing_component(self):
        with pytest.raises(ParseError) as err:
            hz.parse_system("dx = -2*y\ndy = 2*x\n")
        assert "dz" in str(err.value)

    def test_duplicate_component(self):
        with pytest.raises(ParseError):
            hz.parse_system("dx = -2*y\ndx = 2*x\ndy = x\ndz = x^2 + y^2\n")

    def test_params_must_come_first(self):
        with pytest.raises(ParseError):
            hz.parse_system("dx = -2*y\nparams a\ndy = 2*x\ndz = x^2 + y^2\n")

    def test_variable_name_clash(self):
        with pytest.raises(ParseError):
            hz.parse_system("params x\ndx = -2*y\ndy = 2*x\ndz = x^2 + y^2\n")

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as err:
            hz.parse_system("dx = -2*y +\ndy = 2*x\ndz = x^2 + y^2\n")
        assert err.value.line == 1

    def test_unary_signs_and_parens(self):
        src = hz.parse_system(
            "dx = -2*y - (-1)*z\ndy = 2*x\ndz = x^2 + y^2 + -1/2*y^3\n")
        field = src.to_field()
        assert field.fx.coefficient((0, 0, 1)) == hz.ParamPolynomial.constant(1, ())
        assert field.fz.coefficient((0, 3, 0)) == \
            hz.ParamPolynomial.constant(hz.rat("-1/2"), ())


class TestRoundTrip:
    def test_print_and_reparse(self, rng):
        text = ("params a b\n"
                "dx = -2*y + a*z + 1/3*x^2\n"
                "dy = 2*x + b*x*y\n"
                "dz = x^2 + y^2 + a*y^3 - 5/7*z^2\n")
        src = hz.parse_system(text)
        printed = src.to_text()
        reparsed = hz.parse_system(printed)
        assert reparsed.to_field() == src.to_field()
        assert reparsed.parameter_names == src.parameter_names

    def test_canonical_printing_is_stable(self):
        src = hz.parse_system("dx = -2*y\ndy = 2*x\ndz = y^2 + x^2\n")
        once = src.to_text()
        assert hz.parse_system(once).to_text() == once


class TestParsePolynomial:
    def test_basic(self):
        p = hz.parse_polynomial("126*a^2 - 117*a*b + 40*b^2", ("a", "b"))
        assert p == hz.ParamPolynomial(
            {(2, 0): 126, (1, 1): -117, (0, 2): 40}, ("a", "b"))

    def test_rejects_state_variables(self):
        with pytest.raises(ParseError):
            hz.parse_polynomial("a*x", ("a",))

    def test_rejects_undeclared(self):
        with pytest.raises((ParseError, hz.ParameterError)):
            hz.parse_polynomial("a*c", ("a",))
