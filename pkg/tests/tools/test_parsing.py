"""Unit tests for text input parsing (tools/parsing.py)."""
import pytest

from tools.errors import ParseError
from tools.parsing import (
    parse_bipoly,
    parse_element,
    parse_range,
    parse_ratfunc,
    parse_system,
    parse_upoly,
)
from tools.polyring import BiPoly, UPoly


class TestParseUPoly:

    def test_expression(self, gf2):
        assert parse_upoly("t^2+t+1", gf2).coeffs == (1, 1, 1)
        assert parse_upoly(" t^3 + 1 ", gf2).coeffs == (1, 0, 0, 1)

    def test_coefficient_list(self, gf3):
        assert parse_upoly("[2,0,1]", gf3).coeffs == (2, 0, 1)

    def test_signs_and_coefficients(self, gf3):
        assert parse_upoly("t-1", gf3).coeffs == (2, 1)
        assert parse_upoly("2*t^2-t", gf3).coeffs == (0, 2, 2)

    def test_like_terms_combine(self, gf2):
        assert parse_upoly("t+t+1", gf2).coeffs == (1,)

    def test_extension_codes(self, gf4):
        assert parse_upoly("2*t+3", gf4).coeffs == (3, 2)

    def test_alternate_variable(self, gf2):
        assert parse_upoly("T^2+1", gf2, var="T").coeffs == (1, 0, 1)

    @pytest.mark.parametrize("text", ["t^", "t++1", "", "s+1", "[1,", "[1,2]", "t/2"])
    def test_invalid(self, gf2, text):
        with pytest.raises(ParseError):
            parse_upoly(text, gf2)


class TestParseRatFunc:

    def test_fraction(self, gf2):
        f = parse_ratfunc("t/(t+1)", gf2)
        assert f.num.coeffs == (0, 1)
        assert f.den.coeffs == (1, 1)

    def test_polynomial(self, gf2):
        assert parse_ratfunc("t^2+1", gf2).is_polynomial

    def test_zero_denominator(self, gf2):
        with pytest.raises(ParseError):
            parse_ratfunc("1/0", gf2)


class TestParseBiPoly:

    def test_expression(self, gf2):
        f = parse_bipoly("t^2*z+t^2+t^4", gf2)
        assert f.coeff(1) == UPoly(gf2, (0, 0, 1))
        assert f.coeff(0) == UPoly(gf2, (0, 0, 1, 0, 1))

    def test_x_is_an_alias_for_z(self, gf2):
        assert parse_bipoly("x+t", gf2) == parse_bipoly("z+t", gf2)

    def test_canonical_form(self, gf2):
        f = parse_bipoly("[[0,[0,1]],[1,[1]]]", gf2)
        assert f == parse_bipoly("z+t", gf2)
        assert parse_bipoly(str(f.canonical()), gf2) == f

    def test_zero(self, gf2):
        assert parse_bipoly("z+z", gf2) == BiPoly.zero(gf2)

    @pytest.mark.parametrize("text", ["[[0]]", "[[0,[5]]]", "y+1", "z^^2"])
    def test_invalid(self, gf2, text):
        with pytest.raises(ParseError):
            parse_bipoly(text, gf2)


class TestParseSystem:

    def test_semicolon_separated(self, gf2):
        fs = parse_system("x; x+t", gf2)
        assert [f.degree for f in fs] == [1, 1]

    def test_json_list(self, gf2):
        fs = parse_system('["z+t", [[0,[1]],[2,[1]]]]', gf2)
        assert fs[0] == parse_bipoly("z+t", gf2)
        assert fs[1] == parse_bipoly("z^2+1", gf2)

    def test_malformed(self, gf2):
        with pytest.raises(ParseError):
            parse_system('["z"', gf2)
        with pytest.raises(ParseError):
            parse_system('[{"z": 1}]', gf2)


class TestParseElement:

    def test_coordinates(self, f4):
        assert parse_element("[0,1]", f4) == f4.gen
        assert parse_element("[1]", f4) == f4.one

    @pytest.mark.parametrize("text", ["[0,1,0]", "[2]", "gen", "[0.5]"])
    def test_invalid(self, f4, text):
        with pytest.raises(ParseError):
            parse_element(text, f4)


class TestParseRange:

    @pytest.mark.parametrize("text,expected", [
        ("2-4", [2, 3, 4]),
        ("1,3", [1, 3]),
        ("4", [4]),
        ("3,1-2", [1, 2, 3]),
    ])
    def test_valid(self, text, expected):
        assert parse_range(text) == expected

    @pytest.mark.parametrize("text", ["3-2", "a", "1-", ""])
    def test_invalid(self, text):
        with pytest.raises(ParseError):
            parse_range(text)
