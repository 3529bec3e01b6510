"""Expression parsing: round trips and rejection of malformed input."""

import pytest

from gossval.fields import Fq
from gossval.parsing import ParseError, parse_monomials, parse_univariate, parse_univariate_flex
from gossval.poly import Poly


def test_univariate_round_trip():
    F = Fq(3)
    for text in ("0", "1", "2", "t", "t^2+2*t+1", "2*t^5+t^3+2"):
        f = Poly(F, parse_univariate(text, F, "t"), "t")
        g = Poly(F, parse_univariate(f.to_str(), F, "t"), "t")
        assert f == g


def test_whitespace_and_minus():
    F = Fq(5)
    a = parse_univariate("3*t^2 - t + 4", F, "t")
    b = parse_univariate("3*t^2+4*t+4", F, "t")
    assert a == b


def test_extension_generator_syntax():
    F = Fq(4)
    d = parse_univariate("(g)*t + (g+1)", F, "t")
    g = F.gen()
    assert d[1] == g and d[0] == F.add(g, F.one)


def test_flex_accepts_any_single_variable():
    F = Fq(2)
    assert parse_univariate_flex("x^2+x", F) == \
        parse_univariate("t^2+t", F, "t")


def test_multivariate_exponent_maps():
    F = Fq(2)
    mono = parse_monomials("z*x0*x1 + x1^2", F, ("z", "x0", "x1"))
    assert mono == {(1, 1, 1): F.one, (0, 0, 2): F.one}


def test_rejects_malformed():
    F = Fq(2)
    for bad in ("t +", "^2", "t^", "(t", "t^-1", "s*t", "2**t", "t**2", "t*"):
        with pytest.raises(ParseError):
            parse_univariate(bad, F, "t")


def test_rejects_two_variables_in_univariate():
    F = Fq(2)
    with pytest.raises(ParseError):
        parse_univariate_flex("x*y", F)
