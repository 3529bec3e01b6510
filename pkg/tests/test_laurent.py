"""Laurent series in 1/t: arithmetic, precision discipline, round trips."""

import random

import pytest

from gossval.fields import Fq
from gossval.laurent import LaurentSeries, PrecisionError
from gossval.poly import Poly


def _rand_series(rng, field, prec, var="t"):
    v = rng.randint(-2, 3)
    s = LaurentSeries.zero(field, prec, var)
    for k in range(v, prec):
        c = field.rand(rng)
        if c:
            s = s + LaurentSeries.monomial(field, k, prec, var, c)
    return s


def test_poly_embedding_and_inverse():
    F = Fq(2)
    f = Poly.parse(F, "t^3+t+1")
    s = LaurentSeries.from_poly(f, 12)
    inv = s.inverse()
    assert (s * inv).agrees_with(LaurentSeries.one(F, 12, "t"), 8)


def test_geometric_series_oracle():
    # 1/(t-1) = u + u^2 + u^3 + ...  (u = 1/t), checked coefficientwise
    F = Fq(3)
    s = LaurentSeries.from_poly(Poly.parse(F, "t+2"), 10).inverse()
    for k in range(1, 9):
        assert s.coefficient(k) == 1, k
    assert s.coefficient(0) == 0


def test_ring_laws():
    rng = random.Random(8)
    F = Fq(3)
    for _ in range(40):
        a = _rand_series(rng, F, 9)
        b = _rand_series(rng, F, 9)
        c = _rand_series(rng, F, 9)
        assert (a + b).agrees_with(b + a, 6)
        assert (a * b).agrees_with(b * a, 5)
        assert ((a + b) * c).agrees_with(a * c + b * c, 5)


def test_shift_and_valuation():
    F = Fq(2)
    s = LaurentSeries.monomial(F, 3, 10, "t")
    assert s.valuation == 3
    assert s.shift(2).valuation == 5
    assert s.shift(-4).valuation == -1


def test_qpow_is_coefficientwise_on_prime_field():
    # over F_q the q-power map sends sum a_k u^k to sum a_k u^(qk)
    F = Fq(3)
    rng = random.Random(9)
    s = _rand_series(rng, F, 5)
    t = s.qpow()
    for k in range(s.valuation, 5):
        if 3 * k >= t.precision:
            break
        assert t.coefficient(3 * k) == F.pow(s.coefficient(k), 3)
        if 3 * k + 1 < t.precision and k + 1 < 5:
            assert t.coefficient(3 * k + 1) == 0


def test_truncate_only_lowers_precision():
    F = Fq(2)
    s = LaurentSeries.one(F, 10, "t")
    assert s.truncate(4).precision == 4
    with pytest.raises(PrecisionError):
        s.truncate(11)


def test_tail_from_and_polynomial_part():
    F = Fq(2)
    # t^2 + 1 + u^3  (u = 1/t)
    s = LaurentSeries.from_poly(Poly.parse(F, "t^2+1"), 8) + \
        LaurentSeries.monomial(F, 3, 8, "t")
    assert s.polynomial_part() == Poly.parse(F, "t^2+1")
    tail = s.tail_from(1)
    assert tail.valuation == 3 and tail.coefficient(3) == 1


def test_json_round_trip():
    rng = random.Random(10)
    for q in (2, 9):
        F = Fq(q)
        s = _rand_series(rng, F, 7)
        data = s.to_json()
        back = LaurentSeries.from_json(data, F)
        assert back.agrees_with(s, 7) and back.precision == s.precision


def test_inverse_requires_known_leading_term():
    # a series that is zero to its precision is not provably invertible
    F = Fq(2)
    with pytest.raises(PrecisionError):
        LaurentSeries.zero(F, 5, "t").inverse()
