"""Polynomial layer: enumeration, irreducibility, gcd identities."""

import random
from itertools import product

from gossval.fields import Fq
from gossval.poly import (
    Poly,
    first_irreducible,
    is_irreducible_trial_division,
    monic_irreducibles,
)


def _all_monic(field, degree, var="t"):
    for low in product(range(field.q), repeat=degree):
        packed = [field.from_int(c) if field.e == 1 else c for c in low]
        yield Poly(field, list(packed) + [field.one], var)


def _rand_poly(rng, field, max_deg, var="t"):
    deg = rng.randint(0, max_deg)
    coeffs = [field.rand(rng) for _ in range(deg + 1)]
    return Poly(field, coeffs, var)


def test_enumeration_complete_against_trial_division():
    # the sieve must agree with naive trial division poly by poly
    for q in (2, 3, 4):
        F = Fq(q)
        by_deg = monic_irreducibles(F, 4)
        for d in range(1, 5):
            got = {f.to_str() for f in by_deg[d]}
            want = {f.to_str() for f in _all_monic(F, d)
                    if is_irreducible_trial_division(f)}
            assert got == want, (q, d)


def test_enumeration_deterministic_order():
    F = Fq(3)
    a = monic_irreducibles(F, 5)
    b = monic_irreducibles(F, 5)
    assert [[f.to_str() for f in a[d]] for d in a] == \
           [[f.to_str() for f in b[d]] for d in b]


def test_necklace_identity():
    # sum over d | n of d * N_d = q^n counts monic degree-n products of
    # primitive necklaces; an independent check of the sieve's counts
    for q in (2, 3, 4, 5):
        F = Fq(q)
        by_deg = monic_irreducibles(F, 6)
        counts = {d: len(by_deg[d]) for d in by_deg}
        for n in range(1, 7):
            total = sum(d * counts[d] for d in range(1, n + 1) if n % d == 0)
            assert total == q ** n, (q, n)


def test_is_irreducible_matches_trial_division():
    rng = random.Random(4)
    for q in (2, 3, 9):
        F = Fq(q)
        for _ in range(120):
            f = _rand_poly(rng, F, 6)
            if f.degree() < 1:
                continue
            assert f.is_irreducible() == is_irreducible_trial_division(f), \
                (q, f.to_str())


def test_first_irreducible():
    for q in (2, 3, 4):
        F = Fq(q)
        for d in (1, 2, 3, 5):
            f = first_irreducible(F, d, "y")
            assert f.degree() == d and f.is_monic() and f.is_irreducible()


def test_gcd_and_xgcd():
    rng = random.Random(5)
    F = Fq(3)
    for _ in range(80):
        a = _rand_poly(rng, F, 5)
        b = _rand_poly(rng, F, 5)
        if a.is_zero() and b.is_zero():
            continue
        g = a.gcd(b)
        assert g.is_monic()
        # g divides both
        for h in (a, b):
            if not h.is_zero():
                _, r = divmod(h, g)
                assert r.is_zero()
        gg, u, v = a.xgcd(b)
        assert gg == g
        assert u * a + v * b == g


def test_derivative_product_rule():
    rng = random.Random(6)
    F = Fq(5)
    for _ in range(60):
        a = _rand_poly(rng, F, 4)
        b = _rand_poly(rng, F, 4)
        assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


def test_evaluate_is_ring_hom():
    rng = random.Random(7)
    for q in (2, 9):
        F = Fq(q)
        for _ in range(50):
            a = _rand_poly(rng, F, 4)
            b = _rand_poly(rng, F, 4)
            x = F.rand(rng)
            assert (a + b).evaluate(x) == F.add(a.evaluate(x), b.evaluate(x))
            assert (a * b).evaluate(x) == F.mul(a.evaluate(x), b.evaluate(x))


def test_mulmod_powmod():
    F = Fq(2)
    m = Poly.parse(F, "t^3+t+1")
    a = Poly.parse(F, "t^2+1")
    assert a.mulmod(a, m) == (a * a) % m
    # Fermat: a^(2^3) = a mod m in F_2[t]/(m) = F_8
    assert a.powmod(8, m) == a % m


def test_frobenius_power():
    F = Fq(4)
    f = Poly(F, [F.gen(), F.one], "t")
    g = f.qpow()
    # qpow is coefficientwise Frobenius with exponents spread by q
    assert g.degree() == f.degree() * 4
    assert g.coeffs[4] == F.one
    assert g.coeffs[0] == F.frobq(F.gen())
