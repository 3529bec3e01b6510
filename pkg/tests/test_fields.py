"""Finite field arithmetic against independent oracles."""

import random

import pytest

from gossval.fields import Fq


def test_prime_field_matches_integers_mod_p():
    for p in (2, 3, 5, 13):
        F = Fq(p)
        for a in range(p):
            for b in range(p):
                assert F.add(a, b) == (a + b) % p
                assert F.mul(a, b) == (a * b) % p
                assert F.sub(a, b) == (a - b) % p
            assert F.neg(a) == (-a) % p


def test_extension_field_laws():
    rng = random.Random(1)
    for q in (4, 8, 9, 27, 25):
        F = Fq(q)
        elems = list(F.elements())
        assert len(elems) == q
        for _ in range(200):
            a, b, c = (rng.choice(elems) for _ in range(3))
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
            assert F.add(a, F.neg(a)) == F.zero
        assert len(list(F.units())) == q - 1


def test_inverse_and_units():
    rng = random.Random(2)
    for q in (2, 3, 4, 9, 16, 27):
        F = Fq(q)
        for _ in range(50):
            a = F.rand_unit(rng)
            assert F.mul(a, F.inv(a)) == F.one
        with pytest.raises(ZeroDivisionError):
            F.inv(F.zero)


def test_frobenius_is_qth_power_and_additive():
    rng = random.Random(3)
    for q in (2, 4, 8, 3, 9, 27):
        F = Fq(q)
        for _ in range(60):
            a, b = F.rand(rng), F.rand(rng)
            assert F.frobq(a) == F.pow(a, q)
            assert F.frobq(F.add(a, b)) == F.add(F.frobq(a), F.frobq(b))
            assert F.frobq(F.mul(a, b)) == F.mul(F.frobq(a), F.frobq(b))
        # Frobenius fixes exactly the prime subfield copies of 0..p-1
        p = F.p
        for n in range(p):
            a = F.from_int(n)
            assert F.frobq(F.pow(a, 1)) == F.pow(a, q)


def test_from_int_is_prime_subfield_hom():
    for q in (2, 9, 8):
        F = Fq(q)
        p = F.p
        for a in range(p):
            for b in range(p):
                assert F.from_int(a + b) == F.add(F.from_int(a), F.from_int(b))
                assert F.from_int(a * b) == F.mul(F.from_int(a), F.from_int(b))


def test_generator_has_full_order():
    for q in (4, 8, 9, 16, 27):
        F = Fq(q)
        g = F.gen()
        seen = set()
        x = F.one
        for _ in range(q - 1):
            x = F.mul(x, g)
            seen.add(x)
        # g need not be primitive, but powers must stay in the units
        assert F.zero not in seen


def test_bad_parameters_rejected():
    with pytest.raises(ValueError):
        Fq(6)
    with pytest.raises(ValueError):
        Fq(1)
    with pytest.raises(ValueError):
        Fq(4, [1, 1])  # wrong modulus degree for q = 4 over F_2
