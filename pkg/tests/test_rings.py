"""Quotient/polynomial carrier rings and the residue-field tower."""

import random

import pytest

from gossval.fields import Fq
from gossval.poly import Poly
from gossval.rings import (
    PolyRing,
    QuotPolyRing,
    ResidueField,
    base_fq,
    lambda_ring,
    lambda_tensor,
    lift_lambda,
)


def _rand_elem(rng, ring):
    dim = ring.fq_dim()
    F = base_fq(ring)
    return ring.from_fq_vec([F.rand(rng) for _ in range(dim)])


def test_truncation_ring_laws():
    rng = random.Random(11)
    lam = lambda_ring(Fq(3), 4)
    for _ in range(60):
        a, b, c = (_rand_elem(rng, lam) for _ in range(3))
        assert lam.mul(a, b) == lam.mul(b, a)
        assert lam.mul(lam.mul(a, b), c) == lam.mul(a, lam.mul(b, c))
        assert lam.mul(a, lam.add(b, c)) == \
            lam.add(lam.mul(a, b), lam.mul(a, c))
    z = lam.gen()
    assert lam.is_zero(lam.pow(z, 4))
    assert not lam.is_zero(lam.pow(z, 3))


def test_truncation_units_and_inverse():
    rng = random.Random(12)
    lam = lambda_ring(Fq(2), 5)
    z = lam.gen()
    assert not lam.is_unit(z)
    for _ in range(40):
        a = _rand_elem(rng, lam)
        if lam.is_unit(a):
            assert lam.mul(a, lam.inv(a)) == lam.one
        else:
            with pytest.raises(ZeroDivisionError):
                lam.inv(a)
    # 1/(1+z) = 1 + z + z^2 + ... truncated
    inv = lam.inv(lam.add(lam.one, z))
    acc = lam.zero
    for k in range(5):
        acc = lam.add(acc, lam.pow(z, k))
    assert inv == acc


def test_field_quotient_inverse():
    # S[v]/(m) with m irreducible is a field: extended-Euclid inversion
    F = Fq(2)
    m = Poly.parse(F, "t^3+t+1")
    K = QuotPolyRing(F, "t", m.coeffs)
    rng = random.Random(13)
    for _ in range(40):
        a = _rand_elem(rng, K)
        if K.is_zero(a):
            continue
        assert K.mul(a, K.inv(a)) == K.one


def test_valuation_and_coeff_at():
    lam = lambda_ring(Fq(2), 4)
    z = lam.gen()
    a = lam.add(lam.pow(z, 2), lam.pow(z, 3))
    assert lam.val(a) == 2
    assert lam.val(lam.zero) == 4
    assert lam.coeff_at(a, 2) == Fq(2).one
    assert lam.coeff_at(a, 1) == Fq(2).zero


def test_frobq_fixes_series_variable():
    # on Lambda = F_q[z]/(z^e) the twist acts on coefficients only
    lam = lambda_ring(Fq(4), 3)
    F = Fq(4)
    g = F.gen()
    a = lam.add(lam.const(g), lam.gen())
    t = lam.frobq(a)
    assert lam.coeff_at(t, 0) == F.frobq(g)
    assert lam.coeff_at(t, 1) == F.one


def test_fq_vec_round_trip():
    rng = random.Random(14)
    for ring in (lambda_ring(Fq(2), 3),
                 lambda_tensor(lambda_ring(Fq(2), 2),
                               ResidueField(Fq(2), Poly.parse(Fq(2), "t^2+t+1")))):
        for _ in range(25):
            a = _rand_elem(rng, ring)
            assert ring.from_fq_vec(ring.to_fq_vec(a)) == a


def test_residue_field_reduction():
    F = Fq(2)
    f = Poly.parse(F, "t^2+t+1")
    k = ResidueField(F, f)
    assert k.fq_dim() == 2
    tbar = k.gen()
    # the generator satisfies the defining relation
    img = k.add(k.add(k.mul(tbar, tbar), tbar), k.one)
    assert k.is_zero(img)
    # reduce_poly is evaluation at the root
    g = Poly.parse(F, "t^3+t")
    got = k.reduce_poly(g)
    want = k.add(k.mul(k.mul(tbar, tbar), tbar), tbar)
    assert got == want


def test_geometric_poly_ring_twist():
    # on Lambda[theta] with the geometric twist, frobq spreads exponents
    lam = lambda_ring(Fq(2), 2)
    R = PolyRing(lam, "theta", geometric=True)
    th = R.gen()
    z = R.const(lam.gen())
    a = R.add(R.mul(z, th), R.one)          # 1 + z*theta
    t = R.frobq(a)                          # 1 + z*theta^2  (z fixed, q = 2)
    assert t == R.add(R.mul(z, R.mul(th, th)), R.one)


def test_lift_lambda_embedding():
    lam = lambda_ring(Fq(2), 3)
    k = ResidueField(Fq(2), Poly.parse(Fq(2), "t^2+t+1"))
    lamk = lambda_tensor(lam, k)
    a = lam.add(lam.one, lam.gen())
    lifted = lift_lambda(lam, lamk, a)
    assert lamk.coeff_at(lifted, 0) == k.one
    assert lamk.coeff_at(lifted, 1) == k.one
    # the embedding is a ring hom
    b = lam.pow(lam.gen(), 2)
    assert lift_lambda(lam, lamk, lam.mul(a, b)) == \
        lamk.mul(lifted, lift_lambda(lam, lamk, b))
