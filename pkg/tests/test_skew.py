"""Twisted polynomial ring: commutation, associativity, norm cocycle."""

import random

from gossval.fields import Fq
from gossval.matrix import RingMatrix
from gossval.rings import PolyRing, base_fq, lambda_ring
from gossval.skew import SemilinearMap, TauPoly, frobenius_norm, tau_apply


def _rand_tau(rng, ring, max_deg, randval):
    return TauPoly(ring, [randval() for _ in range(rng.randint(0, max_deg) + 1)])


def _rand_ring_elem(rng, ring):
    F = base_fq(ring)
    return ring.from_fq_vec([F.rand(rng) for _ in range(ring.fq_dim())])


def test_commutation_rule():
    # tau * c = sigma(c) * tau over every carrier flavour
    rng = random.Random(23)
    carriers = [lambda_ring(Fq(4), 2), lambda_ring(Fq(3), 3)]
    for ring in carriers:
        t = TauPoly.tau(ring)
        for _ in range(30):
            c = _rand_ring_elem(rng, ring)
            lhs = t * TauPoly.const(ring, c)
            rhs = TauPoly.const(ring, ring.frobq(c)) * t
            assert lhs == rhs


def test_associativity_thousand_triples():
    rng = random.Random(24)
    ring = lambda_ring(Fq(2), 2)
    randval = lambda: _rand_ring_elem(rng, ring)
    for _ in range(1000):
        a = _rand_tau(rng, ring, 3, randval)
        b = _rand_tau(rng, ring, 3, randval)
        c = _rand_tau(rng, ring, 3, randval)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c


def test_apply_is_additive_evaluation():
    # evaluation realizes the twisted product as composition of
    # F_q-linear maps: (f*g)(x) = f(g(x))
    rng = random.Random(25)
    F = Fq(9)
    ring = lambda_ring(F, 1)  # plain field carrier
    randval = lambda: _rand_ring_elem(rng, ring)
    for _ in range(100):
        f = _rand_tau(rng, ring, 3, randval)
        g = _rand_tau(rng, ring, 3, randval)
        x = randval()
        y = randval()
        assert f.apply(ring.add(x, y)) == ring.add(f.apply(x), f.apply(y))
        assert (f * g).apply(x) == f.apply(g.apply(x))
        assert tau_apply(f, x) == f.apply(x)


def test_degree_of_product():
    ring = lambda_ring(Fq(2), 1)
    a = TauPoly(ring, [ring.one, ring.one])
    b = TauPoly(ring, [ring.zero, ring.one, ring.one])
    assert (a * b).degree() == a.degree() + b.degree()


def test_power_matches_repeated_product():
    rng = random.Random(26)
    ring = lambda_ring(Fq(3), 2)
    randval = lambda: _rand_ring_elem(rng, ring)
    f = _rand_tau(rng, ring, 2, randval)
    acc = TauPoly.const(ring, ring.one)
    for n in range(5):
        assert f ** n == acc
        acc = acc * f


def test_frobenius_norm_cocycle():
    # N_(a+b) = N_a * sigma^a(N_b)
    rng = random.Random(27)
    lam = lambda_ring(Fq(2), 2)
    for _ in range(25):
        C = RingMatrix(lam, [[_rand_ring_elem(rng, lam) for _ in range(2)]
                             for _ in range(2)])
        for a, b in ((1, 1), (1, 2), (2, 1), (2, 3)):
            nab = frobenius_norm(C, a + b)
            nb = frobenius_norm(C, b)
            for _ in range(a):
                nb = nb.twist()
            assert nab == frobenius_norm(C, a) * nb


def test_semilinear_composition():
    rng = random.Random(28)
    lam = lambda_ring(Fq(4), 1)
    A = RingMatrix(lam, [[_rand_ring_elem(rng, lam) for _ in range(2)]
                         for _ in range(2)])
    B = RingMatrix(lam, [[_rand_ring_elem(rng, lam) for _ in range(2)]
                         for _ in range(2)])
    f, g = SemilinearMap(A), SemilinearMap(B)
    v = [_rand_ring_elem(rng, lam) for _ in range(2)]
    assert f.compose(g).apply(v) == f.apply(g.apply(v))
    # two applications of a semilinear map = norm_2 applied tau^2-linearly
    n2 = frobenius_norm(A, 2)
    w = f.apply(f.apply(v))
    ww = SemilinearMap(n2).matrix.apply([lam.frobq(lam.frobq(x)) for x in v])
    assert w == ww


def test_geometric_carrier_apply():
    # over Lambda[theta] with geometric twist, tau is the honest q-power
    lam = lambda_ring(Fq(2), 2)
    R = PolyRing(lam, "theta", geometric=True)
    t = TauPoly.tau(R)
    th = R.gen()
    assert t.apply(th) == R.mul(th, th)
