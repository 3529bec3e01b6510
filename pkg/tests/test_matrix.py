"""Matrix layer: determinants by two routes, Smith chains, kernels."""

import random

from gossval.fields import Fq
from gossval.matrix import (
    RingMatrix,
    chain_is_surjective,
    chain_kernel_free_basis,
    fitting_generator,
    kernel_basis,
    rank,
    rref,
    smith_chain,
)
from gossval.rings import base_fq, lambda_ring


def _rand_matrix(rng, ring, n, m=None):
    m = n if m is None else m
    F = base_fq(ring)
    dim = ring.fq_dim()
    return RingMatrix(ring, [[ring.from_fq_vec([F.rand(rng) for _ in range(dim)])
                              for _ in range(m)] for _ in range(n)])


def test_det_cofactor_equals_bareiss():
    # two independent determinant routes must agree over a domain
    rng = random.Random(15)
    F = Fq(5)
    for n in (1, 2, 3, 4):
        for _ in range(20):
            M = RingMatrix(F, [[F.rand(rng) for _ in range(n)]
                               for _ in range(n)])
            assert M.det() == M.det_fraction_free()


def test_det_multiplicative_over_truncation_ring():
    rng = random.Random(16)
    lam = lambda_ring(Fq(3), 3)
    for _ in range(25):
        A = _rand_matrix(rng, lam, 3)
        B = _rand_matrix(rng, lam, 3)
        assert (A * B).det() == lam.mul(A.det(), B.det())


def test_charpoly_cayley_hamilton():
    rng = random.Random(17)
    lam = lambda_ring(Fq(2), 2)
    for n in (1, 2, 3):
        for _ in range(10):
            M = _rand_matrix(rng, lam, n)
            cp = M.charpoly()
            acc = RingMatrix.zeros(lam, n, n)
            P = RingMatrix.identity(lam, n)
            for c in cp:
                acc = acc + P.map(lambda x, c=c: lam.mul(c, x))
                P = P * M
            assert acc.is_zero()


def test_inverse_over_local_ring():
    rng = random.Random(18)
    lam = lambda_ring(Fq(3), 3)
    found = 0
    while found < 15:
        M = _rand_matrix(rng, lam, 3)
        if not lam.is_unit(M.det()):
            continue
        found += 1
        assert M.inverse() * M == RingMatrix.identity(lam, 3)
        assert M * M.inverse() == RingMatrix.identity(lam, 3)


def test_smith_chain_factorization():
    rng = random.Random(19)
    lam = lambda_ring(Fq(2), 3)
    z = lam.gen()
    for n, m in ((2, 2), (2, 3), (3, 2), (3, 3)):
        for _ in range(20):
            M = _rand_matrix(rng, lam, n, m)
            D, L, R = smith_chain(lam, M)
            assert L * M * R == D
            # L and R are invertible over the chain ring
            assert lam.is_unit(L.det()) and lam.is_unit(R.det())
            # diagonal entries are powers of z (or zero); off-diagonal zero
            for i in range(n):
                for j in range(m):
                    v = D.rows[i][j]
                    if i != j:
                        assert lam.is_zero(v)
                    elif not lam.is_zero(v):
                        a = lam.val(v)
                        assert v == lam.pow(z, a)


def test_chain_kernel_and_complement():
    rng = random.Random(20)
    lam = lambda_ring(Fq(2), 2)
    z = lam.gen()
    hits = 0
    for _ in range(200):
        M = _rand_matrix(rng, lam, 2, 3)
        split = chain_kernel_free_basis(lam, M)
        if split is None:
            # some elementary divisor is z^a with 0 < a < e
            D, _, _ = smith_chain(lam, M)
            vals = [lam.val(D.rows[i][i]) for i in range(2)
                    if not lam.is_zero(D.rows[i][i])]
            assert any(0 < a < 2 for a in vals)
            continue
        hits += 1
        ker, comp = split
        for v in ker:
            out = M.apply(list(v))
            assert all(lam.is_zero(x) for x in out)
        assert len(ker) + len(comp) == 3
    assert hits > 50


def test_chain_surjectivity_matches_smith():
    rng = random.Random(21)
    lam = lambda_ring(Fq(3), 2)
    for _ in range(80):
        n, m = rng.choice(((2, 2), (2, 3), (3, 3)))
        M = _rand_matrix(rng, lam, n, m)
        D, _, _ = smith_chain(lam, M)
        expected = all(lam.is_unit(D.rows[i][i]) for i in range(n)) \
            if n <= m else False
        assert chain_is_surjective(lam, M) == expected


def test_rref_rank_kernel_over_field():
    rng = random.Random(22)
    F = Fq(2)
    for _ in range(60):
        n, m = rng.randint(1, 4), rng.randint(1, 5)
        rows = [[F.rand(rng) for _ in range(m)] for _ in range(n)]
        r = rank(F, rows)
        ker = kernel_basis(F, rows)
        assert r + len(ker) == m
        for v in ker:
            for row in rows:
                acc = 0
                for a, b in zip(row, v):
                    acc = F.add(acc, F.mul(a, b))
                assert acc == 0


def test_fitting_generator_is_charpoly_of_t_action():
    F = Fq(2)
    # companion matrix of t^2 + t + 1
    M = RingMatrix(F, [[0, 1], [1, 1]])
    g = fitting_generator(M, F)
    assert g.to_str() == "t^2+t+1"
    assert fitting_generator(RingMatrix(F, []), F).is_one()


def test_twist_is_entrywise_frobenius():
    lam = lambda_ring(Fq(4), 2)
    F = Fq(4)
    g = F.gen()
    M = RingMatrix(lam, [[lam.const(g)]])
    assert M.twist().rows[0][0] == lam.const(F.frobq(g))
