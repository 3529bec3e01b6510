"""Kernel backends: reference-vs-compiled parity and external oracles."""

import random

import pytest

from gossval.fields import Fq
from gossval.kernels import backend, backend_name, reference
from gossval.matrix import RingMatrix
from gossval.poly import Poly, is_irreducible_trial_division
from gossval.rings import QuotPolyRing, ResidueField
from gossval.skew import frobenius_norm

try:
    from gossval.kernels import _core
except ImportError:
    _core = None

needs_core = pytest.mark.skipif(_core is None, reason="compiled kernel not built")


def _digits(rng, p, d):
    return [rng.randrange(p) for _ in range(d)]


def _naive_kt_mul(p, f_digits, a, b):
    """Schoolbook product over F_p[y]/(f), digit arithmetic only."""
    d = len(f_digits) - 1

    def smul(x, y):
        acc = [0] * (2 * d - 1 if d > 1 else 1)
        for i, xi in enumerate(x):
            for j, yj in enumerate(y):
                acc[i + j] = (acc[i + j] + xi * yj) % p
        for i in range(len(acc) - 1, d - 1, -1):
            c = acc[i]
            if c:
                for j in range(d + 1):
                    acc[i - d + j] = (acc[i - d + j] - c * f_digits[j]) % p
        return [acc[i] % p for i in range(d)]

    def sadd(x, y):
        return [(u + v) % p for u, v in zip(x, y)]

    if not a or not b:
        return []
    out = [[0] * d for _ in range(len(a) + len(b) - 1)]
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = sadd(out[i + j], smul(ai, bj))
    while out and not any(out[-1]):
        out.pop()
    return out


def test_sieve_against_trial_division():
    for p in (2, 3, 5):
        got = reference.monic_irreducibles(p, 4)
        F = Fq(p)
        by_deg = {}
        for digs in got:
            f = Poly(F, [F.from_int(c) for c in digs], "t")
            assert f.is_monic()
            assert is_irreducible_trial_division(f), f.to_str()
            by_deg[f.degree()] = by_deg.get(f.degree(), 0) + 1
        # completeness via necklace counts
        for n in range(1, 5):
            total = sum(d * by_deg[d] for d in by_deg if n % d == 0)
            assert total == p ** n


def test_kt_mul_against_schoolbook():
    rng = random.Random(29)
    for p, f in ((2, [1, 1, 0, 1]), (3, [2, 0, 1]), (5, [3, 1])):
        d = len(f) - 1
        for _ in range(25):
            a = [_digits(rng, p, d) for _ in range(rng.randint(0, 4))]
            b = [_digits(rng, p, d) for _ in range(rng.randint(0, 4))]
            assert reference.kt_mul(p, f, a, b) == _naive_kt_mul(p, f, a, b)


def _kt_sandbox(p, fd, t_cap):
    """Residue field k = F_p[y]/(f) with the honest Frobenius, and
    k[t]/(t^cap) as a sandbox ring whose twist fixes t."""
    F = Fq(p)
    k = ResidueField(F, Poly(F, [F.from_int(c) for c in fd], "y"))
    kt = QuotPolyRing(k, "t", [k.zero] * t_cap + [k.one])

    def lift(entry):
        acc = kt.zero
        for i, dig in enumerate(entry):
            kv = k.from_fq_vec([F.from_int(c) for c in dig])
            acc = kt.add(acc, kt.mul(kt.const(kv),
                                     kt.pow(kt.gen(), i)))
        return acc

    return kt, lift


def test_kt_norm_against_ring_matrix():
    # independent route: residue-field carrier + skew norm machinery
    rng = random.Random(30)
    for p, fd in ((2, [1, 1, 0, 1]), (3, [1, 2, 0, 1])):
        d = len(fd) - 1
        kt, lift = _kt_sandbox(p, fd, 8)
        r = 2
        ent = [[[_digits(rng, p, d) for _ in range(2)] for _ in range(r)]
               for _ in range(r)]
        M = RingMatrix(kt, [[lift(e) for e in row] for row in ent])
        for steps in (1, 2, 3):
            got = reference.kt_norm(p, fd, ent, steps)
            want = frobenius_norm(M, steps)
            Mgot = RingMatrix(kt, [[lift(e) for e in row] for row in got])
            assert Mgot == want, (p, steps)


def test_charpoly_against_ring_matrix():
    rng = random.Random(31)
    p, fd = 2, [1, 1, 1]
    r = 2
    ent = [[[_digits(rng, p, 2) for _ in range(2)] for _ in range(r)]
           for _ in range(r)]
    cp = reference.kt_local_charpoly(p, fd, ent, 3)
    assert len(cp) == r + 1
    # leading coefficient is 1
    assert cp[-1] == [[1, 0]]
    # Cayley-Hamilton on the packed norm: sum cp[i] * N^i = 0
    N = reference.kt_norm(p, fd, ent, 3)
    kt, lift = _kt_sandbox(p, fd, 16)
    M = RingMatrix(kt, [[lift(e) for e in row] for row in N])
    acc = RingMatrix.zeros(kt, r, r)
    P = RingMatrix.identity(kt, r)
    for coeff in cp:
        c = lift(coeff)
        acc = acc + P.map(lambda x, c=c: kt.mul(c, x))
        P = P * M
    assert acc.is_zero()


@needs_core
def test_backends_bit_identical():
    rng = random.Random(32)
    assert _core.BACKEND_NAME == "cython"
    for p in (2, 3, 5, 7):
        for md in (1, 3, 5):
            assert _core.monic_irreducibles(p, md) == \
                reference.monic_irreducibles(p, md)
    for p, f in ((2, [1, 1]), (2, [1, 1, 0, 0, 1]), (3, [1, 2, 0, 1]),
                 (5, [2, 1]), (7, [3, 0, 1])):
        d = len(f) - 1
        for _ in range(10):
            a = [_digits(rng, p, d) for _ in range(rng.randint(0, 5))]
            b = [_digits(rng, p, d) for _ in range(rng.randint(0, 5))]
            assert _core.kt_mul(p, f, a, b) == reference.kt_mul(p, f, a, b)
        C = [[[_digits(rng, p, d) for _ in range(3)] for _ in range(2)]
             for _ in range(2)]
        for steps in (1, 2, 4):
            assert _core.kt_norm(p, f, C, steps) == \
                reference.kt_norm(p, f, C, steps)
            assert _core.kt_local_charpoly(p, f, C, steps) == \
                reference.kt_local_charpoly(p, f, C, steps)


def test_backend_selection_reports_a_name():
    assert backend_name() in ("python", "cython")
    assert hasattr(backend(), "kt_local_charpoly")
