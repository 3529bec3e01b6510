"""Pure-Python kernel backend.

Hot inner loops for prime base fields F_p: the monic-irreducible sieve,
multiplication in k[t] for k = F_p[y]/(f), and the twisted norm product
of a matrix under the p-power Frobenius.  Boundary encoding is plain
nested lists of ints (base-p digits, low-to-high); internally GF(2^d)
elements are bit-packed ints and odd-p elements are digit tuples.

The compiled backend in _core.pyx exposes the same three functions.
"""

from __future__ import annotations

BACKEND_NAME = "python"


# ---------------------------------------------------------------------------
# monic irreducible enumeration (multiplication sieve)
# ---------------------------------------------------------------------------

def monic_irreducibles(p: int, max_degree: int):
    """All monic irreducibles over F_p of degree 1..max_degree as digit
    lists (low-to-high, leading 1 included), ordered by degree then by
    ascending packed value of the non-leading digits."""
    if max_degree < 1:
        return []
    if p == 2:
        return _sieve_p2(max_degree)
    return _sieve_odd(p, max_degree)


def _sieve_p2(max_degree):
    comp = [None] + [bytearray(1 << d) for d in range(1, max_degree + 1)]
    out = []
    for d in range(1, max_degree + 1):
        lead = 1 << d
        row = comp[d]
        found = [lead | idx for idx in range(lead) if not row[idx]]
        for g in found:
            out.append(g)
            for b in range(1, max_degree - d + 1):
                hl = 1 << b
                top = 1 << (d + b)
                crow = comp[d + b]
                for hidx in range(hl):
                    h = hl | hidx
                    # carry-less product g*h
                    r, a, bb = 0, g, h
                    while bb:
                        if bb & 1:
                            r ^= a
                        a <<= 1
                        bb >>= 1
                    crow[r ^ top] = 1
    return [[(v >> i) & 1 for i in range(v.bit_length())] for v in out]


def _sieve_odd(p, max_degree):
    comp = [None] + [bytearray(p**d) for d in range(1, max_degree + 1)]
    powers = [p**i for i in range(max_degree + 1)]
    out = []
    for d in range(1, max_degree + 1):
        size = powers[d]
        row = comp[d]
        found = [idx for idx in range(size) if not row[idx]]
        for gidx in found:
            gd = _unpack(p, gidx, d) + [1]
            out.append(gd)
            for b in range(1, max_degree - d + 1):
                crow = comp[d + b]
                for hidx in range(powers[b]):
                    hd = _unpack(p, hidx, b) + [1]
                    prod = [0] * (d + b + 1)
                    for i, gi in enumerate(gd):
                        if gi:
                            for j, hj in enumerate(hd):
                                prod[i + j] = (prod[i + j] + gi * hj) % p
                    # monic product: drop the leading 1 for the index
                    idx = 0
                    for i in range(d + b - 1, -1, -1):
                        idx = idx * p + prod[i]
                    crow[idx] = 1
    return out


def _unpack(p, v, width):
    out = [0] * width
    for i in range(width):
        v, out[i] = divmod(v, p)
    return out


# ---------------------------------------------------------------------------
# GF(2^d): bit-packed scalars
# ---------------------------------------------------------------------------

def _pack2(digits):
    v = 0
    for i, c in enumerate(digits):
        if c:
            v |= 1 << i
    return v


def _mulmod2(a, b, f, d):
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    rl = r.bit_length()
    while rl > d:
        r ^= f << (rl - 1 - d)
        rl = r.bit_length()
    return r


def _ktmul2(a, b, f, d):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] ^= _mulmod2(ai, bj, f, d)
    while out and out[-1] == 0:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# GF(p^d), odd p: digit-tuple scalars
# ---------------------------------------------------------------------------

def _mulmodp(p, a, b, f, d):
    """a, b: digit lists length d; f: monic digit list length d+1."""
    acc = [0] * (2 * d - 1)
    for i in range(d):
        ai = a[i]
        if ai:
            for j in range(d):
                acc[i + j] += ai * b[j]
    for i in range(2 * d - 2, d - 1, -1):
        c = acc[i] % p
        if c:
            base = i - d
            for j in range(d):
                acc[base + j] -= c * f[j]
        acc[i] = 0
    return [acc[i] % p for i in range(d)]


def _powp(p, a, n, f, d):
    r = [1] + [0] * (d - 1)
    base = a
    while n:
        if n & 1:
            r = _mulmodp(p, r, base, f, d)
        base = _mulmodp(p, base, base, f, d)
        n >>= 1
    return r


def _ktmulp(p, a, b, f, d):
    if not a or not b:
        return []
    zero = [0] * d
    out = [list(zero) for _ in range(len(a) + len(b) - 1)]
    for i, ai in enumerate(a):
        if any(ai):
            for j, bj in enumerate(b):
                if any(bj):
                    prod = _mulmodp(p, ai, bj, f, d)
                    tgt = out[i + j]
                    for m in range(d):
                        tgt[m] = (tgt[m] + prod[m]) % p
    while out and not any(out[-1]):
        out.pop()
    return out


# ---------------------------------------------------------------------------
# public k[t] operations
# ---------------------------------------------------------------------------

def kt_mul(p: int, f_digits, a, b):
    """Product in k[t], k = F_p[y]/(f).  a, b: lists of t-coefficients,
    each a base-p digit list of length <= deg f."""
    d = len(f_digits) - 1
    if p == 2:
        f = _pack2(f_digits)
        ap = [_pack2(c) for c in a]
        bp = [_pack2(c) for c in b]
        return [_unpack2(v, d) for v in _ktmul2(ap, bp, f, d)]
    ap = [_padded(c, d) for c in a]
    bp = [_padded(c, d) for c in b]
    return [list(c) for c in _ktmulp(p, ap, bp, list(f_digits), d)]


def kt_norm(p: int, f_digits, c_entries, steps: int):
    """Twisted norm product N = C * C^sigma * ... * C^(sigma^(steps-1)) of
    an r x r matrix over k[t], sigma the p-power Frobenius on k."""
    d = len(f_digits) - 1
    r = len(c_entries)
    if p == 2:
        f = _pack2(f_digits)
        C = [[[_pack2(c) for c in e] for e in row] for row in c_entries]
        N = [row[:] for row in C]
        Ct = C
        for _ in range(1, steps):
            Ct = [[[_mulmod2(v, v, f, d) for v in e] for e in row] for row in Ct]
            N = _matmul(N, Ct, lambda x, y: _ktmul2(x, y, f, d), _ktadd_xor, r)
        return [[[_unpack2(v, d) for v in e] for e in row] for row in N]
    f = list(f_digits)
    C = [[[_padded(c, d) for c in e] for e in row] for row in c_entries]
    N = [row[:] for row in C]
    Ct = C

    def mul(x, y):
        return _ktmulp(p, x, y, f, d)

    def add(x, y):
        if len(x) < len(y):
            x, y = y, x
        out = [list(c) for c in x]
        for i, c in enumerate(y):
            tgt = out[i]
            for m in range(d):
                tgt[m] = (tgt[m] + c[m]) % p
        while out and not any(out[-1]):
            out.pop()
        return out

    for _ in range(1, steps):
        Ct = [[[_powp(p, v, p, f, d) for v in e] for e in row] for row in Ct]
        N = _matmul(N, Ct, mul, add, r)
    return [[[list(v) for v in e] for e in row] for row in N]


def kt_local_charpoly(p: int, f_digits, c_entries, steps: int):
    """Characteristic polynomial det(X*I - N) of the twisted norm
    N = C * C^sigma * ... * C^(sigma^(steps-1)), computed entirely in the
    packed k[t] representation.  Returns the X-coefficients low-to-high
    (length r+1, monic), each a list of t-coefficient digit lists."""
    d = len(f_digits) - 1
    r = len(c_entries)
    if p == 2:
        f = _pack2(f_digits)
        C = [[[_pack2(c) for c in e] for e in row] for row in c_entries]
        N = [row[:] for row in C]
        Ct = C
        for _ in range(1, steps):
            Ct = [[[_mulmod2(v, v, f, d) for v in e] for e in row] for row in Ct]
            N = _matmul(N, Ct, lambda x, y: _ktmul2(x, y, f, d), _ktadd_xor, r)
        cp = _berkowitz(r, N, lambda x, y: _ktmul2(x, y, f, d),
                        _ktadd_xor, lambda x: x, 1)
        return [[_unpack2(v, d) for v in coeff] for coeff in cp]
    f = list(f_digits)
    C = [[[_padded(c, d) for c in e] for e in row] for row in c_entries]
    N = [row[:] for row in C]
    Ct = C

    def mul(x, y):
        return _ktmulp(p, x, y, f, d)

    def add(x, y):
        if len(x) < len(y):
            x, y = y, x
        out = [list(c) for c in x]
        for i, c in enumerate(y):
            tgt = out[i]
            for m in range(d):
                tgt[m] = (tgt[m] + c[m]) % p
        while out and not any(out[-1]):
            out.pop()
        return out

    def neg(x):
        return [[(p - v) % p for v in c] for c in x]

    for _ in range(1, steps):
        Ct = [[[_powp(p, v, p, f, d) for v in e] for e in row] for row in Ct]
        N = _matmul(N, Ct, mul, add, r)
    one = [1] + [0] * (d - 1)
    cp = _berkowitz(r, N, mul, add, neg, one)
    return [[list(v) for v in coeff] for coeff in cp]


def _berkowitz(n, A, mul, add, neg, one_scalar):
    """Division-free characteristic polynomial of an n x n matrix with
    t-poly entries (lists of scalars, zero = []).  Returns det(X*I - A)
    coefficients low-to-high in X, length n+1, leading entry [one]."""
    one = [one_scalar]
    if n == 0:
        return [one]
    pvec = [one, neg(A[0][0])]
    for i in range(1, n):
        R = [A[i][m] for m in range(i)]
        S = [A[m][i] for m in range(i)]
        t = [one, neg(A[i][i])]
        w = S
        for k in range(i):
            q = []
            for m in range(i):
                q = add(q, mul(R[m], w[m]))
            t.append(neg(q))
            if k < i - 1:
                w = [_dotrow(A, m, i, w, mul, add) for m in range(i)]
        newp = []
        for m in range(i + 2):
            acc = []
            for nn in range(min(m, i) + 1):
                if m - nn < len(t):
                    acc = add(acc, mul(t[m - nn], pvec[nn]))
            newp.append(acc)
        pvec = newp
    return list(reversed(pvec))


def _dotrow(A, m, i, w, mul, add):
    acc = []
    for j in range(i):
        acc = add(acc, mul(A[m][j], w[j]))
    return acc


def _matmul(A, B, mul, add, r):
    out = []
    for i in range(r):
        row = []
        for j in range(r):
            acc = []
            for m in range(r):
                acc = add(acc, mul(A[i][m], B[m][j]))
            row.append(acc)
        out.append(row)
    return out


def _ktadd_xor(x, y):
    if len(x) < len(y):
        x, y = y, x
    out = list(x)
    for i, v in enumerate(y):
        out[i] ^= v
    while out and out[-1] == 0:
        out.pop()
    return out


def _unpack2(v, d):
    return [(v >> i) & 1 for i in range(d)]


def _padded(digits, d):
    out = list(digits) + [0] * (d - len(digits))
    return out[:d]
