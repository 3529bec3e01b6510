# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Compiled kernel backend.

Same boundary contract as reference.py: digit lists in, digit lists
out, identical ordering.  Internally every residue-field scalar is a
single machine word (bit-packed for p = 2, base-p packed otherwise);
shapes that do not fit a 64-bit word delegate to the reference code.
"""

from libc.stdint cimport uint64_t

BACKEND_NAME = "cython"

cdef enum:
    MAXDIG = 64


cdef object _reference():
    from gossval.kernels import reference
    return reference


# ---------------------------------------------------------------------------
# scalar context: k = F_p[y]/(f), deg f = d
# ---------------------------------------------------------------------------

cdef class _Ctx:
    cdef long long p
    cdef int d
    cdef uint64_t f2          # packed modulus bits, p = 2 only
    cdef long long fd[MAXDIG]  # modulus digits, odd p only


cdef _Ctx _make_ctx(long long p, f_digits):
    cdef _Ctx c = _Ctx()
    cdef int i
    c.p = p
    c.d = len(f_digits) - 1
    if p == 2:
        c.f2 = 0
        for i in range(c.d + 1):
            if f_digits[i]:
                c.f2 |= (<uint64_t>1) << i
    else:
        for i in range(c.d + 1):
            c.fd[i] = f_digits[i] % p
    return c


cdef int _fits(p, int d):
    if d < 1 or d >= MAXDIG:
        return 0
    if p == 2:
        return d <= 32
    if p > 32749:
        return 0
    return p ** d <= (1 << 47)


cdef inline int _bitlen(uint64_t v):
    cdef int n = 0
    while v:
        n += 1
        v >>= 1
    return n


cdef inline uint64_t _mulmod2(uint64_t a, uint64_t b, uint64_t f, int d):
    cdef uint64_t r = 0
    cdef int rl
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    rl = _bitlen(r)
    while rl > d:
        r ^= f << (rl - 1 - d)
        rl = _bitlen(r)
    return r


cdef uint64_t _mulmodp(_Ctx c, uint64_t a, uint64_t b):
    cdef long long acc[2 * MAXDIG]
    cdef long long ad[MAXDIG]
    cdef long long bd[MAXDIG]
    cdef uint64_t up = <uint64_t>c.p
    cdef uint64_t out, mult
    cdef long long cc, v
    cdef int i, j, d = c.d
    for i in range(d):
        ad[i] = <long long>(a % up)
        a //= up
        bd[i] = <long long>(b % up)
        b //= up
    for i in range(2 * d - 1):
        acc[i] = 0
    for i in range(d):
        if ad[i]:
            for j in range(d):
                acc[i + j] += ad[i] * bd[j]
    for i in range(2 * d - 2, d - 1, -1):
        cc = acc[i] % c.p
        if cc:
            for j in range(d):
                acc[i - d + j] -= cc * c.fd[j]
        acc[i] = 0
    out = 0
    mult = 1
    for i in range(d):
        v = acc[i] % c.p
        if v < 0:
            v += c.p
        out += <uint64_t>v * mult
        mult *= up
    return out


cdef inline uint64_t _smul(_Ctx c, uint64_t a, uint64_t b):
    if c.p == 2:
        return _mulmod2(a, b, c.f2, c.d)
    return _mulmodp(c, a, b)


cdef uint64_t _sadd(_Ctx c, uint64_t a, uint64_t b):
    cdef uint64_t up, out, mult
    cdef long long s
    cdef int i
    if c.p == 2:
        return a ^ b
    up = <uint64_t>c.p
    out = 0
    mult = 1
    for i in range(c.d):
        s = <long long>(a % up) + <long long>(b % up)
        a //= up
        b //= up
        if s >= c.p:
            s -= c.p
        out += <uint64_t>s * mult
        mult *= up
    return out


cdef uint64_t _sneg(_Ctx c, uint64_t a):
    cdef uint64_t up, out, mult
    cdef long long v
    cdef int i
    if c.p == 2:
        return a
    up = <uint64_t>c.p
    out = 0
    mult = 1
    for i in range(c.d):
        v = <long long>(a % up)
        a //= up
        if v:
            v = c.p - v
        out += <uint64_t>v * mult
        mult *= up
    return out


cdef uint64_t _sfrob(_Ctx c, uint64_t a):
    """a^p, the Frobenius on k."""
    cdef uint64_t r = 1
    cdef uint64_t base = a
    cdef long long n
    if c.p == 2:
        return _smul(c, a, a)
    n = c.p
    while n:
        if n & 1:
            r = _smul(c, r, base)
        base = _smul(c, base, base)
        n >>= 1
    return r


# ---------------------------------------------------------------------------
# k[t] polynomials: Python lists of packed scalars, no trailing zeros
# ---------------------------------------------------------------------------

cdef list _pmul(_Ctx c, list a, list b):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j
    cdef uint64_t ai, bj
    if la == 0 or lb == 0:
        return []
    cdef list out = [0] * (la + lb - 1)
    for i in range(la):
        ai = a[i]
        if ai:
            for j in range(lb):
                bj = b[j]
                if bj:
                    out[i + j] = _sadd(c, <uint64_t>out[i + j],
                                       _smul(c, ai, bj))
    while out and <uint64_t>out[len(out) - 1] == 0:
        del out[len(out) - 1]
    return out


cdef list _padd(_Ctx c, list a, list b):
    cdef Py_ssize_t la = len(a), lb = len(b), i
    if la < lb:
        a, b = b, a
        la, lb = lb, la
    cdef list out = list(a)
    for i in range(lb):
        out[i] = _sadd(c, <uint64_t>out[i], <uint64_t>b[i])
    while out and <uint64_t>out[len(out) - 1] == 0:
        del out[len(out) - 1]
    return out


cdef list _pneg(_Ctx c, list a):
    cdef Py_ssize_t i
    cdef list out = list(a)
    for i in range(len(out)):
        out[i] = _sneg(c, <uint64_t>out[i])
    return out


cdef list _matmul(_Ctx c, list A, list B, Py_ssize_t r):
    cdef Py_ssize_t i, j, m
    cdef list out = [], row, acc
    for i in range(r):
        row = []
        for j in range(r):
            acc = []
            for m in range(r):
                acc = _padd(c, acc, _pmul(c, <list>(<list>A[i])[m],
                                          <list>(<list>B[m])[j]))
            row.append(acc)
        out.append(row)
    return out


cdef list _twist(_Ctx c, list M, Py_ssize_t r):
    cdef Py_ssize_t i, j
    cdef list out = [], row, ent
    for i in range(r):
        row = []
        for j in range(r):
            ent = <list>(<list>M[i])[j]
            row.append([_sfrob(c, <uint64_t>v) for v in ent])
        out.append(row)
    return out


cdef list _norm_matrix(_Ctx c, list C, Py_ssize_t r, long long steps):
    cdef list N = [list(row) for row in C]
    cdef list Ct = C
    cdef long long s
    for s in range(1, steps):
        Ct = _twist(c, Ct, r)
        N = _matmul(c, N, Ct, r)
    return N


cdef list _berkowitz(_Ctx c, Py_ssize_t n, list A):
    """det(X*I - A) coefficients low-to-high in X, length n+1."""
    cdef list one = [1]
    cdef Py_ssize_t i, k, m, nn
    cdef list pvec, R, S, t, w, q, newp, acc
    if n == 0:
        return [one]
    pvec = [one, _pneg(c, <list>(<list>A[0])[0])]
    for i in range(1, n):
        R = [(<list>A[i])[m] for m in range(i)]
        S = [(<list>A[m])[i] for m in range(i)]
        t = [one, _pneg(c, <list>(<list>A[i])[i])]
        w = S
        for k in range(i):
            q = []
            for m in range(i):
                q = _padd(c, q, _pmul(c, <list>R[m], <list>w[m]))
            t.append(_pneg(c, q))
            if k < i - 1:
                w = [_dotrow(c, A, m, i, w) for m in range(i)]
        newp = []
        for m in range(i + 2):
            acc = []
            for nn in range(min(m, i) + 1):
                if m - nn < len(t):
                    acc = _padd(c, acc, _pmul(c, <list>t[m - nn],
                                              <list>pvec[nn]))
            newp.append(acc)
        pvec = newp
    pvec.reverse()
    return pvec


cdef list _dotrow(_Ctx c, list A, Py_ssize_t m, Py_ssize_t i, list w):
    cdef list acc = []
    cdef Py_ssize_t j
    for j in range(i):
        acc = _padd(c, acc, _pmul(c, <list>(<list>A[m])[j], <list>w[j]))
    return acc


# ---------------------------------------------------------------------------
# boundary conversion
# ---------------------------------------------------------------------------

cdef uint64_t _pack(_Ctx c, digits) except *:
    cdef uint64_t v = 0, mult = 1
    cdef uint64_t up
    cdef Py_ssize_t i, n = len(digits)
    if c.p == 2:
        for i in range(n):
            if digits[i]:
                v |= (<uint64_t>1) << i
        return v
    up = <uint64_t>c.p
    for i in range(n):
        v += (<uint64_t>(digits[i] % c.p)) * mult
        mult *= up
    return v


cdef list _unpack(_Ctx c, uint64_t v):
    cdef uint64_t up = <uint64_t>c.p
    cdef list out = []
    cdef int i
    for i in range(c.d):
        out.append(<long long>(v % up))
        v //= up
    return out


cdef list _pack_poly(_Ctx c, coeffs):
    return [_pack(c, dig) for dig in coeffs]


cdef list _unpack_poly(_Ctx c, list coeffs):
    return [_unpack(c, <uint64_t>v) for v in coeffs]


# ---------------------------------------------------------------------------
# monic irreducible enumeration (multiplication sieve)
# ---------------------------------------------------------------------------

def monic_irreducibles(p, max_degree):
    """All monic irreducibles over F_p of degree 1..max_degree as digit
    lists (low-to-high, leading 1 included), ordered by degree then by
    ascending packed value of the non-leading digits."""
    if max_degree < 1:
        return []
    if p == 2:
        if max_degree > 26:
            return _reference().monic_irreducibles(p, max_degree)
        return _sieve_p2(max_degree)
    if p > 32749 or p ** max_degree > (1 << 26):
        return _reference().monic_irreducibles(p, max_degree)
    return _sieve_odd(p, max_degree)


def _sieve_p2(int max_degree):
    comp = [None] + [bytearray(1 << dd) for dd in range(1, max_degree + 1)]
    cdef list out = []
    cdef list found
    cdef int d, b
    cdef Py_ssize_t idx, hidx, hl
    cdef uint64_t lead, g, h, r, a, bb, top
    cdef unsigned char[::1] row, crow
    for d in range(1, max_degree + 1):
        lead = (<uint64_t>1) << d
        row = comp[d]
        found = []
        for idx in range(<Py_ssize_t>lead):
            if not row[idx]:
                found.append(lead | <uint64_t>idx)
        for gobj in found:
            g = <uint64_t>gobj
            out.append(gobj)
            for b in range(1, max_degree - d + 1):
                hl = (<Py_ssize_t>1) << b
                top = (<uint64_t>1) << (d + b)
                crow = comp[d + b]
                for hidx in range(hl):
                    h = (<uint64_t>hl) | <uint64_t>hidx
                    r = 0
                    a = g
                    bb = h
                    while bb:
                        if bb & 1:
                            r ^= a
                        a <<= 1
                        bb >>= 1
                    crow[r ^ top] = 1
    return [[(v >> i) & 1 for i in range(v.bit_length())] for v in out]


def _sieve_odd(long long p, int max_degree):
    cdef list powers = [1]
    for _ in range(max_degree):
        powers.append(powers[len(powers) - 1] * int(p))
    comp = [None] + [bytearray(powers[dd]) for dd in range(1, max_degree + 1)]
    cdef list out = []
    cdef list found
    cdef long long gdig[MAXDIG]
    cdef long long hdig[MAXDIG]
    cdef long long prod[2 * MAXDIG]
    cdef int d, b, i, j
    cdef Py_ssize_t size, gidx, hidx, hsize
    cdef long long idx, v
    cdef unsigned char[::1] row, crow
    for d in range(1, max_degree + 1):
        size = powers[d]
        row = comp[d]
        found = []
        for gidx in range(size):
            if not row[gidx]:
                found.append(gidx)
        for gobj in found:
            v = <long long>gobj
            for i in range(d):
                gdig[i] = v % p
                v //= p
            gdig[d] = 1
            out.append([gdig[i] for i in range(d + 1)])
            for b in range(1, max_degree - d + 1):
                crow = comp[d + b]
                hsize = powers[b]
                for hidx in range(hsize):
                    v = <long long>hidx
                    for i in range(b):
                        hdig[i] = v % p
                        v //= p
                    hdig[b] = 1
                    for i in range(d + b + 1):
                        prod[i] = 0
                    for i in range(d + 1):
                        if gdig[i]:
                            for j in range(b + 1):
                                prod[i + j] += gdig[i] * hdig[j]
                    idx = 0
                    for i in range(d + b - 1, -1, -1):
                        idx = idx * p + prod[i] % p
                    crow[idx] = 1
    return out


# ---------------------------------------------------------------------------
# public k[t] operations
# ---------------------------------------------------------------------------

def kt_mul(p, f_digits, a, b):
    """Product in k[t], k = F_p[y]/(f).  a, b: lists of t-coefficients,
    each a base-p digit list of length <= deg f."""
    cdef int d = len(f_digits) - 1
    if not _fits(p, d):
        return _reference().kt_mul(p, f_digits, a, b)
    cdef _Ctx c = _make_ctx(p, f_digits)
    return _unpack_poly(c, _pmul(c, _pack_poly(c, a), _pack_poly(c, b)))


def kt_norm(p, f_digits, c_entries, steps):
    """Twisted norm product N = C * C^sigma * ... * C^(sigma^(steps-1)) of
    an r x r matrix over k[t], sigma the p-power Frobenius on k."""
    cdef int d = len(f_digits) - 1
    if not _fits(p, d):
        return _reference().kt_norm(p, f_digits, c_entries, steps)
    cdef _Ctx c = _make_ctx(p, f_digits)
    cdef Py_ssize_t r = len(c_entries)
    cdef list C = [[_pack_poly(c, e) for e in row] for row in c_entries]
    cdef list N = _norm_matrix(c, C, r, steps)
    return [[_unpack_poly(c, e) for e in row] for row in N]


def kt_local_charpoly(p, f_digits, c_entries, steps):
    """Characteristic polynomial det(X*I - N) of the twisted norm
    N = C * C^sigma * ... * C^(sigma^(steps-1)), computed entirely in the
    packed k[t] representation.  Returns the X-coefficients low-to-high
    (length r+1, monic), each a list of t-coefficient digit lists."""
    cdef int d = len(f_digits) - 1
    if not _fits(p, d):
        return _reference().kt_local_charpoly(p, f_digits, c_entries, steps)
    cdef _Ctx c = _make_ctx(p, f_digits)
    cdef Py_ssize_t r = len(c_entries)
    cdef list C = [[_pack_poly(c, e) for e in row] for row in c_entries]
    cdef list N = _norm_matrix(c, C, r, steps)
    cdef list cp = _berkowitz(c, r, N)
    return [_unpack_poly(c, coeff) for coeff in cp]
