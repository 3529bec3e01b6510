"""Ring contexts for the tensor carriers.

Containers hold raw values (ints, tuples); a ring object mediates all
arithmetic.  The protocol: attributes zero/one, methods add, neg, sub,
mul, is_zero, is_unit, from_int, to_str, rand, and where meaningful inv,
frobq (the tau-twist: q-power on the geometric side, identity on the
coefficient side) and qpow (the honest q-th ring power).

Carriers built here:
    Fq itself (fields.Fq satisfies the protocol, values are ints)
    ResidueField         k = F_q[x]/(f), values: tuples of packed ints
    PolyRing             S[var], values: trimmed tuples of S-values
    QuotPolyRing         S[var]/(m), S a field; covers the nilpotent
                         coefficient rings F_q[z]/(z^e), the tensor rings
                         Lambda (x) k = k[z]/(z^e), and the fields A/(p)
"""

from __future__ import annotations

from .fields import Fq
from .poly import Poly


def _trim(t):
    n = len(t)
    while n and not _nonzero(t[n - 1]):
        n -= 1
    return tuple(t[:n])


def _nonzero(v):
    return v != 0 and v != ()


class ResidueField:
    """k = F_q[x]/(f) for monic irreducible f; elements are trimmed tuples
    of packed F_q values (coordinates in the power basis of x-bar)."""

    def __init__(self, base: Fq, modulus: Poly):
        assert modulus.is_monic(), "modulus must be monic"
        self.base = base
        self.modulus = modulus
        self.deg = modulus.degree()
        self.size = base.q ** self.deg
        self.q = base.q  # q of the twist, not the field size
        self.zero = ()
        self.one = (1,)

    def gen(self):
        """Image of x (the theta of R = F_q[x]) in k."""
        if self.deg == 1:
            return _trim((self.base.neg(self.modulus.constant()),))
        return (0, 1)

    def from_base(self, c: int):
        return _trim((c,))

    def reduce_poly(self, f: Poly):
        """Image of f(x) in k."""
        r = f % self.modulus
        return _trim(tuple(r.coeffs))

    def add(self, a, b):
        F = self.base
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return _trim(out)

    def neg(self, a):
        F = self.base
        return tuple(F.neg(c) for c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        F = self.base
        d = self.deg
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        m = self.modulus.coeffs
        for i in range(len(out) - 1, d - 1, -1):
            c = out[i]
            if c:
                out[i] = 0
                for j in range(d):
                    out[i - d + j] = F.sub(out[i - d + j], F.mul(c, m[j]))
        return _trim(out[:d])

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        r, base = self.one, a
        while n:
            if n & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            n >>= 1
        return r

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in residue field")
        ap = Poly(self.base, list(a), self.modulus.var)
        g, s, _ = ap.xgcd(self.modulus)
        assert g.is_one(), "modulus not coprime to element"
        return self.reduce_poly(s)

    def frobq(self, a):
        return self.pow(a, self.q)

    def is_zero(self, a) -> bool:
        return not a

    def is_unit(self, a) -> bool:
        return bool(a)

    def from_int(self, n: int):
        return _trim((self.base.from_int(n),))

    def rand(self, rng):
        return _trim(tuple(self.base.rand(rng) for _ in range(self.deg)))

    def elements(self):
        qq = self.base.q
        for idx in range(self.size):
            cs = []
            v = idx
            for _ in range(self.deg):
                v, r = divmod(v, qq)
                cs.append(r)
            yield _trim(cs)

    # F_q-linear coordinates (scalars are base *prime-power* field values)
    def fq_dim(self) -> int:
        return self.deg

    def to_fq_vec(self, a):
        return list(a) + [0] * (self.deg - len(a))

    def from_fq_vec(self, vec):
        return _trim(tuple(vec[: self.deg]))

    def to_str(self, a) -> str:
        if not a:
            return "0"
        return Poly(self.base, list(a), "x").to_str()

    def __eq__(self, other):
        return (
            isinstance(other, ResidueField)
            and self.base == other.base
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash(("ResidueField", self.base, self.modulus))

    def __repr__(self):
        return f"ResidueField({self.base!r}, {self.modulus})"


class PolyRing:
    """S[var] for a coefficient ring context S; values are trimmed tuples.

    geometric=True marks the variable as living on the geometric side of
    the twist: frobq spreads exponents by q (and twists coefficients),
    which is the honest q-th power there.  geometric=False leaves the
    variable fixed and twists only the coefficients.
    """

    def __init__(self, coeff, var: str, geometric: bool = False):
        self.coeff = coeff
        self.var = var
        self.geometric = geometric
        self.zero = ()
        self.one = (coeff.one,)

    def gen(self):
        return (self.coeff.zero, self.coeff.one)

    def const(self, c):
        return _trim((c,))

    def monomial(self, c, k: int):
        return _trim((self.coeff.zero,) * k + (c,))

    def degree(self, a) -> int:
        return len(a) - 1

    def add(self, a, b):
        S = self.coeff
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = S.add(out[i], c)
        return _trim(out)

    def neg(self, a):
        S = self.coeff
        return tuple(S.neg(c) for c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        S = self.coeff
        out = [S.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not S.is_zero(ai):
                for j, bj in enumerate(b):
                    if not S.is_zero(bj):
                        out[i + j] = S.add(out[i + j], S.mul(ai, bj))
        return _trim(out)

    def smul(self, c, a):
        S = self.coeff
        return _trim(tuple(S.mul(c, x) for x in a))

    def pow(self, a, n: int):
        r, base = self.one, a
        while n:
            if n & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            n >>= 1
        return r

    def divmod(self, a, b):
        """Division with remainder; the divisor's leading coefficient must
        be a unit in the coefficient ring."""
        S = self.coeff
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        linv = S.inv(b[-1])
        rem = list(a)
        db = len(b) - 1
        qout = [S.zero] * max(0, len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if not S.is_zero(c):
                qc = S.mul(c, linv)
                qout[i - db] = qc
                for j, bc in enumerate(b):
                    rem[i - db + j] = S.sub(rem[i - db + j], S.mul(qc, bc))
        return _trim(qout), _trim(rem)

    def exact_div(self, a, b):
        q, r = self.divmod(a, b)
        assert not r, "inexact polynomial division"
        return q

    def frobq(self, a):
        S = self.coeff
        if not self.geometric:
            return _trim(tuple(S.frobq(c) for c in a))
        if not a:
            return ()
        q = _ring_q(S)
        out = [S.zero] * ((len(a) - 1) * q + 1)
        for i, c in enumerate(a):
            out[i * q] = S.frobq(c)
        return _trim(out)

    def qpow(self, a):
        """Honest q-th power of the value."""
        if self.geometric:
            return self.frobq(a)
        return self.pow(a, _ring_q(self.coeff))

    def is_zero(self, a) -> bool:
        return not a

    def is_unit(self, a) -> bool:
        return len(a) == 1 and self.coeff.is_unit(a[0])

    def inv(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError("non-unit in polynomial ring")
        return (self.coeff.inv(a[0]),)

    def from_int(self, n: int):
        return _trim((self.coeff.from_int(n),))

    def rand(self, rng, max_degree: int = 2):
        return _trim(tuple(self.coeff.rand(rng) for _ in range(rng.randrange(max_degree + 2))))

    def evaluate(self, a, x):
        S = self.coeff
        acc = S.zero
        for c in reversed(a):
            acc = S.add(S.mul(acc, x), c)
        return acc

    def map_coeffs(self, a, fn):
        return _trim(tuple(fn(c) for c in a))

    def to_str(self, a) -> str:
        if not a:
            return "0"
        parts = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if self.coeff.is_zero(c):
                continue
            cs = self.coeff.to_str(c)
            need_parens = any(ch in cs for ch in "+-*^") and not (cs.startswith("(") and cs.endswith(")"))
            if need_parens:
                cs = f"({cs})"
            if i == 0:
                parts.append(cs)
            else:
                vp = self.var if i == 1 else f"{self.var}^{i}"
                parts.append(vp if cs == "1" else f"{cs}*{vp}")
        return " + ".join(parts) if parts else "0"

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.coeff == other.coeff
            and self.var == other.var
            and self.geometric == other.geometric
        )

    def __hash__(self):
        return hash(("PolyRing", self.coeff, self.var, self.geometric))

    def __repr__(self):
        return f"PolyRing({self.coeff!r}, {self.var!r}{', geometric' if self.geometric else ''})"


class QuotPolyRing:
    """S[var]/(m) for a field context S and monic m; values are trimmed
    tuples of S-values of length < deg m.

    Covers F_q[z]/(z^e) (Lambda), k[z]/(z^e) (Lambda tensor k) and the
    residue fields A/(p).  The twist fixes var and acts on coefficients.
    """

    def __init__(self, coeff, var: str, modulus):
        self.coeff = coeff
        self.var = var
        self.modulus = tuple(modulus)  # S-values, low-to-high, monic
        self.e = len(self.modulus) - 1
        assert self.e >= 1 and coeff.is_unit(self.modulus[-1])
        self.is_truncation = all(coeff.is_zero(c) for c in self.modulus[:-1])
        self.zero = ()
        self.one = (coeff.one,)

    def gen(self):
        if self.e == 1:
            return _trim((self.coeff.neg(self.modulus[0]),))
        return (self.coeff.zero, self.coeff.one)

    def const(self, c):
        return _trim((c,))

    def add(self, a, b):
        S = self.coeff
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = S.add(out[i], c)
        return _trim(out)

    def neg(self, a):
        return tuple(self.coeff.neg(c) for c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        S = self.coeff
        e = self.e
        out = [S.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not S.is_zero(ai):
                if self.is_truncation and i >= e:
                    break
                for j, bj in enumerate(b):
                    if i + j < e or not self.is_truncation:
                        if not S.is_zero(bj):
                            out[i + j] = S.add(out[i + j], S.mul(ai, bj))
        if not self.is_truncation:
            m = self.modulus
            for i in range(len(out) - 1, e - 1, -1):
                c = out[i]
                if not S.is_zero(c):
                    out[i] = S.zero
                    for j in range(e):
                        out[i - e + j] = S.sub(out[i - e + j], S.mul(c, m[j]))
        return _trim(out[:e])

    def pow(self, a, n: int):
        r, base = self.one, a
        while n:
            if n & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            n >>= 1
        return r

    def is_zero(self, a) -> bool:
        return not a

    def is_unit(self, a) -> bool:
        if self.is_truncation:
            return bool(a) and self.coeff.is_unit(a[0])
        return bool(a)  # field case: modulus irreducible

    def inv(self, a):
        S = self.coeff
        if not self.is_unit(a):
            raise ZeroDivisionError("non-unit in quotient ring")
        if self.is_truncation:
            # power series inversion modulo var^e
            e = self.e
            a = list(a) + [S.zero] * (e - len(a))
            i0 = S.inv(a[0])
            out = [S.zero] * e
            out[0] = i0
            for k in range(1, e):
                s = S.zero
                for j in range(1, k + 1):
                    s = S.add(s, S.mul(a[j], out[k - j]))
                out[k] = S.neg(S.mul(i0, s))
            return _trim(out)
        # field case: extended euclid against the modulus
        r0, r1 = self.modulus, tuple(a)
        s0, s1 = (), (S.one,)
        ring = PolyRing(S, self.var)
        while r1:
            q, r = ring.divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, ring.sub(s0, ring.mul(q, s1))
        lead = S.inv(r0[-1])
        assert len(r0) == 1, "element not coprime to modulus"
        return _trim(tuple(S.mul(lead, c) for c in s0))[: self.e]

    def frobq(self, a):
        return _trim(tuple(self.coeff.frobq(c) for c in a))

    def qpow(self, a):
        return self.pow(a, _ring_q(self.coeff))

    def from_int(self, n: int):
        return _trim((self.coeff.from_int(n),))

    def rand(self, rng):
        return _trim(tuple(self.coeff.rand(rng) for _ in range(self.e)))

    def val(self, a) -> int:
        """z-valuation in a truncation ring: index of first nonzero coeff
        (e for zero)."""
        for i, c in enumerate(a):
            if not self.coeff.is_zero(c):
                return i
        return self.e

    def coeff_at(self, a, i: int):
        return a[i] if i < len(a) else self.coeff.zero

    def fq_dim(self) -> int:
        return self.e * _fq_dim(self.coeff)

    def to_fq_vec(self, a):
        out = []
        for i in range(self.e):
            c = a[i] if i < len(a) else self.coeff.zero
            out.extend(_to_fq_vec(self.coeff, c))
        return out

    def from_fq_vec(self, vec):
        d = _fq_dim(self.coeff)
        out = []
        for i in range(self.e):
            out.append(_from_fq_vec(self.coeff, vec[i * d : (i + 1) * d]))
        return _trim(out)

    def to_str(self, a) -> str:
        return PolyRing(self.coeff, self.var).to_str(a)

    def __eq__(self, other):
        return (
            isinstance(other, QuotPolyRing)
            and self.coeff == other.coeff
            and self.var == other.var
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash(("QuotPolyRing", self.coeff, self.var, self.modulus))

    def __repr__(self):
        return f"QuotPolyRing({self.coeff!r}, {self.var!r}, e={self.e})"


# -- helpers over arbitrary contexts ----------------------------------------

def _ring_q(S) -> int:
    if isinstance(S, Fq):
        return S.q
    if isinstance(S, ResidueField):
        return S.base.q
    if isinstance(S, (PolyRing, QuotPolyRing)):
        return _ring_q(S.coeff)
    raise TypeError(f"no q for {S!r}")


def _fq_dim(S) -> int:
    if isinstance(S, Fq):
        return 1
    return S.fq_dim()


def _to_fq_vec(S, v):
    if isinstance(S, Fq):
        return [v]
    return S.to_fq_vec(v)


def _from_fq_vec(S, vec):
    if isinstance(S, Fq):
        return vec[0]
    return S.from_fq_vec(vec)


def base_fq(S) -> Fq:
    if isinstance(S, Fq):
        return S
    if isinstance(S, ResidueField):
        return S.base
    return base_fq(S.coeff)


# -- standard constructions --------------------------------------------------

def lambda_ring(field: Fq, e: int) -> QuotPolyRing:
    """Lambda = F_q[z]/(z^e)."""
    mod = (field.zero,) * e + (field.one,)
    return QuotPolyRing(field, "z", mod)


def lambda_tensor(lam: QuotPolyRing, k) -> QuotPolyRing:
    """Lambda tensor_F_q k = k[z]/(z^e), twist acting on k."""
    mod = (k.zero,) * lam.e + (k.one,)
    return QuotPolyRing(k, "z", mod)


def lift_lambda(lam: QuotPolyRing, lamk: QuotPolyRing, v):
    """Embed a Lambda value into Lambda tensor k."""
    return _trim(tuple(lamk.coeff.from_base(c) if hasattr(lamk.coeff, "from_base") else c for c in v))


def quotient_field(modulus: Poly) -> QuotPolyRing:
    """A/(p) for irreducible monic p in F_q[t]."""
    return QuotPolyRing(modulus.field, modulus.var, tuple(modulus.coeffs))


def poly_to_value(ring: PolyRing, f: Poly):
    """Bridge a concrete Poly over Fq into a PolyRing-over-Fq value."""
    assert isinstance(ring.coeff, Fq) and ring.coeff == f.field
    return _trim(tuple(f.coeffs))


def value_to_poly(ring, v, field: Fq, var: str) -> Poly:
    assert isinstance(ring.coeff, Fq)
    return Poly(field, list(v), var)
