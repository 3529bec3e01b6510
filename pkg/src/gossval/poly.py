"""Dense univariate polynomials over F_q.

Coefficients are stored low-to-high as packed field values (plain ints),
with no trailing zeros; the zero polynomial has an empty list.  The
variable tag is bookkeeping only: "t" for the operator side A = F_q[t],
"x" for the scalar side R = F_q[x] (x plays the role usually written
theta), "z" for nilpotent coefficient rings, "X" for characteristic
polynomials.
"""

from __future__ import annotations

from . import kernels
from .fields import Fq
from .parsing import parse_univariate

ALLOWED_VARS = ("t", "x", "z", "X", "T", "y", "g", "w")


def _trim(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return list(coeffs[:n])


class Poly:
    __slots__ = ("field", "var", "coeffs")

    def __init__(self, field: Fq, coeffs, var: str = "t"):
        self.field = field
        self.var = var
        self.coeffs = _trim([c % field.p if isinstance(c, int) and (c >= field.q or c < 0) else c for c in coeffs])

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field, var="t"):
        return cls(field, [], var)

    @classmethod
    def one(cls, field, var="t"):
        return cls(field, [1], var)

    @classmethod
    def gen(cls, field, var="t"):
        return cls(field, [0, 1], var)

    @classmethod
    def const(cls, field, c, var="t"):
        return cls(field, [c], var)

    @classmethod
    def parse(cls, field, text, var="t"):
        return cls(field, parse_univariate(text, field, var), var)

    # -- basic queries -----------------------------------------------------

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == [1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self) -> int:
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __iter__(self):
        # explicit: the padded __getitem__ must not drive iteration
        return iter(self.coeffs)

    def _check(self, other):
        assert self.field == other.field, "field mismatch"
        assert self.var == other.var, f"variable mismatch: {self.var} vs {other.var}"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.field, self.field.from_int(other), self.var)
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out, self.var)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs], self.var)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.field, self.field.from_int(other), self.var)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(self.field.from_int(other))
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(F, self.var)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return Poly(F, out, self.var)

    __rmul__ = __mul__

    def scale(self, c: int):
        F = self.field
        return Poly(F, [F.mul(c, a) for a in self.coeffs], self.var)

    def shift(self, k: int):
        """Multiply by var^k (k >= 0)."""
        if self.is_zero():
            return self
        return Poly(self.field, [0] * k + self.coeffs, self.var)

    def __divmod__(self, other):
        self._check(other)
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead_inv = F.inv(other.leading())
        rem = list(self.coeffs)
        db = other.degree()
        qout = [0] * max(0, len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                qc = F.mul(c, lead_inv)
                qout[i - db] = qc
                for j, bc in enumerate(other.coeffs):
                    rem[i - db + j] = F.sub(rem[i - db + j], F.mul(qc, bc))
        return Poly(F, qout, self.var), Poly(F, rem, self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        r = Poly.one(self.field, self.var)
        base = self
        while n:
            if n & 1:
                r = r * base
            base = base * base
            n >>= 1
        return r

    def mulmod(self, other, mod):
        return (self * other) % mod

    def powmod(self, n: int, mod):
        r = Poly.one(self.field, self.var)
        base = self % mod
        while n:
            if n & 1:
                r = r.mulmod(base, mod)
            base = base.mulmod(base, mod)
            n >>= 1
        return r

    def monic(self):
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(self.field.inv(self.leading()))

    def evaluate(self, x: int) -> int:
        """Horner evaluation at a packed field value."""
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def qpow(self):
        """q-power Frobenius: coefficients are F_q-fixed, exponents spread by q."""
        if self.is_zero():
            return self
        q = self.field.q
        out = [0] * (self.degree() * q + 1)
        for i, c in enumerate(self.coeffs):
            out[i * q] = c
        return Poly(self.field, out, self.var)

    def derivative(self):
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(F.mul(F.from_int(i), self.coeffs[i]))
        return Poly(F, out, self.var)

    def rename(self, var: str):
        return Poly(self.field, self.coeffs, var)

    # -- gcd ---------------------------------------------------------------

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """Return (g, s, t) with s*self + t*other = g, g monic (or zero)."""
        F = self.field
        var = self.var
        r0, r1 = self, other
        s0, s1 = Poly.one(F, var), Poly.zero(F, var)
        t0, t1 = Poly.zero(F, var), Poly.one(F, var)
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        c = F.inv(r0.leading())
        return r0.scale(c), s0.scale(c), t0.scale(c)

    # -- irreducibility and enumeration -------------------------------------

    def is_irreducible(self) -> bool:
        """Rabin test: x^(q^d) = x mod f and gcd(x^(q^(d/l)) - x, f) = 1 for
        every prime l dividing d."""
        d = self.degree()
        if d <= 0:
            return False
        if d == 1:
            return True
        F = self.field
        q = F.q
        x = Poly.gen(F, self.var)
        f = self.monic()
        # x^(q^m) mod f, built incrementally by q-power steps
        qpowers = {}
        cur = x % f
        for m in range(1, d + 1):
            cur = cur.powmod(q, f)
            qpowers[m] = cur
        if qpowers[d] != x % f:
            return False
        for ell in _prime_divisors(d):
            g = (qpowers[d // ell] - x).gcd(f)
            if g.degree() != 0:
                return False
        return True

    # -- formatting --------------------------------------------------------

    def to_str(self) -> str:
        if not self.coeffs:
            return "0"
        F = self.field
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = F.coeff_str(c)
            if i == 0:
                parts.append(cs)
            else:
                vp = self.var if i == 1 else f"{self.var}^{i}"
                parts.append(vp if c == 1 else f"{cs}*{vp}")
        return "+".join(parts)

    def __repr__(self):
        return self.to_str()

    def __eq__(self, other):
        if isinstance(other, Poly):
            return (
                self.field == other.field
                and self.var == other.var
                and self.coeffs == other.coeffs
            )
        if isinstance(other, int):
            if other == 0:
                return self.is_zero()
            return self.degree() == 0 and self.coeffs[0] == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.var, tuple(self.coeffs)))

    def __bool__(self):
        return bool(self.coeffs)


def _prime_divisors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def monic_irreducibles(field: Fq, max_degree: int, var: str = "t"):
    """All monic irreducibles of degree 1..max_degree, grouped by degree,
    ordered within a degree by ascending packed coefficient value
    (constant term varying fastest).  Returns {degree: [Poly, ...]}."""
    if max_degree < 1:
        return {}
    if field.e == 1:
        raw = kernels.backend().monic_irreducibles(field.p, max_degree)
        out = {d: [] for d in range(1, max_degree + 1)}
        for digits in raw:
            out[len(digits) - 1].append(Poly(field, digits, var))
        return out
    return _sieve_generic(field, max_degree, var)


def _sieve_generic(field: Fq, max_degree: int, var: str):
    """Multiplication sieve over F_q: mark every monic composite as an
    (irreducible) * (monic) product, degree by degree."""
    q = field.q
    composite = {d: bytearray(q**d) for d in range(1, max_degree + 1)}

    def unpack(idx, deg):
        cs = []
        for _ in range(deg):
            idx, r = divmod(idx, q)
            cs.append(r)
        cs.append(1)
        return cs

    def pack(coeffs, deg):
        v = 0
        for i in range(deg - 1, -1, -1):
            v = v * q + coeffs[i]
        return v

    out = {}
    irreducibles = []  # (degree, coeff list) found so far
    for d in range(1, max_degree + 1):
        found = []
        for idx in range(q**d):
            if not composite[d][idx]:
                found.append(unpack(idx, d))
        out[d] = [Poly(field, cs, var) for cs in found]
        for cs in found:
            irreducibles.append((d, cs))
        # mark products (new irreducible of degree d) * (monic of degree b)
        for a, g in irreducibles:
            if a != d:
                continue
            gp = Poly(field, g, var)
            for b in range(1, max_degree - a + 1):
                for hidx in range(q**b):
                    h = Poly(field, unpack(hidx, b), var)
                    prod = gp * h
                    pd = prod.degree()
                    composite[pd][pack(prod.coeffs, pd)] = 1
        # also mark composites divisible by squares of lower-degree primes:
        # those were already covered since h ranges over all monics.
    return out


def first_irreducible(field: Fq, degree: int, var: str = "x") -> Poly:
    """The monic irreducible of the given degree with smallest packed
    coefficient value.  Scans candidates; density ~1/degree, so this stays
    cheap even when enumerating all irreducibles would not."""
    assert degree >= 1
    q = field.q
    for idx in range(q**degree):
        cs = []
        v = idx
        for _ in range(degree):
            v, r = divmod(v, q)
            cs.append(r)
        cs.append(1)
        f = Poly(field, cs, var)
        if f.is_irreducible():
            return f
    raise ValueError("no irreducible found")  # unreachable for degree >= 1


def is_irreducible_trial_division(f: Poly) -> bool:
    """Independent oracle: trial division by every monic polynomial of
    degree <= deg(f)/2.  Exponential; for tests on small inputs only."""
    d = f.degree()
    if d <= 0:
        return False
    if d == 1:
        return True
    F = f.field
    q = F.q
    for b in range(1, d // 2 + 1):
        for idx in range(q**b):
            cs = []
            v = idx
            for _ in range(b):
                v, r = divmod(v, q)
                cs.append(r)
            cs.append(1)
            g = Poly(F, cs, f.var)
            if (f % g).is_zero():
                return False
    return True
