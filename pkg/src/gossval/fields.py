"""Finite fields F_q, q = p^e <= 2^16, with packed integer element encoding.

An element of F_q is stored as a plain int in [0, q): the base-p digit
expansion of the int gives the coordinates in the power basis of the
generator g.  For prime fields (e = 1) the value is just the residue.
Field objects double as ring contexts: all arithmetic goes through
methods on the field, so containers (polynomials, series, matrices)
can hold raw ints.
"""

from __future__ import annotations


# Monic irreducible moduli over F_p for the small extension fields the
# library supports out of the box, as low-to-high digit tuples.
_MODULUS_TABLE = {
    4: (2, (1, 1, 1)),            # g^2 + g + 1
    8: (2, (1, 1, 0, 1)),         # g^3 + g + 1
    9: (3, (2, 2, 1)),            # g^2 + 2g + 2
    16: (2, (1, 1, 0, 0, 1)),     # g^4 + g + 1
    25: (5, (2, 4, 1)),           # g^2 + 4g + 2
    27: (3, (1, 2, 0, 1)),        # g^3 + 2g + 1
}

_MAX_Q = 1 << 16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _codes(p: int, digits) -> int:
    """Pack low-to-high base-p digits into an int."""
    v = 0
    for d in reversed(digits):
        v = v * p + d
    return v


def _digits(p: int, v: int, width: int):
    out = [0] * width
    for i in range(width):
        v, out[i] = divmod(v, p)
    return out


def _fp_poly_mulmod(p, a, b, mod):
    """Schoolbook product of digit lists over F_p, reduced mod a monic digit list."""
    e = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for i in range(len(prod) - 1, e - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(e):
                prod[i - e + j] = (prod[i - e + j] - c * mod[j]) % p
    out = prod[:e]
    while len(out) < e:
        out.append(0)
    return out


class Fq:
    """The finite field F_q with q = p^e, elements encoded as ints in [0, q).

    For e > 1 a monic irreducible modulus over F_p defines the arithmetic;
    the generator is written g.  Field objects compare equal when they have
    the same (p, e, modulus).
    """

    def __init__(self, q: int, modulus=None):
        p, e = _split_prime_power(q)
        if q > _MAX_Q:
            raise ValueError(f"field size {q} exceeds supported bound 2^16")
        self.p = p
        self.e = e
        self.q = q
        if e == 1:
            self.modulus = None
        else:
            if modulus is None:
                if q in _MODULUS_TABLE:
                    modulus = _MODULUS_TABLE[q][1]
                else:
                    modulus = _default_modulus(p, e)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree e")
            if not _fp_irreducible(p, modulus):
                raise ValueError("modulus is not irreducible over F_p")
            self.modulus = modulus
        self.zero = 0
        self.one = 1
        # q-power Frobenius is the identity on F_q itself.

    # -- ring context protocol -------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        v, mult = 0, 1
        while a or b:
            v += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return v

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        v, mult = 0, 1
        while a:
            v += ((-(a % p)) % p) * mult
            a //= p
            mult *= p
        return v

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        da = _digits(self.p, a, self.e)
        db = _digits(self.p, b, self.e)
        return _codes(self.p, _fp_poly_mulmod(self.p, da, db, self.modulus))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        r, base = 1, a
        while n:
            if n & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            n >>= 1
        return r

    def frobq(self, a: int) -> int:
        return a

    def is_zero(self, a: int) -> bool:
        return a == 0

    def is_unit(self, a: int) -> bool:
        return a != 0

    def from_int(self, n: int) -> int:
        return n % self.p

    def gen(self) -> int:
        """The power-basis generator g of F_q over F_p (e > 1 only)."""
        if self.e == 1:
            raise ValueError("prime field has no extension generator")
        return self.p

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def rand(self, rng) -> int:
        return rng.randrange(self.q)

    def rand_unit(self, rng) -> int:
        return rng.randrange(1, self.q)

    # -- formatting -------------------------------------------------------

    def to_str(self, a: int) -> str:
        if self.e == 1:
            return str(a)
        p = self.p
        terms = []
        for i in range(self.e - 1, -1, -1):
            c = (a // p**i) % p
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                gpart = "g" if i == 1 else f"g^{i}"
                terms.append(gpart if c == 1 else f"{c}*{gpart}")
        if not terms:
            return "0"
        return "+".join(terms)

    def coeff_str(self, a: int) -> str:
        """Render for use as a coefficient: extension values get parens."""
        if self.e == 1 or a < self.p:
            return self.to_str(a)
        return "(" + self.to_str(a) + ")"

    def __eq__(self, other):
        return (
            isinstance(other, Fq)
            and self.p == other.p
            and self.e == other.e
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash(("Fq", self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"Fq({self.q})"
        return f"Fq({self.q}, modulus={list(self.modulus)})"


class FqElem:
    """Thin operator wrapper over a packed field value.

    Containers keep raw ints for speed; this class is the convenience view
    used at API boundaries and in tests.
    """

    __slots__ = ("field", "val")

    def __init__(self, field: Fq, val: int):
        self.field = field
        self.val = val

    def _coerce(self, other) -> int:
        if isinstance(other, FqElem):
            assert self.field == other.field, "field mismatch"
            return other.val
        if isinstance(other, int):
            return other % self.field.p if other >= self.field.p or other < 0 else other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return FqElem(self.field, self.field.add(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return FqElem(self.field, self.field.sub(self.val, v))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.val))

    def __mul__(self, other):
        v = self._coerce(other)
        return FqElem(self.field, self.field.mul(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        return FqElem(self.field, self.field.mul(self.val, self.field.inv(v)))

    def __pow__(self, n: int):
        return FqElem(self.field, self.field.pow(self.val, n))

    def inverse(self):
        return FqElem(self.field, self.field.inv(self.val))

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field == other.field and self.val == other.val
        if isinstance(other, int):
            return self.val == other % self.field.p if other else self.val == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.val))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return self.field.to_str(self.val)


def _split_prime_power(q: int):
    if q < 2:
        raise ValueError("field size must be a prime power >= 2")
    for p in range(2, q + 1):
        if q % p == 0:
            if not _is_prime(p):
                raise ValueError(f"{q} is not a prime power")
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
    raise ValueError(f"{q} is not a prime power")


def _fp_irreducible(p, digits) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2 over F_p."""
    d = len(digits) - 1
    if d < 1 or digits[-1] != 1:
        return False
    if d == 1:
        return True
    for deg in range(1, d // 2 + 1):
        for packed in range(p**deg):
            div = _digits(p, packed, deg) + [1]
            if _fp_divides(p, div, digits):
                return False
    return True


def _fp_divides(p, div, target) -> bool:
    rem = list(target)
    dd = len(div) - 1
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            for j in range(dd + 1):
                rem[i - dd + j] = (rem[i - dd + j] - c * div[j]) % p
    return not any(rem[:dd])


def _default_modulus(p, e):
    """Deterministic modulus for q outside the built-in table: the monic
    irreducible of degree e over F_p with smallest packed value."""
    for packed in range(p**e):
        cand = tuple(_digits(p, packed, e)) + (1,)
        if _fp_irreducible(p, cand):
            return cand
    raise ValueError("no irreducible modulus found")  # unreachable
