"""Twisted polynomials and semilinear maps.

TauPoly is a left-normal-form twisted polynomial sum c_i tau^i over a
carrier ring S: the commutation rule is tau * s = sigma(s) * tau, where
sigma is the carrier's tau-twist (ring.frobq; on geometric carriers this
is the honest q-th power).  tau_apply evaluates the associated additive
(F_q-linear) polynomial x -> sum c_i x^(q^i).

SemilinearMap wraps a matrix C over a twisted carrier: v -> C * sigma(v).
frobenius_norm gives the matrix of the n-fold composite,
N_n = C * sigma(C) * ... * sigma^(n-1)(C), satisfying the cocycle law
N_(a+b) = N_a * sigma^a(N_b).
"""

from __future__ import annotations

from .matrix import RingMatrix


def _qpow(ring, x):
    if hasattr(ring, "qpow"):
        return ring.qpow(x)
    from .rings import _ring_q

    return ring.pow(x, _ring_q(ring))


class TauPoly:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        cs = list(coeffs)
        while cs and ring.is_zero(cs[-1]):
            cs.pop()
        self.ring = ring
        self.coeffs = cs

    @classmethod
    def zero(cls, ring):
        return cls(ring, [])

    @classmethod
    def const(cls, ring, c):
        return cls(ring, [c])

    @classmethod
    def tau(cls, ring):
        return cls(ring, [ring.zero, ring.one])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring.zero

    def __iter__(self):
        # explicit: the padded __getitem__ must not drive iteration
        return iter(self.coeffs)

    def _check(self, other):
        assert self.ring == other.ring, "carrier mismatch"

    def __add__(self, other):
        self._check(other)
        S = self.ring
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = S.add(out[i], c)
        return TauPoly(S, out)

    def __neg__(self):
        S = self.ring
        return TauPoly(S, [S.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Twisted product: (a tau^i)(b tau^j) = a sigma^i(b) tau^(i+j)."""
        self._check(other)
        S = self.ring
        if not self.coeffs or not other.coeffs:
            return TauPoly(S, [])
        out = [S.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if S.is_zero(a):
                continue
            b_tw = list(other.coeffs)
            for _ in range(i):
                b_tw = [S.frobq(c) for c in b_tw]
            for j, b in enumerate(b_tw):
                if not S.is_zero(b):
                    out[i + j] = S.add(out[i + j], S.mul(a, b))
        return TauPoly(S, out)

    def scale(self, c):
        S = self.ring
        return TauPoly(S, [S.mul(c, a) for a in self.coeffs])

    def __pow__(self, n: int):
        assert n >= 0
        r = TauPoly(self.ring, [self.ring.one])
        base = self
        while n:
            if n & 1:
                r = r * base
            base = base * base
            n >>= 1
        return r

    def __eq__(self, other):
        if not isinstance(other, TauPoly):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, tuple(self.coeffs)))

    def apply(self, x, module_ring=None):
        """Evaluate the additive polynomial: sum c_i x^(q^i).  The module
        ring defaults to the coefficient carrier; it must contain the
        coefficients (caller embeds them otherwise)."""
        M = module_ring or self.ring
        acc = M.zero
        xi = x
        for i, c in enumerate(self.coeffs):
            if not M.is_zero(c):
                acc = M.add(acc, M.mul(c, xi))
            if i < len(self.coeffs) - 1:
                xi = _qpow(M, xi)
        return acc

    def map_coeffs(self, target_ring, fn):
        return TauPoly(target_ring, [fn(c) for c in self.coeffs])

    def to_str(self) -> str:
        if not self.coeffs:
            return "0"
        S = self.ring
        parts = []
        for i, c in enumerate(self.coeffs):
            if S.is_zero(c):
                continue
            cs = S.to_str(c)
            if any(ch in cs for ch in "+-*^") and not (cs.startswith("(") and cs.endswith(")")):
                cs = f"({cs})"
            if i == 0:
                parts.append(cs)
            else:
                tp = "T" if i == 1 else f"T^{i}"
                parts.append(tp if cs == "1" else f"{cs}*{tp}")
        return " + ".join(parts)

    def __repr__(self):
        return self.to_str()


def tau_apply(f: TauPoly, x, module_ring=None):
    return f.apply(x, module_ring)


class SemilinearMap:
    """v -> C * sigma(v) for a matrix C over a twisted carrier."""

    __slots__ = ("ring", "matrix")

    def __init__(self, matrix: RingMatrix):
        self.matrix = matrix
        self.ring = matrix.ring

    def apply(self, vec):
        S = self.ring
        return self.matrix.apply([S.frobq(v) for v in vec])

    def compose(self, other: "SemilinearMap") -> "SemilinearMap":
        """self after other; both twist once, the composite twists twice and
        has matrix C_self * sigma(C_other)."""
        return SemilinearMap(self.matrix * other.matrix.twist())


def frobenius_norm(C: RingMatrix, steps: int) -> RingMatrix:
    """Matrix of the steps-fold composite of v -> C sigma(v):
    C * sigma(C) * ... * sigma^(steps-1)(C).  steps = 0 gives the identity."""
    assert steps >= 0
    if steps == 0:
        return RingMatrix.identity(C.ring, C.nrows)
    N = C.copy()
    Ct = C
    for _ in range(1, steps):
        Ct = Ct.twist()
        N = N * Ct
    return N
