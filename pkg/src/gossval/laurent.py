"""Laurent series at the infinite place: F_q((u)) with u = 1/t (or 1/x).

A series carries an absolute precision N: it is known modulo u^N.  The
stored data is (valuation, coefficients); a series whose known part is
zero keeps an empty coefficient list and, by convention, valuation = N.
Precision propagation follows the ultrametric rules: min for addition,
min(N_a + v_b, N_b + v_a) for multiplication; inversion needs an exactly
known nonzero leading coefficient and costs 2*valuation of absolute
precision.
"""

from __future__ import annotations

from .fields import Fq
from .poly import Poly


class PrecisionError(ArithmeticError):
    """An operation would report no reliable coefficients, or a needed
    coefficient lies at or beyond the tracked precision."""


class LaurentSeries:
    __slots__ = ("field", "var", "valuation", "coeffs", "precision")

    def __init__(self, field: Fq, valuation: int, coeffs, precision: int, var: str = "t"):
        self.field = field
        self.var = var
        coeffs = list(coeffs)
        # drop coefficients at or beyond the precision
        if valuation + len(coeffs) > precision:
            coeffs = coeffs[: max(0, precision - valuation)]
        # normalize: leading coefficient nonzero
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            valuation += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            valuation = precision
        self.valuation = valuation
        self.coeffs = coeffs
        self.precision = precision

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field, precision, var="t"):
        return cls(field, precision, [], precision, var)

    @classmethod
    def one(cls, field, precision, var="t"):
        return cls(field, 0, [1], precision, var)

    @classmethod
    def from_poly(cls, f: Poly, precision: int, var=None):
        """Embed a polynomial in t as a series in u = 1/t: t^i -> u^(-i).
        The polynomial is exact; the caller fixes the reported precision."""
        var = var or f.var
        d = f.degree()
        if d < 0:
            return cls.zero(f.field, precision, var)
        return cls(f.field, -d, list(reversed(f.coeffs)), precision, var)

    @classmethod
    def monomial(cls, field, k: int, precision: int, var="t", coeff: int = 1):
        return cls(field, k, [coeff], precision, var)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        """Known part is zero (i.e. the series is 0 modulo u^precision)."""
        return not self.coeffs

    def coefficient(self, k: int) -> int:
        """Coefficient of u^k; raises if k is at or beyond the precision."""
        if k >= self.precision:
            raise PrecisionError(f"coefficient u^{k} beyond precision {self.precision}")
        i = k - self.valuation
        if i < 0 or i >= len(self.coeffs):
            return 0
        return self.coeffs[i]

    def known_length(self) -> int:
        return self.precision - self.valuation

    def _check(self, other):
        assert self.field == other.field, "field mismatch"
        assert self.var == other.var, "variable mismatch"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentSeries(self.field, 0, [self.field.from_int(other)], self.precision, self.var)
        self._check(other)
        F = self.field
        prec = min(self.precision, other.precision)
        lo = min(self.valuation, other.valuation, prec)
        out = [0] * (prec - lo)
        for i, c in enumerate(self.coeffs):
            k = self.valuation + i
            if k < prec:
                out[k - lo] = c
        for i, c in enumerate(other.coeffs):
            k = other.valuation + i
            if k < prec:
                out[k - lo] = F.add(out[k - lo], c)
        return LaurentSeries(F, lo, out, prec, self.var)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return LaurentSeries(F, self.valuation, [F.neg(c) for c in self.coeffs], self.precision, self.var)

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentSeries(self.field, 0, [self.field.from_int(other)], self.precision, self.var)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            c = self.field.from_int(other)
            return self.scale(c)
        self._check(other)
        F = self.field
        prec = min(self.precision + other.valuation, other.precision + self.valuation)
        v = self.valuation + other.valuation
        if not self.coeffs or not other.coeffs:
            return LaurentSeries(F, prec, [], prec, self.var)
        n = prec - v
        if n <= 0:
            # product provably 0 modulo u^prec; no coefficient window remains
            return LaurentSeries(F, prec, [], prec, self.var)
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a and i < n:
                jmax = min(len(other.coeffs), n - i)
                for j in range(jmax):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return LaurentSeries(F, v, out, prec, self.var)

    __rmul__ = __mul__

    def scale(self, c: int):
        F = self.field
        if c == 0:
            return LaurentSeries(F, self.precision, [], self.precision, self.var)
        return LaurentSeries(F, self.valuation, [F.mul(c, a) for a in self.coeffs], self.precision, self.var)

    def inverse(self):
        if not self.coeffs:
            raise PrecisionError(
                "inverse needs an exactly known nonzero leading coefficient; "
                f"series is 0 + O(u^{self.precision})"
            )
        F = self.field
        v = self.valuation
        n = self.precision - v  # relative precision, preserved by inversion
        a = self.coeffs + [0] * (n - len(self.coeffs))
        inv0 = F.inv(a[0])
        out = [0] * n
        out[0] = inv0
        for k in range(1, n):
            s = 0
            for j in range(1, k + 1):
                if a[j] and out[k - j]:
                    s = F.add(s, F.mul(a[j], out[k - j]))
            out[k] = F.neg(F.mul(inv0, s))
        return LaurentSeries(F, -v, out, n - v, self.var)

    def __truediv__(self, other):
        if isinstance(other, int):
            return self.scale(self.field.inv(self.field.from_int(other)))
        return self * other.inverse()

    def shift(self, k: int):
        """Multiply by u^k."""
        return LaurentSeries(self.field, self.valuation + k, self.coeffs, self.precision + k, self.var)

    def truncate(self, precision: int):
        if precision > self.precision:
            raise PrecisionError(f"cannot raise precision {self.precision} -> {precision}")
        return LaurentSeries(self.field, self.valuation, self.coeffs, precision, self.var)

    def qpow(self):
        """q-power: exponents spread by q, coefficients F_q-fixed.
        Precision: x = known + O(u^N) gives x^q = known^q + O(u^(N + (q-1)v))."""
        F = self.field
        q = F.q
        if not self.coeffs:
            return LaurentSeries(F, q * self.valuation, [], q * self.valuation, self.var)
        prec = self.precision + (q - 1) * self.valuation
        out = [0] * ((len(self.coeffs) - 1) * q + 1)
        for i, c in enumerate(self.coeffs):
            out[i * q] = c
        return LaurentSeries(F, q * self.valuation, out, prec, self.var)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return LaurentSeries.one(self.field, self.known_length(), self.var)
        base = self
        acc = None
        while n:
            if n & 1:
                acc = base if acc is None else acc * base
            n >>= 1
            if n:
                base = base * base
        return acc

    # -- polynomial part / tail -------------------------------------------

    def polynomial_part(self) -> Poly:
        """The t-polynomial formed by coefficients at u^k, k <= 0."""
        F = self.field
        cs = []
        for k in range(0, self.valuation - 1, -1):
            cs.append(self.coefficient(k) if k < self.precision else 0)
        return Poly(F, cs, self.var)

    def tail_from(self, k: int):
        """The part of the series with exponents >= k (same precision)."""
        F = self.field
        out = []
        lo = max(k, self.valuation)
        for i in range(lo, self.precision):
            out.append(self.coefficient(i))
        return LaurentSeries(F, lo, out, self.precision, self.var)

    # -- comparison and io ---------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.field == other.field
            and self.var == other.var
            and self.valuation == other.valuation
            and self.coeffs == other.coeffs
            and self.precision == other.precision
        )

    def __hash__(self):
        return hash((self.field, self.var, self.valuation, tuple(self.coeffs), self.precision))

    def agrees_with(self, other, upto: int) -> bool:
        """Coefficientwise agreement on every exponent < upto (both series
        must actually know that range)."""
        if min(self.precision, other.precision) < upto:
            raise PrecisionError("comparison window exceeds known precision")
        lo = min(self.valuation, other.valuation)
        return all(self.coefficient(k) == other.coefficient(k) for k in range(lo, upto))

    def to_str(self) -> str:
        F = self.field
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            k = self.valuation + i
            cs = F.coeff_str(c)
            if k == 0:
                parts.append(cs)
            else:
                vp = f"{self.var}^{-k}" if k != 0 else ""
                parts.append(vp if c == 1 else f"{cs}*{vp}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O({self.var}^{-self.precision})"

    def __repr__(self):
        return self.to_str()

    def to_json(self) -> dict:
        F = self.field
        if F.e == 1:
            cs = list(self.coeffs)
        else:
            cs = [F.coeff_str(c) for c in self.coeffs]
        return {
            "var": self.var,
            "valuation": self.valuation,
            "precision": self.precision,
            "coeffs": cs,
        }

    @classmethod
    def from_json(cls, data: dict, field: Fq):
        from .parsing import parse_monomials

        cs = []
        for c in data["coeffs"]:
            if isinstance(c, int):
                cs.append(c % field.p if (c < 0 or c >= field.q) else c)
            else:
                mono = parse_monomials(str(c), field, ())
                cs.append(mono.get((), 0))
        return cls(field, int(data["valuation"]), cs, int(data["precision"]), data.get("var", "t"))
