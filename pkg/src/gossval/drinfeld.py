"""Drinfeld F_q[x]-modules with everywhere-good reduction.

A module of rank r is the twisted-polynomial datum

    phi_t = x + a_1 tau + ... + a_r tau^r,    a_i in F_q[x],  a_r in F_q^*,

acting on any F_q[x]-algebra through tau = (q-power map).  This file
provides the map a -> phi_a, the r x r tau-matrix of the associated
motive, local L-factors at monic irreducible primes, the exponential
and logarithm on F_q((1/x)) with certified truncation, and an
independent torsion-side oracle for the local factors.
"""

from __future__ import annotations

from .fields import Fq
from .kernels import backend
from .laurent import LaurentSeries, PrecisionError
from .matrix import RingMatrix, kernel_basis, solve
from .parsing import parse_univariate_flex
from .poly import Poly, first_irreducible
from .rings import (PolyRing, ResidueField, poly_to_value, quotient_field,
                    value_to_poly)
from .skew import TauPoly, frobenius_norm

_INF = float("inf")

# hard stop for the truncation-point scans; reached only on inputs far
# outside any certified radius
_SCAN_CAP = 4096


class GoodReductionError(ValueError):
    """Raised when the top coefficient is not a nonzero constant."""


class IntegralityError(ArithmeticError):
    """Raised when a quantity that must descend to F_q[t] fails to."""


class ExpLogData:
    """Truncated exponential/logarithm coefficients with their valuation
    floors and the certified ball exponent."""

    __slots__ = ("e", "l", "precision", "bound_exp", "bound_log", "b_star")

    def __init__(self, e, l, precision, bound_exp, bound_log, b_star):
        self.e = e
        self.l = l
        self.precision = precision
        self.bound_exp = bound_exp
        self.bound_log = bound_log
        self.b_star = b_star


class DrinfeldModule:

    def __init__(self, field: Fq, coeffs, var: str = "x"):
        if not coeffs:
            raise ValueError("rank must be at least 1")
        self.field = field
        self.var = var
        norm = []
        for a in coeffs:
            if isinstance(a, Poly):
                if a.field.q != field.q:
                    raise ValueError("coefficient over the wrong base field")
                norm.append(a.rename(var))
            elif isinstance(a, int):
                norm.append(Poly.const(field, field.from_int(a), var))
            elif isinstance(a, str):
                norm.append(Poly(field, parse_univariate_flex(a, field), var))
            else:
                raise TypeError(f"cannot use {type(a).__name__} as a coefficient")
        top = norm[-1]
        if top.degree() != 0:
            raise GoodReductionError(
                "top coefficient must be a nonzero constant, got "
                f"{top.to_str() if not top.is_zero() else '0'}")
        self.coeffs = tuple(norm)
        self.rank = len(norm)
        # tau-degrees with nonzero coefficient, and the largest x-degree
        self._nz = tuple(j + 1 for j, a in enumerate(norm) if not a.is_zero())
        self._maxdeg = max(a.degree() for a in norm if not a.is_zero())
        self._Rx = PolyRing(field, var, geometric=True)
        self._bexp: list = [0]
        self._blog: list = [0]
        self._bstar = None
        self._ecache = (0, [])
        self._lcache = (0, [])

    @classmethod
    def carlitz(cls, field: Fq, var: str = "x") -> "DrinfeldModule":
        return cls(field, [Poly.one(field, var)], var)

    @classmethod
    def from_spec(cls, data: dict) -> "DrinfeldModule":
        field = Fq(int(data["q"]), data.get("modulus"))
        coeffs = list(data["coeffs"])
        if "rank" in data and int(data["rank"]) != len(coeffs):
            raise ValueError("rank does not match the coefficient list")
        return cls(field, coeffs)

    def spec(self) -> dict:
        return {
            "q": self.field.q,
            "modulus": None if self.field.e == 1 else list(self.field.modulus),
            "rank": self.rank,
            "coeffs": [a.to_str() for a in self.coeffs],
        }

    def __eq__(self, other):
        if not isinstance(other, DrinfeldModule):
            return NotImplemented
        return self.field.q == other.field.q and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.q, self.coeffs))

    def __repr__(self):
        parts = [self.var] + [f"({a.to_str()})tau^{j + 1}"
                              for j, a in enumerate(self.coeffs)]
        return f"DrinfeldModule(q={self.field.q}, phi_t = {' + '.join(parts)})"

    # -- the module map ----------------------------------------------------

    def phi(self, a) -> TauPoly:
        """phi_a for a in F_q[t], as a twisted polynomial over F_q[x]."""
        R = self._Rx
        if isinstance(a, int):
            a = Poly.const(self.field, self.field.from_int(a), "t")
        elif isinstance(a, str):
            a = Poly.parse(self.field, a, "t")
        if a.field.q != self.field.q:
            raise ValueError("argument over the wrong base field")
        phi_t = TauPoly(R, [R.gen()] + [poly_to_value(R, c) for c in self.coeffs])
        acc = TauPoly.zero(R)
        for c in reversed(a.coeffs):
            acc = acc * phi_t + TauPoly.const(R, R.const(c))
        return acc

    def phi_series(self, a, z: LaurentSeries) -> LaurentSeries:
        """phi_a acting on F_q((1/x)): sum of c_i(x) * z^(q^i)."""
        f = self.phi(a)
        acc = None
        zp = z
        for i in range(f.degree() + 1):
            if i:
                zp = zp.qpow()
            c = f[i]
            if not c:
                continue
            cp = Poly(self.field, list(c), self.var)
            cs = LaurentSeries.from_poly(
                cp, zp.precision + max(0, -zp.valuation) + 1, var=self.var)
            term = cs * zp
            acc = term if acc is None else acc + term
        if acc is None:
            return LaurentSeries.zero(self.field, z.precision, self.var)
        return acc

    # -- motive ------------------------------------------------------------

    def motive_tau_matrix(self, prime: Poly | None = None) -> RingMatrix:
        """The r x r tau-matrix of the motive: ones on the subdiagonal and
        last column (a_r^-1 (t - x), -a_r^-1 a_1, ..., -a_r^-1 a_{r-1});
        over F_q[x][t], or over k[t] after reduction at a prime."""
        F = self.field
        r = self.rank
        ar_inv = F.inv(self.coeffs[-1].constant())
        if prime is None:
            R = self._Rx

            def emb(p: Poly):
                return poly_to_value(R, p)

            def scale(v):
                return R.smul(ar_inv, v)

            unit = R.const(ar_inv)
        else:
            R = ResidueField(F, prime.rename(self.var))

            def emb(p: Poly):
                return R.reduce_poly(p.rename(self.var))

            def scale(v):
                return R.mul(R.from_base(ar_inv), v)

            unit = R.from_base(ar_inv)
        ring = PolyRing(R, "t")
        rows = [[ring.zero for _ in range(r)] for _ in range(r)]
        for i in range(1, r):
            rows[i][i - 1] = ring.one
        theta = emb(Poly.gen(F, self.var))
        rows[0][r - 1] = (scale(R.neg(theta)), unit)
        for j in range(1, r):
            rows[j][r - 1] = ring.const(scale(R.neg(emb(self.coeffs[j - 1]))))
        return RingMatrix(ring, rows)

    # -- local L-factors ---------------------------------------------------

    def local_lfactor(self, f: Poly) -> "LocalFactor":
        """Characteristic polynomial data of the twisted norm of the motive
        matrix at the prime f; coefficients are checked to descend to
        F_q[t] and the constant term to be a unit multiple of f^h."""
        f = f.rename(self.var)
        if not f.is_monic() or f.degree() < 1:
            raise ValueError("prime must be monic of positive degree")
        d = f.degree()
        k = ResidueField(self.field, f)
        kt = PolyRing(k, "t")
        if self.field.e == 1:
            raw = backend().kt_local_charpoly(
                self.field.q, [cv for cv in f.coeffs],
                self._kernel_entries(f), d)
            cp = [tuple(tuple(_trim_digits(dv)) for dv in v) for v in raw]
        else:
            C = self.motive_tau_matrix(prime=f)
            N = frobenius_norm(C, d)
            cp = N.charpoly()
        c = []
        for v in cp:
            coeffs = []
            for kv in v:
                if len(kv) > 1:
                    raise IntegralityError(
                        "characteristic coefficient does not descend to F_q[t]: "
                        f"{kt.to_str(v)} at prime {f.to_str()}")
                coeffs.append(kv[0] if kv else 0)
            c.append(Poly(self.field, coeffs, "t"))
        # constant term must be a unit times a power of the prime
        c0 = c[0]
        ft = f.rename("t")
        h = 0
        rem = c0.monic()
        while rem.degree() > 0:
            quo, r0 = divmod(rem, ft)
            if not r0.is_zero():
                raise IntegralityError(
                    f"constant term {c0.to_str()} is not a power of the prime")
            rem, h = quo, h + 1
        if h < 1 or not rem.is_one():
            raise IntegralityError(
                f"constant term {c0.to_str()} is not a power of the prime")
        return LocalFactor(self, f.rename("t"), c)

    def _kernel_entries(self, f: Poly):
        """The motive matrix at f in the flat kernel encoding: r x r lists
        of t-coefficients, each a base-p digit list of the residue."""
        F = self.field
        r = self.rank
        ar_inv = F.inv(self.coeffs[-1].constant())

        def kscal(g: Poly, scale: int):
            # g mod f as one k-scalar (digit list over F_p)
            return [F.mul(scale, cv) for cv in (g % f).coeffs]

        ent = [[[] for _ in range(r)] for _ in range(r)]
        for i in range(1, r):
            ent[i][i - 1] = [[1]]
        x = Poly.gen(F, self.var)
        # a_r^-1 * (t - x): t-coefficients [ -a_r^-1 x, a_r^-1 ]
        ent[0][r - 1] = [kscal(x, F.neg(ar_inv)), [ar_inv]]
        for j in range(1, r):
            ent[j][r - 1] = [kscal(self.coeffs[j - 1], F.neg(ar_inv))]
        return ent

    def _norm_kernel(self, f: Poly, k: ResidueField, kt, d: int) -> RingMatrix:
        """Twisted norm via the compiled/flat kernel (prime base field)."""
        raw = backend().kt_norm(self.field.q, [c for c in f.coeffs],
                                self._kernel_entries(f), d)
        rows = []
        for raw_row in raw:
            row = []
            for e in raw_row:
                tl = [tuple(_trim_digits(dv)) for dv in e]
                while tl and tl[-1] == ():
                    tl.pop()
                row.append(tuple(tl))
            rows.append(row)
        return RingMatrix(kt, rows)

    def euler_factors(self, max_degree: int):
        """All local factors at primes of degree <= max_degree, in the
        sieve order (degree, then packed value)."""
        from .poly import monic_irreducibles
        by_deg = monic_irreducibles(self.field, max_degree, self.var)
        return [self.local_lfactor(f)
                for d in sorted(by_deg) for f in by_deg[d]]

    # -- torsion-side oracle -------------------------------------------------

    def torsion_frobenius_oracle(self, f: Poly, p: Poly) -> list:
        """Characteristic polynomial of the deg(f)-power Frobenius on the
        p-torsion of the reduction at f, computed by explicit root
        adjunction; coefficients as Polys over F_q[t] reduced mod p,
        low-to-high.  Independent of the norm/charpoly route."""
        F = self.field
        q = F.q
        f = f.rename(self.var)
        p = p.rename("t")
        if not f.is_irreducible() or not p.is_irreducible():
            raise ValueError("both the place and the torsion prime must be irreducible")
        if f.rename("t") == p:
            raise ValueError("torsion prime must differ from the place")
        d, m, r = f.degree(), p.degree(), self.rank
        want = r * m
        phi_p = self.phi(p)
        pc = [Poly(F, list(c), self.var) for c in
              (phi_p[i] for i in range(phi_p.degree() + 1))]

        tors = None
        K = None
        theta = None
        n = d
        while n <= 64 * d:
            K = ResidueField(F, first_irreducible(F, n, "y"))
            theta = _find_root(K, f)
            if theta is None:
                n += d
                continue
            cvals = [_eval_base_poly(K, g, theta) for g in pc]
            dim = K.fq_dim()
            rows = []
            for i in range(dim):
                b = K.from_fq_vec([1 if s == i else 0 for s in range(dim)])
                acc = K.zero
                xp = b
                for s, cv in enumerate(cvals):
                    if s:
                        xp = K.frobq(xp)
                    if not _nz(cv):
                        continue
                    acc = K.add(acc, K.mul(cv, xp))
                rows.append(list(K.to_fq_vec(acc)))
            # columns of the matrix are images; kernel of the transpose-free
            # map needs rows-as-images arranged column-wise
            mat = [[rows[i][s] for i in range(dim)] for s in range(dim)]
            ker = kernel_basis(F, mat)
            if len(ker) == want:
                tors = [K.from_fq_vec(v) for v in ker]
                break
            n += d
        if tors is None:
            raise ArithmeticError("torsion module not split within the degree budget")

        # A/p-basis by greedy orbit extension under phi_t
        phi_t = self.phi(Poly.gen(F, "t"))
        tvals = [_eval_base_poly(K, Poly(F, list(c), self.var), theta)
                 for c in (phi_t[i] for i in range(phi_t.degree() + 1))]

        def act_t(v):
            acc = K.zero
            xp = v
            for s, cv in enumerate(tvals):
                if s:
                    xp = K.frobq(xp)
                if not _nz(cv):
                    continue
                acc = K.add(acc, K.mul(cv, xp))
            return acc

        basis = []
        span_rows = []
        for v in tors:
            if basis and len(basis) == r:
                break
            if span_rows and _in_fq_span(F, span_rows, list(K.to_fq_vec(v))):
                continue
            basis.append(v)
            w = v
            for s in range(m):
                if s:
                    w = act_t(w)
                span_rows.append(list(K.to_fq_vec(w)))
        if len(basis) != r:
            raise ArithmeticError("failed to extract a free torsion basis")

        # Frobenius matrix in A/p-coordinates
        frob_cols = []
        for v in basis:
            w = v
            for _ in range(d):
                w = K.frobq(w)
            coords = solve(F, [list(rw) for rw in zip(*span_rows)],
                           list(K.to_fq_vec(w)))
            if coords is None:
                raise ArithmeticError("Frobenius image left the torsion span")
            frob_cols.append(coords)
        Qp = quotient_field(p)
        rows = []
        for i in range(r):
            row = []
            for j in range(r):
                lam = tuple(_trim_digits(frob_cols[j][i * m:(i + 1) * m]))
                row.append(lam)
            rows.append(row)
        cp = RingMatrix(Qp, rows).charpoly()
        return [value_to_poly(Qp, v, F, "t") for v in cp]

    # -- exponential / logarithm --------------------------------------------

    def exp_val_bounds(self, i_max: int) -> list:
        """Valuation floors B(i) <= v(e_i): B(0) = 0 and
        B(i) = q^i + min_j (q^j B(i-j) - deg a_j) over nonzero a_j."""
        B = self._bexp
        q = self.field.q
        while len(B) <= i_max:
            i = len(B)
            best = _INF
            for j in self._nz:
                if j > i:
                    break
                cand = (q ** j) * B[i - j] - self.coeffs[j - 1].degree()
                if cand < best:
                    best = cand
            B.append(q ** i + best)
        return B[:i_max + 1]

    def log_val_bounds(self, i_max: int) -> list:
        """Valuation floors L(i) <= v(l_i): L(0) = 0 and
        L(i) = q^i + min_j (L(i-j) - q^(i-j) deg a_j) over nonzero a_j."""
        L = self._blog
        q = self.field.q
        while len(L) <= i_max:
            i = len(L)
            best = _INF
            for j in self._nz:
                if j > i:
                    break
                cand = L[i - j] - (q ** (i - j)) * self.coeffs[j - 1].degree()
                if cand < best:
                    best = cand
            L.append(q ** i + best)
        return L[:i_max + 1]

    def _stable_window(self):
        """Smallest index i0 with B >= G0 on the window of length rank
        ending at i0, where G0 = max(1, ceil(maxdeg/(q-1))); past it every
        B(i) >= q^i + G0, so finitely many checks certify a ball bound."""
        q = self.field.q
        G0 = max(1, -(-self._maxdeg // (q - 1)))
        run = 0
        i = 0
        while True:
            i += 1
            if i > _SCAN_CAP:
                raise ArithmeticError("no stable valuation window found")
            B = self.exp_val_bounds(i)
            if B[i] >= G0:
                run += 1
                if run >= self.rank:
                    return i, G0
            else:
                run = 0

    def ball_exponent(self) -> int:
        """Smallest certified b with exp and log mutually inverse isometries
        on the ball x^-b O of F_q((1/x))."""
        if self._bstar is not None:
            return self._bstar
        q = self.field.q
        D = self._maxdeg
        i0, _ = self._stable_window()
        B = self.exp_val_bounds(i0)
        b = max(0, -(-(D + 1 - q) // (q - 1)))
        for i in range(1, i0 + 1):
            if B[i] == _INF:
                continue
            if 1 - B[i] > 0:
                b = max(b, -(-(1 - B[i]) // (q ** i - 1)))
        if B[1] >= 0:
            for i in range(2, i0 + 1):
                if B[i] != _INF and B[i] < 0:
                    b = max(b, -(-(-B[i]) // (q ** i - q)))
        self._bstar = b
        return b

    def exp_log_coeffs(self, i_max: int, prec: int) -> ExpLogData:
        e = [s.truncate(prec) for s in self._exp_series(i_max, prec)[:i_max + 1]]
        l = [s.truncate(prec) for s in self._log_series(i_max, prec)[:i_max + 1]]
        return ExpLogData(e, l, prec,
                          tuple(self.exp_val_bounds(i_max)),
                          tuple(self.log_val_bounds(i_max)),
                          self.ball_exponent())

    def _exp_series(self, i_max: int, prec: int) -> list:
        cp, cs = self._ecache
        if cp >= prec and len(cs) > i_max:
            return cs
        n = max(i_max, len(cs) - 1)
        p = max(prec, cp)
        pad = self._maxdeg + 4
        for _ in range(8):
            try:
                out = self._compute_exp(n, p, p + pad)
            except PrecisionError:
                pad = 2 * pad + 8
                continue
            self._ecache = (p, out)
            return out
        raise PrecisionError("exponential coefficients lost too much precision")

    def _compute_exp(self, i_max: int, prec: int, prec_w: int) -> list:
        F, q, var = self.field, self.field.q, self.var
        B = self.exp_val_bounds(i_max)
        e = [LaurentSeries.one(F, prec_w, var)]
        a_ser = [None] * (self.rank + 1)
        for j in self._nz:
            a_ser[j] = LaurentSeries.from_poly(
                self.coeffs[j - 1], prec_w + self.coeffs[j - 1].degree() + 1, var)
        for i in range(1, i_max + 1):
            if B[i] >= prec_w:
                e.append(LaurentSeries.zero(F, prec_w, var))
                continue
            S = None
            for j in self._nz:
                if j > i:
                    break
                E = e[i - j]
                for _ in range(j):
                    E = E.qpow()
                term = a_ser[j] * E
                S = term if S is None else S + term
            den = _den_series(F, q ** i, prec_w + 1, var)
            ei = S * den
            if ei.precision < prec:
                raise PrecisionError(
                    f"e_{i} certified only below u^{ei.precision}, need {prec}")
            e.append(ei)
        return e

    def _log_series(self, i_max: int, prec: int) -> list:
        cp, cs = self._lcache
        if cp >= prec and len(cs) > i_max:
            return cs
        n = max(i_max, len(cs) - 1)
        p = max(prec, cp)
        pad = self._maxdeg + 4
        for _ in range(8):
            try:
                out = self._compute_log(n, p, p + pad)
            except PrecisionError:
                pad = 2 * pad + 8
                continue
            self._lcache = (p, out)
            return out
        raise PrecisionError("logarithm coefficients lost too much precision")

    def _compute_log(self, i_max: int, prec: int, prec_w: int) -> list:
        F, q, var = self.field, self.field.q, self.var
        L = self.log_val_bounds(i_max)
        l = [LaurentSeries.one(F, prec_w, var)]
        for i in range(1, i_max + 1):
            if L[i] >= prec_w:
                l.append(LaurentSeries.zero(F, prec_w, var))
                continue
            S = None
            for j in self._nz:
                if j > i:
                    break
                li = l[i - j]
                if li.is_zero():
                    continue
                a = self.coeffs[j - 1]
                if li.valuation - (q ** (i - j)) * a.degree() >= prec_w:
                    continue
                for _ in range(i - j):
                    a = a.qpow()
                aser = LaurentSeries.from_poly(
                    a, prec_w + max(0, -li.valuation) + a.degree() + 1, var)
                term = li * aser
                S = term if S is None else S + term
            den = _den_series(F, q ** i, prec_w + 1, var)
            li = -(S * den) if S is not None else LaurentSeries.zero(F, prec_w, var)
            if not li.is_zero() and li.precision < prec:
                raise PrecisionError(
                    f"l_{i} certified only below u^{li.precision}, need {prec}")
            l.append(li)
        return l

    def exp_eval(self, z: LaurentSeries, prec: int) -> LaurentSeries:
        """exp(z) with every coefficient below u^prec certified.  The
        truncation point is certified by a run of rank-many indices whose
        term valuations clear prec, past the point q^i >= maxdeg where the
        bound recursion preserves that clearance."""
        if prec < 1:
            raise ValueError("precision must be at least 1")
        q, r, D = self.field.q, self.rank, self._maxdeg
        v = z.valuation
        included = []
        run = 0
        run_start = 0
        i = 0
        while True:
            i += 1
            if i > _SCAN_CAP:
                raise PrecisionError("no certified truncation point in range")
            B = self.exp_val_bounds(i)
            T = B[i] + (q ** i) * v
            if T < prec:
                included.append(i)
                run = 0
            else:
                if run == 0:
                    run_start = i
                run += 1
                if run >= r and q ** run_start >= D:
                    break
        i_hi = included[-1] if included else 0
        data_prec = prec
        for i in included:
            data_prec = max(data_prec, prec - (q ** i) * v)
        e = self._exp_series(i_hi, data_prec) if included else []
        acc = z
        zp = z
        incl = set(included)
        for i in range(1, i_hi + 1):
            zp = zp.qpow()
            if i in incl:
                acc = acc + e[i] * zp
        if acc.precision < prec:
            raise PrecisionError(
                f"input precision supports only u^{acc.precision}, need {prec}")
        return acc.truncate(prec)

    def log_eval(self, z: LaurentSeries, prec: int) -> LaurentSeries:
        """log(z) for z in the certified ball x^-b* O; raises ValueError
        outside it.  Truncation certified by a run of rank-many indices
        clearing prec (increments are positive on the ball)."""
        if prec < 1:
            raise ValueError("precision must be at least 1")
        b = self.ball_exponent()
        v = z.valuation
        if v < b:
            raise ValueError(
                f"argument valuation {v} outside the certified ball x^-{b}O")
        q, r = self.field.q, self.rank
        included = []
        run = 0
        i = 0
        while True:
            i += 1
            if i > _SCAN_CAP:
                raise PrecisionError("no certified truncation point in range")
            L = self.log_val_bounds(i)
            T = L[i] + (q ** i) * v
            if T < prec:
                included.append(i)
                run = 0
            else:
                run += 1
                if run >= r:
                    break
        i_hi = included[-1] if included else 0
        l = self._log_series(i_hi, prec) if included else []
        acc = z
        zp = z
        incl = set(included)
        for i in range(1, i_hi + 1):
            zp = zp.qpow()
            if i in incl:
                acc = acc + l[i] * zp
        if acc.precision < prec:
            raise PrecisionError(
                f"input precision supports only u^{acc.precision}, need {prec}")
        return acc.truncate(prec)


class LocalFactor:
    """Local factor data at a prime f: the characteristic polynomial
    c(X) of the twisted norm (coefficients in F_q[t], low-to-high) and
    the normalization P(T) = c(T)/c(0) with P(0) = 1."""

    def __init__(self, module: DrinfeldModule, prime: Poly, c: list):
        self.module = module
        self.prime = prime
        self.degree = prime.degree()
        self.c = c

    def c_str(self) -> str:
        terms = []
        n = len(self.c) - 1
        for j in range(n, -1, -1):
            cj = self.c[j]
            if cj.is_zero():
                continue
            xs = "X^%d" % j if j >= 2 else ("X" if j == 1 else "")
            if j == 0:
                terms.append(_coeff_str(cj))
            elif cj.is_one():
                terms.append(xs)
            else:
                terms.append(f"{_coeff_str(cj)}*{xs}")
        return " + ".join(terms) if terms else "0"

    def p_fraction(self, j: int):
        """Coefficient of T^j in P, as a reduced fraction (num, den) of
        Polys with monic denominator."""
        num, den = self.c[j], self.c[0]
        g = num.gcd(den)
        if g.degree() > 0:
            num, den = num // g, den // g
        lead = den.leading()
        if lead != 1:
            inv = den.field.inv(lead)
            num, den = num.scale(inv), den.scale(inv)
        return num, den

    def p_str(self) -> str:
        terms = []
        for j in range(len(self.c)):
            if self.c[j].is_zero():
                continue
            num, den = self.p_fraction(j)
            ts = "T^%d" % j if j >= 2 else ("T" if j == 1 else "")
            if den.is_one():
                cs = None if num.is_one() else _coeff_str(num)
            else:
                cs = f"({_coeff_str(num)}/{_coeff_str(den)})"
            if j == 0:
                terms.append(cs if cs is not None else "1")
            elif cs is None:
                terms.append(ts)
            else:
                terms.append(f"{cs}*{ts}")
        return " + ".join(terms) if terms else "0"

    def p_at_one(self):
        """(numerator, denominator) of P(1) = c(1)/c(0), unreduced."""
        num = Poly.zero(self.c[0].field, "t")
        for cj in self.c:
            num = num + cj
        return num, self.c[0]

    def inverse_p1_series(self, prec: int) -> LaurentSeries:
        """1/P(1) = c(0)/c(1) as an element of F_q((1/t)) below u^prec."""
        num, den = self.p_at_one()
        pad = prec + 2 * (max(0, num.degree()) + max(0, den.degree())) + 4
        ns = LaurentSeries.from_poly(den, pad, var="t")
        ds = LaurentSeries.from_poly(num, pad, var="t")
        return (ns * ds.inverse()).truncate(prec)

    def to_json(self) -> dict:
        num, den = self.p_at_one()
        return {
            "prime": self.prime.to_str(),
            "degree": self.degree,
            "c": [cj.to_str() for cj in self.c],
            "charpoly": self.c_str(),
            "P": self.p_str(),
            "P_at_one": {"num": num.to_str(), "den": den.to_str()},
        }

    def __repr__(self):
        return f"LocalFactor({self.prime.to_str()}: {self.c_str()})"


# -- helpers -----------------------------------------------------------------


def _trim_digits(ds):
    out = list(ds)
    while out and not out[-1]:
        out.pop()
    return out


def _nz(v) -> bool:
    return any(v) if isinstance(v, tuple) else bool(v)


def _den_series(F: Fq, e: int, precision: int, var: str) -> LaurentSeries:
    """1/(x^e - x) as a series."""
    coeffs = [0] * (e + 1)
    coeffs[1] = F.neg(1)
    coeffs[e] = 1
    return LaurentSeries.from_poly(Poly(F, coeffs, var), precision, var).inverse()


def _eval_base_poly(K: ResidueField, g: Poly, x):
    """g evaluated at x in K, coefficients embedded from the base field."""
    acc = K.zero
    for c in reversed(g.coeffs):
        acc = K.add(K.mul(acc, x), K.from_base(c))
    return acc


def _in_fq_span(F: Fq, rows, vec) -> bool:
    from .matrix import in_span
    return in_span(F, rows, vec)


# dense K[X] helpers for the deterministic root search ------------------------


def _kx_trim(a):
    while a and not _nz(a[-1]):
        a.pop()
    return a


def _kx_mul(K, a, b):
    if not a or not b:
        return []
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not _nz(ai):
            continue
        for j, bj in enumerate(b):
            if _nz(bj):
                out[i + j] = K.add(out[i + j], K.mul(ai, bj))
    return _kx_trim(out)


def _kx_mod(K, a, b):
    a = list(a)
    db = len(b) - 1
    inv = K.inv(b[-1])
    while len(a) - 1 >= db and a:
        c = K.mul(a[-1], inv)
        off = len(a) - 1 - db
        for i in range(db + 1):
            a[off + i] = K.sub(a[off + i], K.mul(c, b[i]))
        _kx_trim(a)
    return a


def _kx_gcd(K, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _kx_mod(K, a, b)
    if a:
        inv = K.inv(a[-1])
        a = [K.mul(inv, c) for c in a]
    return a


def _kx_powmod(K, base, n, mod):
    r = [K.one]
    base = _kx_mod(K, base, mod)
    while n:
        if n & 1:
            r = _kx_mod(K, _kx_mul(K, r, base), mod)
        base = _kx_mod(K, _kx_mul(K, base, base), mod)
        n >>= 1
    return r


def _field_elem(K: ResidueField, idx: int):
    q = K.base.q
    dim = K.fq_dim()
    vec = []
    for _ in range(dim):
        idx, r = divmod(idx, q)
        vec.append(r)
    return K.from_fq_vec(vec)


def _find_root(K: ResidueField, f: Poly):
    """A root of f in K when f splits there, else None.  Deterministic:
    gcd with additive-character (even) or quadratic-character (odd)
    splitters over an enumerated multiplier sequence."""
    F = f.field
    p = F.p
    h = [K.from_base(c) for c in f.coeffs]
    nq = f.degree()
    # restrict to the roots lying in K
    xq = [K.zero, K.one]
    xq = _kx_powmod(K, xq, K.base.q ** K.fq_dim(), h)
    xq = list(xq) + [K.zero] * (2 - len(xq))
    xq[1] = K.sub(xq[1], K.one)
    h = _kx_gcd(K, h, _kx_trim(xq))
    if len(h) - 1 < 1:
        return None
    abs_dim = K.fq_dim() * K.base.e
    cap = min(K.base.q ** K.fq_dim(), 4096)
    idx = 1
    while len(h) - 1 > 1:
        if idx >= cap:
            return None
        c = _field_elem(K, idx)
        idx += 1
        if p == 2:
            # trace of c*X down to F_2 splits distinct roots for some basis c
            y = _kx_mod(K, [K.zero, c], h)
            acc = list(y)
            for _ in range(abs_dim - 1):
                y = _kx_mod(K, _kx_mul(K, y, y), h)
                acc = _kx_trim([K.add(a, b) for a, b in
                                zip(acc + [K.zero] * len(y), y + [K.zero] * len(acc))])
            g = _kx_gcd(K, h, acc)
        else:
            s = (p ** abs_dim - 1) // 2
            w = _kx_powmod(K, [c, K.one], s, h)
            w = list(w) + [K.zero] * (1 - len(w))
            w[0] = K.sub(w[0], K.one)
            g = _kx_gcd(K, h, _kx_trim(w))
        if 0 < len(g) - 1 < len(h) - 1:
            h = g if 2 * (len(g) - 1) <= len(h) - 1 else _kx_quot(K, h, g)
    return K.neg(h[0]) if len(h) - 1 == 1 else None


def _kx_quot(K, a, b):
    a = list(a)
    db = len(b) - 1
    inv = K.inv(b[-1])
    out = [K.zero] * (len(a) - db)
    while len(a) - 1 >= db and a:
        c = K.mul(a[-1], inv)
        off = len(a) - 1 - db
        out[off] = c
        for i in range(db + 1):
            a[off + i] = K.sub(a[off + i], K.mul(c, b[i]))
        _kx_trim(a)
    return _kx_trim(out)


def _coeff_str(c: Poly) -> str:
    s = c.to_str()
    return f"({s})" if ("+" in s or "-" in s) else s
