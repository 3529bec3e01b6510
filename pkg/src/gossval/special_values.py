"""L-series special value at s = 0 as a certified Euler product.

The value is prod_f 1/P_f(1) over monic irreducible primes f of F_q[t],
an element of F_q((1/t)).  A factor at a prime of degree d is a one-unit
agreeing with 1 below u^ceil(d/r) (r the rank: the Frobenius eigenvalues
at f all have size q^(d/r), so the subleading charpoly coefficients have
t-degree at most (r-1)d/r), hence the primes of degree <= r*(prec-1)
determine the value modulo u^prec.  The valuation bound is re-checked on
every factor rather than assumed.  Independent Carlitz-side oracles
(per-degree reciprocal sums and the closed-form logarithm value at 1)
live here too, sharing nothing with the Euler-product route above plain
series arithmetic.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor

from .drinfeld import DrinfeldModule
from .fields import Fq
from .laurent import LaurentSeries
from .poly import Poly, monic_irreducibles


class TailCertificateError(ArithmeticError):
    """A local factor violated the bound v(1/P(1) - 1) >= ceil(deg f / r)."""


class InfeasibleCutoffError(ValueError):
    """The requested precision needs more primes than the feasibility cap."""


def _prime_count(q: int, max_degree: int) -> int:
    """Exact number of monic irreducibles of degree 1..max_degree."""
    total = 0
    for d in range(1, max_degree + 1):
        s = 0
        for e in range(1, d + 1):
            if d % e:
                continue
            m = _moebius(e)
            if m:
                s += m * q ** (d // e)
        total += s // d
    return total


def _moebius(n: int) -> int:
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    if n > 1:
        out = -out
    return out


_PRIME_CACHE: dict = {}


def ordered_primes(field: Fq, max_degree: int, var: str = "x"):
    """Monic irreducibles of degree 1..max_degree in the canonical order
    (degree ascending, packed coefficient value within a degree)."""
    key = (field.q, field.modulus, max_degree, var)
    hit = _PRIME_CACHE.get(key)
    if hit is None:
        by_deg = monic_irreducibles(field, max_degree, var)
        hit = tuple(f for d in sorted(by_deg) for f in by_deg[d])
        _PRIME_CACHE[key] = hit
    return list(hit)


class LValueReport:
    """Result of an Euler-product evaluation.  `tail_valuations` holds the
    worst observed tail valuation per prime degree (the per-factor
    certificate data); `seconds` the wall-clock cost."""

    def __init__(self, value: LaurentSeries, prec_achieved: int,
                 cutoff_degree: int, primes: int, factors_checked: int,
                 tail_valuations: dict | None = None,
                 seconds: float = 0.0):
        self.value = value
        self.prec_achieved = prec_achieved
        self.cutoff_degree = cutoff_degree
        self.primes = primes
        self.factors_checked = factors_checked
        self.tail_valuations = tail_valuations or {}
        self.seconds = seconds

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "prec_achieved": self.prec_achieved,
            "cutoff_degree": self.cutoff_degree,
            "primes": self.primes,
            "factors_checked": self.factors_checked,
        }

    def __repr__(self):
        return (f"LValueReport({self.value.to_str()}, primes={self.primes}, "
                f"cutoff={self.cutoff_degree})")


def _factor_tail(module: DrinfeldModule, f: Poly, prec: int) -> LaurentSeries:
    """1/P_f(1) - 1, certified to start at or above u^ceil(deg f / r)."""
    lf = module.local_lfactor(f)
    s = lf.inverse_p1_series(prec)
    if s.is_zero() or s.valuation != 0 or s.coefficient(0) != 1:
        raise TailCertificateError(
            f"factor at {f.to_str()} is not a one-unit: {s.to_str()}")
    tail = s.tail_from(1)
    need = -(-f.degree() // module.rank)
    if not tail.is_zero() and tail.valuation < need:
        raise TailCertificateError(
            f"factor at {f.to_str()} has tail valuation {tail.valuation} "
            f"< ceil(deg/rank) = {need}")
    return tail


_FEASIBLE_PRIMES = 1 << 21
_FEASIBLE_SIEVE = 1 << 26


def l_value(module: DrinfeldModule, prec: int, threads: int = 1) -> LValueReport:
    """The special value as a series known modulo u^prec.

    Uses primes of degree up to rank*(prec-1), the minimal cutoff whose
    per-factor tail bound ceil(d/rank) certifies the truncation.  Factors
    are produced per prime (optionally on a thread pool) and reduced in
    the canonical prime order, so the result is identical for any thread
    count.
    """
    if prec < 1:
        raise ValueError("need precision at least 1")
    t0 = time.perf_counter()
    F = module.field
    cutoff = module.rank * (prec - 1)
    if F.q ** max(cutoff, 1) > _FEASIBLE_SIEVE or \
            _prime_count(F.q, cutoff) > _FEASIBLE_PRIMES:
        raise InfeasibleCutoffError(
            f"cutoff degree {cutoff} over F_{F.q} needs too many primes")
    primes = ordered_primes(F, cutoff, module.var)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            tails = list(ex.map(lambda f: _factor_tail(module, f, prec), primes))
    else:
        tails = [_factor_tail(module, f, prec) for f in primes]
    worst: dict = {}
    acc = LaurentSeries.one(F, prec, "t")
    for f, tail in zip(primes, tails):
        d = f.degree()
        v = prec if tail.is_zero() else tail.valuation
        worst[d] = min(worst.get(d, prec), v)
        if tail.is_zero():
            continue
        acc = acc + acc * tail
    return LValueReport(acc.truncate(prec), prec, cutoff,
                        len(primes), len(primes), worst,
                        time.perf_counter() - t0)


def one_unit_check(s: LaurentSeries) -> bool:
    """Is s = 1 + (strictly positive u-exponents), to its precision?"""
    return (not s.is_zero()) and s.valuation == 0 and s.coefficient(0) == 1


# -- independent Carlitz-side oracles ----------------------------------------


def _accumulate_reciprocal(field: Fq, low: list, width: int, total: list):
    """Add the reciprocal expansion of the monic with low-degree coeffs
    `low` (degree m = len(low), leading 1 implicit) into total[0:width];
    total[k] tracks the coefficient of u^(m+k)."""
    m = len(low)
    fadd, fmul, fneg = field.add, field.mul, field.neg
    # 1/h = u^m / (1 + a_1 u + ... + a_m u^m), a_j = coeff of t^(m-j)
    a = [0] + [low[m - j] for j in range(1, m + 1)]
    b = [0] * width
    b[0] = 1
    for k in range(1, width):
        acc = 0
        for j in range(1, min(k, m) + 1):
            if a[j] and b[k - j]:
                acc = fadd(acc, fmul(a[j], b[k - j]))
        b[k] = fneg(acc)
    for k in range(width):
        if b[k]:
            total[k] = fadd(total[k], b[k])


def monic_reciprocal_sum(field: Fq, degree: int, prec: int) -> LaurentSeries:
    """Sum of 1/h over all monic h of the given degree, each expanded by
    short division; known modulo u^prec."""
    m = degree
    if m >= prec:
        return LaurentSeries.zero(field, prec, "t")
    if m == 0:
        return LaurentSeries.one(field, prec, "t")
    q = field.q
    width = prec - m
    total = [0] * width
    low = [0] * m
    for idx in range(q ** m):
        v = idx
        for i in range(m):
            v, low[i] = divmod(v, q)
        _accumulate_reciprocal(field, low, width, total)
    return LaurentSeries(field, m, total, prec, "t")


def carlitz_smooth_sum(field: Fq, prec: int, smooth_degree: int) -> LaurentSeries:
    """Sum of 1/h over monic h all of whose irreducible factors have
    degree <= smooth_degree, modulo u^prec.  This equals the Euler
    product over primes of degree <= smooth_degree; with smooth_degree
    >= prec-1 every monic of degree < prec qualifies and the sum
    collapses to the per-degree reciprocal sums."""
    acc = LaurentSeries.zero(field, prec, "t")
    if smooth_degree >= prec - 1:
        for m in range(prec):
            acc = acc + monic_reciprocal_sum(field, m, prec)
        return acc
    primes = ordered_primes(field, smooth_degree, "t")
    smooth = [Poly.one(field, "t")]
    for f in primes:
        ext = []
        for s in smooth:
            g = s * f
            while g.degree() <= prec - 1:
                ext.append(g)
                g = g * f
        smooth.extend(ext)
    width_total: dict = {}
    for h in smooth:
        m = h.degree()
        total = width_total.setdefault(m, [0] * (prec - m))
        _accumulate_reciprocal(field, list(h.coeffs[:m]), prec - m, total)
    for m, total in sorted(width_total.items()):
        acc = acc + LaurentSeries(field, m, total, prec, "t")
    return acc


def carlitz_log_one_series(field: Fq, prec: int) -> LaurentSeries:
    """sum_i (-1)^i / prod_{k<=i} (t^{q^k} - t): the closed-form value of
    the rank-one logarithm at 1, computed directly from this formula
    (independent of the coefficient recursion engine)."""
    q = field.q
    acc = LaurentSeries.one(field, prec, "t")
    term = acc
    i = 0
    val = 0
    while True:
        i += 1
        val += q ** i
        if val >= prec:
            break
        coeffs = [0] * (q ** i + 1)
        coeffs[1] = field.neg(1)
        coeffs[q ** i] = 1
        den = LaurentSeries.from_poly(Poly(field, coeffs, "t"), prec + 1, "t")
        term = -(term * den.inverse())
        acc = acc + term
    return acc.truncate(prec)
