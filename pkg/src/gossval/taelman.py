"""Unit and class invariants of a module over R = F_q[x] at infinity.

Everything reduces to finite F_q-linear algebra on two certified objects:

* a window W = span(u^1..u^c) of 1/x-exponents, with S = the projection
  to W of exp(K) + R.  S is spanned by the projected columns exp(x^k),
  k = -c..B, and certified complete by stability under the induced
  window map w -> pi_W(phi_t(w)) together with ball absorption at the
  window floor (the column at k = -c projects exactly to u^c, and every
  deeper x-power projects to zero).
* the kernel of the window matrix, whose vectors refine to elements z
  with exp(z) in R exactly (exp is additive, so subtracting the log of
  the tail removes it without disturbing the polynomial image); the
  minimal-top-degree kernel vector refines to a generator, certified by
  a span check against its x-multiples.

The quotient W/S carries the t-action through phi_t (not through plain
multiplication by x: the quotient identifies exp-images, and only phi_t
commutes with exp).  Its Fitting-ideal generator and the refined unit
assemble into the product identity against the Euler-product value.
"""

from __future__ import annotations

from .drinfeld import DrinfeldModule
from .laurent import LaurentSeries, PrecisionError
from .matrix import RingMatrix, fitting_generator, kernel_basis, rank, rref
from .poly import Poly
from .special_values import l_value

_RETRY = 6


class WindowError(ArithmeticError):
    """A certified window invariant failed to hold."""


def _basis_of(F, rows):
    """Row-span basis (rref rows with the zero tail stripped) and pivots."""
    live = [r for r in rows if any(not F.is_zero(v) for v in r)]
    if not live:
        return [], []
    red, piv = rref(F, live)
    return red[:len(piv)], piv


class UnitsWindow:
    """Positive-exponent parts of the columns exp(x^k), k = -c..B, at a
    common certified precision.  (Only exponents >= 1 are stored: the
    window matrix never looks at the polynomial part, and phi_t maps
    polynomials to polynomials, so the positive parts propagate
    autonomously under the column recursion.)"""

    def __init__(self, module: DrinfeldModule, c: int, B: int, prec: int,
                 columns: list):
        self.module = module
        self.c = c
        self.B = B
        self.prec = prec
        self.columns = columns

    def column(self, k: int) -> LaurentSeries:
        return self.columns[k + self.c]

    def window_coords(self, s: LaurentSeries) -> list:
        return [s.coefficient(j) for j in range(1, self.c + 1)]

    def matrix_rows(self) -> list:
        """c x (B+c+1) window matrix; column k+c holds pi_W(exp(x^k))."""
        cols = [self.window_coords(y) for y in self.columns]
        return [[cols[i][j] for i in range(len(cols))] for j in range(self.c)]

    def params(self) -> dict:
        return {"c": self.c, "B": self.B, "N": self.prec}


def _phi_t_step(module: DrinfeldModule, y: LaurentSeries) -> LaurentSeries:
    """phi_t(y) = x*y + sum a_j y^(q^j) in exact series arithmetic."""
    acc = y.shift(-1)
    zp = y
    for j in range(1, module.rank + 1):
        zp = zp.qpow()
        a = module.coeffs[j - 1]
        if a.is_zero():
            continue
        aser = LaurentSeries.from_poly(
            a, zp.precision + max(0, -zp.valuation) + 1, module.var)
        acc = acc + aser * zp
    return acc


def exp_window(module: DrinfeldModule, c: int | None = None,
               B: int | None = None, prec: int | None = None) -> UnitsWindow:
    """Build the column data.  The positive part of the seed exp(x^-c) is
    evaluated once; later columns use exp(x^(k+1)) = phi_t(exp(x^k)),
    truncated back to positive exponents each step (legitimate: the
    polynomial part of a column never contributes to the positive part of
    the next one).  The known exponent range shrinks by a bounded amount
    per step; the seed padding is escalated until every column still
    clears `prec`."""
    if c is None:
        c = max(1, module.ball_exponent()) + 1
    if B is None:
        B = max(c, module.rank) + 2
    if prec is None:
        prec = c + 2
    if c < module.ball_exponent():
        raise ValueError("window depth c below the certified ball exponent")
    if c < 1 or B < 0:
        raise ValueError("window needs c >= 1 and B >= 0")
    steps = B + c
    pad = steps * (1 + module._maxdeg) + 4
    for _ in range(_RETRY):
        n0 = prec + pad
        seed = module.exp_eval(
            LaurentSeries.monomial(module.field, c, n0 + 2, module.var),
            n0).tail_from(1)
        cols = [seed]
        y = seed
        for _ in range(steps):
            y = _phi_t_step(module, y).tail_from(1)
            cols.append(y)
        if min(col.precision for col in cols) >= prec:
            w = UnitsWindow(module, c, B, prec,
                            [col.truncate(prec) for col in cols])
            base = w.window_coords(seed)
            if base[-1] != 1 or any(base[:-1]):
                raise WindowError("floor column does not project to u^c")
            return w
        pad *= 2
    raise PrecisionError("window columns kept losing precision")


def _window_tmap(module: DrinfeldModule, c: int) -> list:
    """Columns of w -> pi_W(phi_t(w)) on W = <u^1..u^c>, computed on exact
    monomials."""
    F = module.field
    p0 = (c + 2) * (F.q ** module.rank) + module._maxdeg + 2
    cols = []
    for j in range(1, c + 1):
        img = _phi_t_step(module,
                          LaurentSeries.monomial(F, j, p0, module.var))
        cols.append([img.coefficient(i) for i in range(1, c + 1)])
    return cols


class ClassModule:
    """The quotient W/S with its induced t-action."""

    def __init__(self, dim: int, t_matrix: list, fitting: Poly, s_dim: int,
                 window: UnitsWindow):
        self.dim = dim
        self.t_matrix = t_matrix
        self.fitting = fitting
        self.s_dim = s_dim
        self.window = window

    def to_json(self) -> dict:
        return {"dim": self.dim, "fitting": self.fitting.to_str(),
                "window": self.window.params()}


def class_module(module: DrinfeldModule, window: UnitsWindow | None = None,
                 **kw) -> ClassModule:
    """W/S with the t-action induced by phi_t.  S is saturated under the
    window map before quotienting; each added vector is the projection of
    phi_t applied to an element of exp(K) + R, so saturation never
    enlarges the span beyond its target."""
    if window is None:
        window = exp_window(module, **kw)
    F = module.field
    c = window.c
    tcols = _window_tmap(module, c)

    def tmap(vec):
        out = [0] * c
        for j, v in enumerate(vec):
            if not v:
                continue
            col = tcols[j]
            for i in range(c):
                if col[i]:
                    out[i] = F.add(out[i], F.mul(v, col[i]))
        return out

    basis, pivots = _basis_of(
        F, [window.window_coords(y) for y in window.columns])
    for _ in range(c + 1):
        grown, piv2 = _basis_of(F, basis + [tmap(b) for b in basis])
        done = len(grown) == len(basis)
        basis, pivots = grown, piv2
        if done:
            break
    else:
        raise WindowError("window span failed to saturate")
    piv_set = set(pivots)
    comp = [j for j in range(c) if j not in piv_set]

    def reduce_mod(vec):
        v = vec[:]
        for row, pc in zip(basis, pivots):
            if v[pc]:
                coef = v[pc]
                v = [F.sub(a, F.mul(coef, b)) for a, b in zip(v, row)]
        return v

    images = []
    for j in comp:
        e = [0] * c
        e[j] = 1
        red = reduce_mod(tmap(e))
        images.append([red[i] for i in comp])
    rows_t = [[images[j][i] for j in range(len(comp))]
              for i in range(len(comp))]
    fit = fitting_generator(RingMatrix(F, rows_t), F, "t")
    return ClassModule(len(comp), rows_t, fit, len(basis), window)


class UnitData:
    """A generator z of {z in K : exp(z) in R}, as a certified series."""

    def __init__(self, series: LaurentSeries, top_degree: int,
                 kernel_dim: int, exp_polynomial: Poly, window: UnitsWindow):
        self.series = series
        self.top_degree = top_degree
        self.kernel_dim = kernel_dim
        self.exp_polynomial = exp_polynomial
        self.window = window

    def to_json(self) -> dict:
        return {"unit": self.series.to_json(),
                "top_degree": self.top_degree,
                "exp_image": self.exp_polynomial.to_str(),
                "window": self.window.params()}


def unit_generator(module: DrinfeldModule, prec: int | None = None,
                   window: UnitsWindow | None = None, **kw) -> UnitData:
    """Refine the minimal-top-degree kernel vector of the window matrix to
    z with exp(z) in R exactly, normalized to leading coefficient 1.

    The image exp(sum g_k x^k) is recomputed from scratch by exp_eval
    rather than from the columns, so its vanishing window part doubles as
    a cross-check of the column iteration.  Generation is certified by
    checking that the x-multiples of z span the whole kernel."""
    F = module.field
    if window is None:
        window = exp_window(module, **kw)
    c, B = window.c, window.B
    nu = max(prec if prec is not None else 0, c + B + 2)
    ker = kernel_basis(F, window.matrix_rows(), B + c + 1)
    widen = 0
    while not ker and widen < 3:
        # no unit of top degree <= B yet: widen the column range
        widen += 1
        window = exp_window(module, c=c, B=B + 2 * widen, prec=window.prec)
        B = window.B
        nu = max(nu, c + B + 2)
        ker = kernel_basis(F, window.matrix_rows(), B + c + 1)
    if not ker:
        raise WindowError("no unit found; column range exhausted")

    # echelonize against the top (largest k) coordinates: the last row of
    # the reversed reduction is the unique minimal-top-degree line
    rev, _ = rref(F, [list(reversed(v)) for v in ker])
    g = list(reversed(rev[len(ker) - 1]))
    top = max(i for i, v in enumerate(g) if v)
    if g[top] != 1:
        inv = F.inv(g[top])
        g = [F.mul(inv, v) for v in g]
    d0 = top - c

    u_raw = LaurentSeries(F, c - top, [g[top - j] for j in range(top + 1)],
                          nu + top + 8, module.var)
    exp_u = module.exp_eval(u_raw, nu)
    if any(window.window_coords(exp_u)):
        raise WindowError("kernel vector has nonzero window part")
    residual = exp_u.tail_from(1)
    if not residual.is_zero() and residual.valuation <= c:
        raise WindowError("refinement residual enters the window")
    if residual.is_zero():
        unit = u_raw.truncate(nu)
    else:
        unit = u_raw - module.log_eval(residual, nu)
    ppart = exp_u.polynomial_part()

    # the kernel must be exactly the box projection of the x-multiples
    ncols = B + c + 1
    boxes = [[unit.coefficient(c - i + m) for i in range(ncols)]
             for m in range(B - d0 + 1)]
    want = B - d0 + 1
    if not (len(ker) == want
            and rank(F, boxes) == want
            and rank(F, ker + boxes) == want):
        raise WindowError("unit multiples do not span the window kernel")
    return UnitData(unit, d0, len(ker), ppart, window)


class CnfReport:
    def __init__(self, class_dim: int, fitting: Poly, unit: UnitData,
                 alpha, residual, lreport, window: UnitsWindow):
        self.class_dim = class_dim
        self.fitting = fitting
        self.unit = unit
        self.alpha = alpha          # packed field value, or None on failure
        self.residual = residual    # None, or the mismatch series
        self.lreport = lreport
        self.window = window

    @property
    def ok(self) -> bool:
        return self.alpha is not None

    def to_json(self) -> dict:
        out = {
            "class_dim": self.class_dim,
            "fitting": self.fitting.to_str(),
            "unit": self.unit.series.to_json(),
            "alpha": (self.window.module.field.coeff_str(self.alpha)
                      if self.alpha is not None else "FAIL"),
            "window": self.window.params(),
        }
        if self.residual is not None:
            out["residual"] = self.residual.to_str()
        return out


def verify_cnf(module: DrinfeldModule, prec: int, threads: int = 1,
               c: int | None = None, B: int | None = None) -> CnfReport:
    """Check fitting(x) * unit = alpha * (special value) modulo u^prec with
    alpha a nonzero constant; report alpha, or the residual on failure.
    The two sides come from disjoint pipelines: window/kernel refinement
    on the left, the Euler product on the right."""
    if prec < 1:
        raise ValueError("prec must be positive")
    F = module.field
    window = exp_window(module, c=c, B=B)
    cm = class_module(module, window=window)
    nu = prec + cm.fitting.degree() + window.B + 2
    ud = unit_generator(module, prec=nu, window=window)
    lrep = l_value(module, prec, threads=threads)

    gx = cm.fitting.rename(module.var)
    gser = LaurentSeries.from_poly(
        gx, ud.series.precision + gx.degree() + 1, module.var)
    lhs = (gser * ud.series).truncate(prec)
    rv = lrep.value
    rhs = LaurentSeries(F, rv.valuation, list(rv.coeffs), rv.precision,
                        module.var)
    diff_prec = min(lhs.precision, rhs.precision)
    alpha = None
    if (not lhs.is_zero() and not rhs.is_zero()
            and lhs.valuation == rhs.valuation):
        cand = F.mul(lhs.coefficient(lhs.valuation),
                     F.inv(rhs.coefficient(rhs.valuation)))
        if lhs.agrees_with(rhs.scale(cand), diff_prec):
            alpha = cand
    residual = None
    if alpha is None:
        residual = (lhs - rhs).truncate(diff_prec)
    return CnfReport(cm.dim, cm.fitting, ud, alpha, residual, lrep, ud.window)
