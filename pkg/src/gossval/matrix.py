"""Matrices over ring contexts.

det uses cofactor expansion, which is valid over any commutative carrier
(the nilpotent coefficient rings included); fraction-free (Bareiss)
elimination is provided for integral-domain carriers and must agree.
charpoly is det(X*I - M) computed over carrier[X], monic by construction.
Sizes in this library stay small (<= ~10), so O(n!) cofactor cost is a
non-issue and exactness is what matters.
"""

from __future__ import annotations

from .fields import Fq
from .poly import Poly
from .rings import PolyRing, QuotPolyRing


class RingMatrix:
    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring, rows):
        self.ring = ring
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        assert all(len(r) == self.ncols for r in self.rows), "ragged matrix"

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring, m, n):
        return cls(ring, [[ring.zero] * n for _ in range(m)])

    def copy(self):
        return RingMatrix(self.ring, self.rows)

    def __add__(self, other):
        R = self.ring
        assert (self.nrows, self.ncols) == (other.nrows, other.ncols)
        return RingMatrix(R, [[R.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        R = self.ring
        return RingMatrix(R, [[R.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        R = self.ring
        return RingMatrix(R, [[R.neg(a) for a in row] for row in self.rows])

    def __mul__(self, other):
        R = self.ring
        assert self.ncols == other.nrows, "shape mismatch"
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = R.zero
                for m in range(self.ncols):
                    a = self.rows[i][m]
                    if not R.is_zero(a):
                        acc = R.add(acc, R.mul(a, other.rows[m][j]))
                row.append(acc)
            out.append(row)
        return RingMatrix(R, out)

    def smul(self, c):
        R = self.ring
        return RingMatrix(R, [[R.mul(c, a) for a in row] for row in self.rows])

    def apply(self, vec):
        R = self.ring
        out = []
        for i in range(self.nrows):
            acc = R.zero
            for m in range(self.ncols):
                a = self.rows[i][m]
                if not R.is_zero(a):
                    acc = R.add(acc, R.mul(a, vec[m]))
            out.append(acc)
        return out

    def transpose(self):
        return RingMatrix(self.ring, [list(col) for col in zip(*self.rows)] if self.rows else [])

    def map(self, fn):
        return RingMatrix(self.ring, [[fn(a) for a in row] for row in self.rows])

    def twist(self):
        """Entrywise tau-twist (ring.frobq)."""
        R = self.ring
        return self.map(R.frobq)

    def is_zero(self) -> bool:
        R = self.ring
        return all(R.is_zero(a) for row in self.rows for a in row)

    def __eq__(self, other):
        return (
            isinstance(other, RingMatrix)
            and self.ring == other.ring
            and self.rows == other.rows
        )

    def __repr__(self):
        R = self.ring
        body = "; ".join("[" + ", ".join(R.to_str(a) for a in row) + "]" for row in self.rows)
        return f"Matrix[{body}]"

    # -- determinants ------------------------------------------------------

    def det(self):
        assert self.nrows == self.ncols, "determinant of non-square matrix"
        return _det_cofactor(self.ring, self.rows)

    def det_fraction_free(self):
        """Bareiss elimination; requires an integral domain carrier with
        exact division (PolyRing over a field, or a field itself)."""
        assert self.nrows == self.ncols
        n = self.nrows
        R = self.ring
        if n == 0:
            return R.one
        a = [row[:] for row in self.rows]
        sign = False
        prev = R.one
        for k in range(n - 1):
            if R.is_zero(a[k][k]):
                for i in range(k + 1, n):
                    if not R.is_zero(a[i][k]):
                        a[k], a[i] = a[i], a[k]
                        sign = not sign
                        break
                else:
                    return R.zero
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = R.sub(R.mul(a[i][j], a[k][k]), R.mul(a[i][k], a[k][j]))
                    a[i][j] = _exact_div(R, num, prev)
                a[i][k] = R.zero
            prev = a[k][k]
        d = a[n - 1][n - 1]
        return R.neg(d) if sign else d

    def charpoly(self):
        """Coefficients of det(X*I - M), low-to-high in X; monic, length n+1."""
        assert self.nrows == self.ncols
        n = self.nrows
        R = self.ring
        PX = PolyRing(R, "X")
        if n == 0:
            return [R.one]
        ent = []
        for i in range(n):
            row = []
            for j in range(n):
                if i == j:
                    row.append(PX.add((R.neg(self.rows[i][j]),), (R.zero, R.one)))
                else:
                    row.append(PX.const(R.neg(self.rows[i][j])))
            ent.append(row)
        cp = _det_cofactor(PX, ent)
        out = list(cp) + [R.zero] * (n + 1 - len(cp))
        return out

    def inverse(self):
        """Gauss-Jordan with unit pivots; valid over fields and over local
        rings when the determinant is a unit."""
        R = self.ring
        n = self.nrows
        assert n == self.ncols
        a = [row[:] + [R.one if i == j else R.zero for j in range(n)] for i, row in enumerate(self.rows)]
        for k in range(n):
            piv = None
            for i in range(k, n):
                if R.is_unit(a[i][k]):
                    piv = i
                    break
            if piv is None:
                raise ZeroDivisionError("matrix not invertible over the carrier")
            a[k], a[piv] = a[piv], a[k]
            inv = R.inv(a[k][k])
            a[k] = [R.mul(inv, v) for v in a[k]]
            for i in range(n):
                if i != k and not R.is_zero(a[i][k]):
                    c = a[i][k]
                    a[i] = [R.sub(v, R.mul(c, w)) for v, w in zip(a[i], a[k])]
        return RingMatrix(R, [row[n:] for row in a])


def _det_cofactor(R, rows):
    n = len(rows)
    if n == 0:
        return R.one
    if n == 1:
        return rows[0][0]
    if n == 2:
        return R.sub(R.mul(rows[0][0], rows[1][1]), R.mul(rows[0][1], rows[1][0]))
    total = R.zero
    negate = False
    for j in range(n):
        c = rows[0][j]
        if not R.is_zero(c):
            minor = [[row[m] for m in range(n) if m != j] for row in rows[1:]]
            term = R.mul(c, _det_cofactor(R, minor))
            total = R.sub(total, term) if negate else R.add(total, term)
        negate = not negate
    return total


def _exact_div(R, a, b):
    if hasattr(R, "exact_div"):
        return R.exact_div(a, b)
    return R.mul(a, R.inv(b))


def fitting_generator(t_action: RingMatrix, field: Fq, var: str = "t") -> Poly:
    """Monic generator of the Fitting ideal of an F_q[t]-module presented as
    a t-action matrix over F_q: the characteristic polynomial.  The empty
    (0 x 0) matrix gives 1."""
    assert isinstance(t_action.ring, Fq) and t_action.ring == field
    return Poly(field, t_action.charpoly(), var)


# ---------------------------------------------------------------------------
# dense linear algebra over a field context (values are ring values)
# ---------------------------------------------------------------------------

def rref(S, rows):
    """Row-reduce over a field context.  Returns (reduced rows, pivot cols)."""
    a = [row[:] for row in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if not S.is_zero(a[i][c]):
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = S.inv(a[r][c])
        a[r] = [S.mul(inv, v) for v in a[r]]
        for i in range(m):
            if i != r and not S.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [S.sub(v, S.mul(f, w)) for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def rank(S, rows) -> int:
    return len(rref(S, rows)[1])


def kernel_basis(S, rows, ncols=None):
    """Basis of the right kernel over a field context."""
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    if not rows:
        return [[S.one if i == j else S.zero for i in range(n)] for j in range(n)]
    red, pivots = rref(S, rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [S.zero] * n
        vec[fc] = S.one
        for r, pc in enumerate(pivots):
            vec[pc] = S.neg(red[r][fc])
        basis.append(vec)
    return basis


def solve(S, rows, target):
    """One solution x of A x = b over a field context, or None."""
    if not rows:
        return None
    n = len(rows[0])
    aug = [row[:] + [t] for row, t in zip(rows, target)]
    red, pivots = rref(S, aug)
    if n in pivots:
        return None  # inconsistent
    x = [S.zero] * n
    for r, pc in enumerate(pivots):
        x[pc] = red[r][n]
    return x


def in_span(S, basis_rows, vec) -> bool:
    """Is vec in the row span of basis_rows over the field context S?"""
    if not basis_rows:
        return all(S.is_zero(v) for v in vec)
    cols = list(zip(*basis_rows))
    a = [list(c) for c in cols]
    return solve(S, a, vec) is not None


# ---------------------------------------------------------------------------
# Smith form over a chain ring F_q[z]/(z^e) (or k[z]/(z^e))
# ---------------------------------------------------------------------------

def smith_chain(lam: QuotPolyRing, M: RingMatrix):
    """Diagonalize M over the chain ring lam: returns (D, L, R) with
    L*M*R = D, L and R invertible, D diagonal with entries z^a (or 0).
    Every element of a chain ring is unit * z^a, so minimal-valuation
    pivoting always clears a cross."""
    assert M.ring == lam and lam.is_truncation
    e = lam.e
    m, n = M.nrows, M.ncols
    A = [row[:] for row in M.rows]
    L = RingMatrix.identity(lam, m).rows
    R = RingMatrix.identity(lam, n).rows

    def zshift_down(v, a):
        # divide by z^a (valuation known >= a)
        return tuple(v[a:]) if len(v) > a else ()

    for k in range(min(m, n)):
        best = None
        bestval = e
        for i in range(k, m):
            for j in range(k, n):
                va = lam.val(A[i][j])
                if va < bestval:
                    bestval = va
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != k:
            A[k], A[bi] = A[bi], A[k]
            L[k], L[bi] = L[bi], L[k]
        if bj != k:
            for row in A:
                row[k], row[bj] = row[bj], row[k]
            for row in R:
                row[k], row[bj] = row[bj], row[k]
        a = bestval
        unit = zshift_down(A[k][k], a)
        uinv = lam.inv(unit)
        A[k] = [lam.mul(uinv, v) for v in A[k]]
        L[k] = [lam.mul(uinv, v) for v in L[k]]
        # now A[k][k] = z^a exactly
        for i in range(m):
            if i != k and not lam.is_zero(A[i][k]):
                w = zshift_down(A[i][k], a)  # A[i][k] = w * z^a
                A[i] = [lam.sub(v, lam.mul(w, u)) for v, u in zip(A[i], A[k])]
                L[i] = [lam.sub(v, lam.mul(w, u)) for v, u in zip(L[i], L[k])]
        for j in range(n):
            if j != k and not lam.is_zero(A[k][j]):
                w = zshift_down(A[k][j], a)
                for row in A:
                    row[j] = lam.sub(row[j], lam.mul(w, row[k]))
                for rrow in R:
                    rrow[j] = lam.sub(rrow[j], lam.mul(w, rrow[k]))
    D = RingMatrix(lam, A)
    return D, RingMatrix(lam, L), RingMatrix(lam, R)


def chain_kernel_free_basis(lam: QuotPolyRing, M: RingMatrix):
    """Basis of ker(M) over the chain ring when the kernel is free, plus a
    free complement basis; returns (kernel columns, complement columns) or
    None when the kernel is not free (some elementary divisor z^a has
    0 < a < e)."""
    D, L, R = smith_chain(lam, M)
    niceties = []
    for k in range(min(M.nrows, M.ncols)):
        niceties.append(lam.val(D.rows[k][k]))
    kernel_cols = []
    complement_cols = []
    Rt = R.transpose().rows  # columns of R as rows
    for j in range(M.ncols):
        a = niceties[j] if j < len(niceties) else lam.e
        if a >= lam.e:
            kernel_cols.append(list(Rt[j]))
        elif a == 0:
            complement_cols.append(list(Rt[j]))
        else:
            return None
    return kernel_cols, complement_cols


def chain_is_surjective(lam: QuotPolyRing, M: RingMatrix) -> bool:
    D, _, _ = smith_chain(lam, M)
    if M.nrows > M.ncols:
        return False
    return all(lam.is_unit(D.rows[k][k]) for k in range(M.nrows))
