"""Dense exact linear algebra over Q and GF(p).

Everything reduces to Gaussian elimination with exact arithmetic and
deterministic (first nonzero) pivoting.  Matrices are small throughout the
package, so no effort is spent on asymptotics beyond plain elimination.
"""

from __future__ import annotations

from .errors import ContainmentError, DimError
from .fields import Field


class Mat:
    """Dense matrix over a Field; rows is a list of lists of scalars."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows, ncols: int | None = None):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            for r in self.rows:
                if len(r) != self.ncols:
                    raise DimError("ragged rows")
        else:
            if ncols is None:
                ncols = 0
            self.ncols = ncols

    # -- constructors ---------------------------------------------------
    @staticmethod
    def zero(field: Field, nrows: int, ncols: int) -> "Mat":
        z = field.zero
        return Mat(field, [[z] * ncols for _ in range(nrows)], ncols)

    @staticmethod
    def identity(field: Field, n: int) -> "Mat":
        m = Mat.zero(field, n, n)
        for i in range(n):
            m.rows[i][i] = field.one
        return m

    @staticmethod
    def from_columns(field: Field, cols, nrows: int) -> "Mat":
        m = Mat.zero(field, nrows, len(cols))
        for j, c in enumerate(cols):
            for i in range(nrows):
                m.rows[i][j] = c[i]
        return m

    def copy(self) -> "Mat":
        return Mat(self.field, self.rows, self.ncols)

    def column(self, j: int) -> list:
        return [self.rows[i][j] for i in range(self.nrows)]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.ncols)]

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "Mat") -> "Mat":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimError("shape mismatch in add")
        f = self.field
        return Mat(
            f,
            [
                [f.add(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
            self.ncols,
        )

    def __sub__(self, other: "Mat") -> "Mat":
        return self + other.scale(self.field.neg(self.field.one))

    def scale(self, c) -> "Mat":
        f = self.field
        return Mat(f, [[f.mul(c, a) for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise DimError(f"matmul {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        f = self.field
        out = Mat.zero(f, self.nrows, other.ncols)
        for i in range(self.nrows):
            ri = self.rows[i]
            oi = out.rows[i]
            for k in range(self.ncols):
                a = ri[k]
                if f.is_zero(a):
                    continue
                rk = other.rows[k]
                for j in range(other.ncols):
                    b = rk[j]
                    if not f.is_zero(b):
                        oi[j] = f.add(oi[j], f.mul(a, b))
        return out

    def apply(self, vec: list) -> list:
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise DimError("vector length mismatch")
        f = self.field
        out = [f.zero] * self.nrows
        for i in range(self.nrows):
            acc = f.zero
            for j, a in enumerate(self.rows[i]):
                if not f.is_zero(a) and not f.is_zero(vec[j]):
                    acc = f.add(acc, f.mul(a, vec[j]))
            out[i] = acc
        return out

    def transpose(self) -> "Mat":
        return Mat(
            self.field,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.nrows,
        )

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(a) for r in self.rows for a in r)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"Mat({self.nrows}x{self.ncols} over {self.field})"

    # -- elimination ------------------------------------------------------
    def rref(self) -> tuple["Mat", list[int]]:
        """Reduced row echelon form and the list of pivot columns."""
        f = self.field
        m = self.copy()
        pivots: list[int] = []
        row = 0
        for col in range(m.ncols):
            sel = None
            for i in range(row, m.nrows):
                if not f.is_zero(m.rows[i][col]):
                    sel = i
                    break
            if sel is None:
                continue
            m.rows[row], m.rows[sel] = m.rows[sel], m.rows[row]
            inv = f.inv(m.rows[row][col])
            m.rows[row] = [f.mul(inv, a) for a in m.rows[row]]
            for i in range(m.nrows):
                if i != row and not f.is_zero(m.rows[i][col]):
                    c = m.rows[i][col]
                    m.rows[i] = [
                        f.sub(a, f.mul(c, b)) for a, b in zip(m.rows[i], m.rows[row])
                    ]
            pivots.append(col)
            row += 1
            if row == m.nrows:
                break
        return m, pivots


def rank(m: Mat) -> int:
    if m.field.p == 2:
        return _rank_gf2(m)
    return len(m.rref()[1])


def _rank_gf2(m: Mat) -> int:
    """Bit-packed elimination over GF(2)."""
    rows = []
    for r in m.rows:
        acc = 0
        for j, v in enumerate(r):
            if v:
                acc |= 1 << j
        if acc:
            rows.append(acc)
    rk = 0
    pivots = []
    for acc in rows:
        for p in pivots:
            low = p & -p
            if acc & low:
                acc ^= p
        if acc:
            pivots.append(acc)
            rk += 1
    return rk


def kernel_basis(m: Mat) -> Mat:
    """Columns form a basis of the right null space of m."""
    f = m.field
    r, pivots = m.rref()
    free = [j for j in range(m.ncols) if j not in pivots]
    cols = []
    for j in free:
        v = [f.zero] * m.ncols
        v[j] = f.one
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(r.rows[i][j])
        cols.append(v)
    return Mat.from_columns(f, cols, m.ncols)


def solve(a: Mat, b: Mat) -> Mat | None:
    """Some x with a @ x = b, or None if the system is inconsistent."""
    if a.nrows != b.nrows:
        raise DimError("solve: row mismatch")
    f = a.field
    aug = Mat(f, [ra + rb for ra, rb in zip(a.rows, b.rows)], a.ncols + b.ncols)
    r, pivots = aug.rref()
    for i, pc in enumerate(pivots):
        if pc >= a.ncols:
            return None
    x = Mat.zero(f, a.ncols, b.ncols)
    for i, pc in enumerate(pivots):
        for j in range(b.ncols):
            x.rows[pc][j] = r.rows[i][a.ncols + j]
    return x


def solve_vec(a: Mat, b: list) -> list | None:
    x = solve(a, Mat.from_columns(a.field, [b], a.nrows))
    return None if x is None else x.column(0)


def column_span_contains(space: Mat, vec: list) -> bool:
    return solve_vec(space, vec) is not None


def quotient_dim(space: Mat, subspace: Mat) -> int:
    """dim span(space) - dim span(subspace); subspace must lie inside."""
    if space.nrows != subspace.nrows:
        raise DimError("ambient dimensions differ")
    for j in range(subspace.ncols):
        if not column_span_contains(space, subspace.column(j)):
            raise ContainmentError("subspace not contained in span of space")
    return rank(space) - rank(subspace)


def column_space_basis(m: Mat) -> Mat:
    """Subset of columns forming a basis of the column span."""
    _, pivots = m.rref()
    return Mat.from_columns(m.field, [m.column(j) for j in pivots], m.nrows)


def hstack(ms: list[Mat]) -> Mat:
    if not ms:
        raise DimError("hstack of nothing")
    f = ms[0].field
    n = ms[0].nrows
    for m in ms:
        if m.nrows != n:
            raise DimError("hstack: row mismatch")
    return Mat(f, [sum((m.rows[i] for m in ms), []) for i in range(n)])


def vstack(ms: list[Mat]) -> Mat:
    if not ms:
        raise DimError("vstack of nothing")
    c = ms[0].ncols
    for m in ms:
        if m.ncols != c:
            raise DimError("vstack: col mismatch")
    return Mat(ms[0].field, [r for m in ms for r in m.rows], c)


def intersect_column_spans(a: Mat, b: Mat) -> Mat:
    """Basis of span(a) ∩ span(b) as columns."""
    if a.nrows != b.nrows:
        raise DimError("ambient mismatch")
    f = a.field
    if a.ncols == 0 or b.ncols == 0:
        return Mat.zero(f, a.nrows, 0)
    neg = b.scale(f.neg(f.one))
    ker = kernel_basis(hstack([a, neg]))
    cols = []
    for j in range(ker.ncols):
        coeffs = ker.column(j)[: a.ncols]
        cols.append(a.apply(coeffs))
    m = Mat.from_columns(f, cols, a.nrows)
    return column_space_basis(m)


def invert(m: Mat) -> Mat | None:
    """Inverse of a square matrix, or None if singular."""
    if m.nrows != m.ncols:
        raise DimError("invert: not square")
    x = solve(m, Mat.identity(m.field, m.nrows))
    if x is None:
        return None
    if not (m @ x == Mat.identity(m.field, m.nrows)):
        return None
    return x
