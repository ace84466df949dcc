"""Bounded complexes of finitely generated projectives and their homotopy
category: Hom spaces, cones, minimalization, endomorphism algebras,
exceptionality.

A ProjComplex stores, per degree, a multiplicity vector over the vertex
projectives and a differential whose (t, s) entry is an algebra element of
e_{w_t} A e_{v_s} acting by left multiplication.  Sign conventions: the
differential of X[1] is -d, and cone(f) has differential
[[d_Y, f], [0, -d_X]] on Y^d + X^{d+1}.
"""

from __future__ import annotations

import itertools
import random

from .algebra import BasedAlgebra
from .errors import (
    AlgebraMismatch,
    InvariantViolation,
    RecolleError,
    ShiftMismatch,
)
from .linalg import Mat, hstack, invert, kernel_basis, rank
from .modules import FDModule, proj_sum
from .verdicts import TriBool


def expand_mults(a: BasedAlgebra, mults) -> list[int]:
    """Summand vertex list, grouped by vertex like proj_sum's slots."""
    out = []
    for v, m in enumerate(mults):
        out.extend([v] * m)
    return out


class CornerMat:
    """Matrix of algebra elements between projective sums.

    rows: summand vertices of the target; cols: summand vertices of the
    source; entry (t, s) is an algebra coordinate vector lying in
    e_{rows[t]} A e_{cols[s]}."""

    __slots__ = ("algebra", "rows", "cols", "entries")

    def __init__(self, algebra, rows, cols, entries=None):
        self.algebra = algebra
        self.rows = list(rows)
        self.cols = list(cols)
        if entries is None:
            entries = [
                [algebra.zero_vec() for _ in self.cols] for _ in self.rows
            ]
        self.entries = entries

    def copy(self) -> "CornerMat":
        return CornerMat(
            self.algebra, self.rows, self.cols,
            [[list(e) for e in row] for row in self.entries],
        )

    def compose(self, other: "CornerMat") -> "CornerMat":
        """self after other (matrix product; entries multiply in A)."""
        a = self.algebra
        f = a.field
        if other.rows != self.cols:
            raise ShiftMismatch("corner matrix composition shape mismatch")
        out = CornerMat(a, self.rows, other.cols)
        for t in range(len(self.rows)):
            for s in range(len(other.cols)):
                acc = a.zero_vec()
                for k in range(len(self.cols)):
                    prod = a.mul(self.entries[t][k], other.entries[k][s])
                    acc = [f.add(x, y) for x, y in zip(acc, prod)]
                out.entries[t][s] = acc
        return out

    def add(self, other: "CornerMat", scale=None) -> "CornerMat":
        a = self.algebra
        f = a.field
        if scale is None:
            scale = f.one
        out = self.copy()
        for t in range(len(self.rows)):
            for s in range(len(self.cols)):
                out.entries[t][s] = [
                    f.add(x, f.mul(scale, y))
                    for x, y in zip(out.entries[t][s], other.entries[t][s])
                ]
        return out

    def scaled(self, c) -> "CornerMat":
        a = self.algebra
        f = a.field
        out = self.copy()
        for t in range(len(self.rows)):
            for s in range(len(self.cols)):
                out.entries[t][s] = [f.mul(c, x) for x in out.entries[t][s]]
        return out

    def is_zero(self) -> bool:
        f = self.algebra.field
        return all(
            f.is_zero(c) for row in self.entries for e in row for c in e
        )

    def is_radical(self) -> bool:
        """No entry has a component on an idempotent basis element."""
        a = self.algebra
        f = a.field
        for row in self.entries:
            for e in row:
                for i in a.idempotents:
                    if not f.is_zero(e[i]):
                        return False
        return True

    def expanded(self) -> Mat:
        """Module-level matrix in proj_sum coordinates."""
        a = self.algebra
        f = a.field
        src = proj_dim_offsets(a, self.cols)
        tgt = proj_dim_offsets(a, self.rows)
        out = Mat.zero(f, tgt[-1], src[-1])
        for t, w in enumerate(self.rows):
            tidx = vertex_basis_indices(a, w)
            for s, v in enumerate(self.cols):
                sidx = vertex_basis_indices(a, v)
                g = self.entries[t][s]
                if all(f.is_zero(c) for c in g):
                    continue
                for jn, j in enumerate(sidx):
                    img = a.mul(g, a.basis_vec(j))
                    for kn, k in enumerate(tidx):
                        out.rows[tgt[t] + kn][src[s] + jn] = img[k]
        return out

    def submatrix(self, row_sel, col_sel) -> "CornerMat":
        return CornerMat(
            self.algebra,
            [self.rows[t] for t in row_sel],
            [self.cols[s] for s in col_sel],
            [[list(self.entries[t][s]) for s in col_sel] for t in row_sel],
        )

    def json(self):
        return [[list(map(str, e)) for e in row] for row in self.entries]


def vertex_basis_indices(a: BasedAlgebra, v: int) -> list[int]:
    return [i for i in range(a.dim) if a.lv[i] == v]


def proj_dim_offsets(a: BasedAlgebra, verts: list[int]) -> list[int]:
    offs = [0]
    for v in verts:
        offs.append(offs[-1] + len(vertex_basis_indices(a, v)))
    return offs


def corner_from_expanded(a: BasedAlgebra, mat: Mat, rows, cols) -> CornerMat:
    """Recover corner entries from a module-level matrix between proj sums."""
    f = a.field
    out = CornerMat(a, rows, cols)
    src = proj_dim_offsets(a, cols)
    tgt = proj_dim_offsets(a, rows)
    for s, v in enumerate(cols):
        sidx = vertex_basis_indices(a, v)
        gen = sidx.index(a.idempotents[v])
        for t, w in enumerate(rows):
            tidx = vertex_basis_indices(a, w)
            g = a.zero_vec()
            for kn, k in enumerate(tidx):
                g[k] = mat.rows[tgt[t] + kn][src[s] + gen]
            out.entries[t][s] = g
    # validate: the expansion must reproduce the matrix
    if out.expanded() != mat:
        raise InvariantViolation("matrix is not a module map between proj sums")
    return out


# ---------------------------------------------------------------------------


class ProjComplex:
    """Bounded complex of projective right modules; cohomological grading,
    differentials d^n: X^n -> X^{n+1}."""

    def __init__(self, algebra: BasedAlgebra, comps: dict[int, list[int]],
                 diffs: dict[int, CornerMat]):
        self.algebra = algebra
        self.comps = {d: list(m) for d, m in comps.items() if any(m)}
        self.diffs = {}
        for d, cm in diffs.items():
            if d in self.comps and (d + 1) in self.comps:
                self.diffs[d] = cm
        self._mods: dict[int, FDModule] = {}

    # -- shape ----------------------------------------------------------
    @property
    def degrees(self) -> list[int]:
        return sorted(self.comps)

    @property
    def amplitude(self) -> int:
        degs = self.degrees
        return degs[-1] - degs[0] if degs else 0

    def is_zero(self) -> bool:
        return not self.comps

    def mult(self, d: int) -> list[int]:
        return self.comps.get(d, [0] * self.algebra.num_vertices)

    def summands(self, d: int) -> list[int]:
        return expand_mults(self.algebra, self.mult(d))

    def diff(self, d: int) -> CornerMat:
        if d in self.diffs:
            return self.diffs[d]
        return CornerMat(self.algebra, self.summands(d + 1), self.summands(d))

    def module_at(self, d: int) -> FDModule:
        if d not in self._mods:
            self._mods[d] = proj_sum(self.algebra, self.mult(d))
        return self._mods[d]

    def total_dim(self) -> int:
        return sum(self.module_at(d).dim for d in self.degrees)

    def component_total(self) -> int:
        """Total number of projective summands."""
        return sum(sum(m) for m in self.comps.values())

    def verify_d_squared(self):
        for d in self.degrees:
            if d + 2 in self.comps and d + 1 in self.comps:
                prod = self.diff(d + 1).compose(self.diff(d))
                if not prod.is_zero():
                    raise InvariantViolation(f"d^2 != 0 at degree {d}")

    def is_minimal(self) -> bool:
        return all(self.diff(d).is_radical() for d in self.diffs)

    # -- constructions ----------------------------------------------------
    def shift(self, n: int) -> "ProjComplex":
        f = self.algebra.field
        sign = f.one if n % 2 == 0 else f.neg(f.one)
        comps = {d - n: m for d, m in self.comps.items()}
        diffs = {d - n: cm.scaled(sign) for d, cm in self.diffs.items()}
        return ProjComplex(self.algebra, comps, diffs)

    def json(self):
        return {
            "components": {str(d): list(m) for d, m in sorted(self.comps.items())},
            "differentials": {str(d): cm.json() for d, cm in sorted(self.diffs.items())},
        }

    def __repr__(self):
        parts = " -> ".join(
            f"[{d}]{self.mult(d)}" for d in self.degrees
        )
        return f"ProjComplex({parts or '0'})"


def stalk_complex(a: BasedAlgebra, mults, degree: int = 0) -> ProjComplex:
    return ProjComplex(a, {degree: list(mults)}, {})


def proj_stalk(a: BasedAlgebra, v: int, degree: int = 0) -> ProjComplex:
    mults = [0] * a.num_vertices
    mults[v] = 1
    return stalk_complex(a, mults, degree)


def two_term_complex(a: BasedAlgebra, src_mults, tgt_mults, entries,
                     low_degree: int = -1) -> ProjComplex:
    """[src -> tgt] with src in degree low_degree."""
    cm = CornerMat(a, expand_mults(a, tgt_mults), expand_mults(a, src_mults),
                   entries)
    return ProjComplex(
        a,
        {low_degree: list(src_mults), low_degree + 1: list(tgt_mults)},
        {low_degree: cm},
    )


def direct_sum_complex(x: ProjComplex, y: ProjComplex) -> ProjComplex:
    if x.algebra is not y.algebra:
        raise AlgebraMismatch("direct sum over different algebras")
    a = x.algebra
    comps = {}
    for d in set(x.comps) | set(y.comps):
        comps[d] = [mx + my for mx, my in zip(x.mult(d), y.mult(d))]
    diffs = {}
    for d in comps:
        if d + 1 not in comps:
            continue
        rows = expand_mults(a, comps[d + 1])
        cols = expand_mults(a, comps[d])
        cm = CornerMat(a, rows, cols)
        dx, dy = x.diff(d), y.diff(d)
        # vertex-grouped summand order: x-copies precede y-copies per vertex
        rmap_x, rmap_y = _sum_maps(a, x.mult(d + 1), y.mult(d + 1))
        cmap_x, cmap_y = _sum_maps(a, x.mult(d), y.mult(d))
        for t in range(len(dx.rows)):
            for s in range(len(dx.cols)):
                cm.entries[rmap_x[t]][cmap_x[s]] = list(dx.entries[t][s])
        for t in range(len(dy.rows)):
            for s in range(len(dy.cols)):
                cm.entries[rmap_y[t]][cmap_y[s]] = list(dy.entries[t][s])
        if not cm.is_zero():
            diffs[d] = cm
    return ProjComplex(a, comps, diffs)


def _sum_maps(a, mx, my):
    """Positions of x-summands and y-summands inside the merged
    vertex-grouped summand list."""
    xmap, ymap = [], []
    pos = 0
    for v in range(len(mx)):
        for _ in range(mx[v]):
            xmap.append(pos)
            pos += 1
        for _ in range(my[v]):
            ymap.append(pos)
            pos += 1
    return xmap, ymap


# ---------------------------------------------------------------------------
# chain maps


class ChainMap:
    """Chain map x -> y[shift]; per-degree corner matrices f^d: x^d ->
    y^{d+shift}, commuting with the shifted differentials."""

    def __init__(self, source: ProjComplex, target: ProjComplex, shift: int,
                 mats: dict[int, CornerMat]):
        self.source = source
        self.target = target
        self.shift = shift
        self.mats = mats

    def mat(self, d: int) -> CornerMat:
        if d in self.mats:
            return self.mats[d]
        return CornerMat(
            self.source.algebra,
            expand_mults(self.source.algebra, self.target.mult(d + self.shift)),
            self.source.summands(d),
        )

    def verify(self):
        x, y, n = self.source, self.target, self.shift
        f = x.algebra.field
        sign = f.one if n % 2 == 0 else f.neg(f.one)
        for d in set(list(x.comps) + [d - 1 for d in x.comps]):
            # d_{y[n]} f^d = f^{d+1} d_x^d with d_{y[n]} = (-1)^n d_y
            lhs = y.diff(d + n).scaled(sign).compose(self.mat(d))
            rhs = self.mat(d + 1).compose(x.diff(d))
            if not lhs.add(rhs, f.neg(f.one)).is_zero():
                raise InvariantViolation(f"chain condition fails at degree {d}")

    def is_zero(self) -> bool:
        return all(cm.is_zero() for cm in self.mats.values())


# -- the chain-map / homotopy linear systems ---------------------------------


class _EntryIndexer:
    """Coordinates for spaces of corner matrices: one scalar unknown per
    (degree, target summand, source summand, corner basis element)."""

    def __init__(self, a: BasedAlgebra, blocks):
        # blocks: dict degree -> (rows, cols) summand vertex lists
        self.algebra = a
        self.blocks = blocks
        self.index = {}
        self.slots = []
        for d in sorted(blocks):
            rows, cols = blocks[d]
            for t, w in enumerate(rows):
                for s, v in enumerate(cols):
                    for i in a.corner_indices(w, v):
                        self.index[(d, t, s, i)] = len(self.slots)
                        self.slots.append((d, t, s, i))

    @property
    def nunknowns(self):
        return len(self.slots)

    def assemble(self, vec) -> dict[int, CornerMat]:
        a = self.algebra
        out = {}
        for d in sorted(self.blocks):
            rows, cols = self.blocks[d]
            cm = CornerMat(a, rows, cols)
            out[d] = cm
        for n, (d, t, s, i) in enumerate(self.slots):
            c = vec[n]
            if not a.field.is_zero(c):
                out[d].entries[t][s][i] = a.field.add(out[d].entries[t][s][i], c)
        return {d: cm for d, cm in out.items()}


def _chain_blocks(x: ProjComplex, y: ProjComplex, n: int):
    blocks = {}
    for d in x.degrees:
        rows = expand_mults(x.algebra, y.mult(d + n))
        cols = x.summands(d)
        if rows and cols:
            blocks[d] = (rows, cols)
    return blocks


def _homotopy_blocks(x: ProjComplex, y: ProjComplex, n: int):
    blocks = {}
    for d in x.degrees:
        rows = expand_mults(x.algebra, y.mult(d + n - 1))
        cols = x.summands(d)
        if rows and cols:
            blocks[d] = (rows, cols)
    return blocks


def _chain_condition_rows(x, y, n, indexer):
    """Rows of the linear system d_{y[n]} f - f d_x = 0 over the unknowns."""
    a = x.algebra
    f = a.field
    sign = f.one if n % 2 == 0 else f.neg(f.one)
    rows = []
    degs = sorted(set(x.degrees) | {d - 1 for d in x.degrees})
    for d in degs:
        tgt_rows = expand_mults(a, y.mult(d + 1 + n))
        src_cols = x.summands(d)
        if not tgt_rows or not src_cols:
            continue
        # condition entry (t, s) is an algebra element equation
        dy = y.diff(d + n)
        dx = x.diff(d)
        cond = {}
        # (-1)^n d_y . f^d
        if d in indexer.blocks:
            rws, cls = indexer.blocks[d]
            for t in range(len(tgt_rows)):
                for k in range(len(rws)):
                    g = dy.entries[t][k]
                    if all(f.is_zero(c) for c in g):
                        continue
                    for s in range(len(cls)):
                        for i in a.corner_indices(rws[k], cls[s]):
                            col = indexer.index[(d, k, s, i)]
                            prod = a.mul(g, a.basis_vec(i))
                            for bi, c in enumerate(prod):
                                if not f.is_zero(c):
                                    cell = cond.setdefault((t, s, bi), {})
                                    cell[col] = f.add(cell.get(col, f.zero),
                                                      f.mul(sign, c))
        # - f^{d+1} . d_x
        if d + 1 in indexer.blocks:
            rws, cls = indexer.blocks[d + 1]
            for k in range(len(cls)):
                for s in range(len(src_cols)):
                    g = dx.entries[k][s]
                    if all(f.is_zero(c) for c in g):
                        continue
                    for t in range(len(rws)):
                        for i in a.corner_indices(rws[t], cls[k]):
                            col = indexer.index[(d + 1, t, k, i)]
                            prod = a.mul(a.basis_vec(i), g)
                            for bi, c in enumerate(prod):
                                if not f.is_zero(c):
                                    cell = cond.setdefault((t, s, bi), {})
                                    cell[col] = f.add(cell.get(col, f.zero),
                                                      f.neg(c))
        for key in sorted(cond):
            entry = cond[key]
            row = [f.zero] * indexer.nunknowns
            for col, c in entry.items():
                row[col] = c
            rows.append(row)
    return rows


def _boundary_matrix(x, y, n, h_indexer, f_indexer):
    """Matrix of h -> d_{y[n]} h + h d_x from homotopy coords to map coords."""
    a = x.algebra
    f = a.field
    sign = f.one if n % 2 == 0 else f.neg(f.one)
    cols = []
    for hn in range(h_indexer.nunknowns):
        vec = [f.zero] * h_indexer.nunknowns
        vec[hn] = f.one
        hmats = h_indexer.assemble(vec)
        out = [f.zero] * f_indexer.nunknowns
        for d, hm in hmats.items():
            # d_{y[n]} h^d : x^d -> y^{d+n}
            dy = y.diff(d + n - 1).scaled(sign)
            comp = dy.compose(hm)
            _accumulate(out, f_indexer, d, comp)
            # h^{d+1} d_x^d : x^d -> y^{d+n}
            if d - 1 in x.comps:
                comp2 = hm.compose(x.diff(d - 1))
                _accumulate(out, f_indexer, d - 1, comp2)
        cols.append(out)
    return Mat.from_columns(f, cols, f_indexer.nunknowns)


def _accumulate(out, f_indexer, d, cm: CornerMat):
    a = cm.algebra
    f = a.field
    if d not in f_indexer.blocks:
        if not cm.is_zero():
            raise InvariantViolation("boundary lands outside map blocks")
        return
    rows, cols = f_indexer.blocks[d]
    for t in range(len(rows)):
        for s in range(len(cols)):
            for i, c in enumerate(cm.entries[t][s]):
                if f.is_zero(c):
                    continue
                key = (d, t, s, i)
                if key not in f_indexer.index:
                    raise InvariantViolation("entry outside its corner space")
                out[f_indexer.index[key]] = f.add(out[f_indexer.index[key]], c)


class HomotopyClassSpace:
    def __init__(self, dim, chainmap_basis, nullhomotopic_dim, cycle_dim):
        self.dim = dim
        self.chainmap_basis = chainmap_basis
        self.nullhomotopic_dim = nullhomotopic_dim
        self.cycle_dim = cycle_dim

    def __repr__(self):
        return f"HomotopyClassSpace(dim={self.dim})"


def hom_dim(x: ProjComplex, y: ProjComplex, n: int) -> HomotopyClassSpace:
    """Hom_{K^b(proj)}(x, y[n]) with explicit representatives."""
    if x.algebra is not y.algebra:
        raise AlgebraMismatch("hom between complexes over different algebras")
    a = x.algebra
    f = a.field
    f_idx = _EntryIndexer(a, _chain_blocks(x, y, n))
    if f_idx.nunknowns == 0:
        return HomotopyClassSpace(0, [], 0, 0)
    rows = _chain_condition_rows(x, y, n, f_idx)
    sysm = Mat(f, rows, f_idx.nunknowns) if rows else Mat.zero(f, 0, f_idx.nunknowns)
    cycles = kernel_basis(sysm)
    h_idx = _EntryIndexer(a, _homotopy_blocks(x, y, n))
    if h_idx.nunknowns:
        bmat = _boundary_matrix(x, y, n, h_idx, f_idx)
    else:
        bmat = Mat.zero(f, f_idx.nunknowns, 0)
    brank = rank(bmat)
    dim = cycles.ncols - brank
    # representatives: cycle columns independent modulo boundaries
    reps = []
    if dim > 0:
        combined = hstack([bmat, cycles])
        _, pivots = combined.rref()
        for p in pivots:
            if p >= bmat.ncols:
                vec = cycles.column(p - bmat.ncols)
                reps.append(ChainMap(x, y, n, f_idx.assemble(vec)))
    return HomotopyClassSpace(dim, reps, brank, cycles.ncols)


def identity_chain_map(x: ProjComplex) -> ChainMap:
    return ChainMap(
        x, x, 0, {d: _identity_corner(x.algebra, x.summands(d)) for d in x.degrees}
    )


def cone(fmap: ChainMap) -> ProjComplex:
    """Mapping cone of a shift-0 chain map."""
    if fmap.shift != 0:
        raise ShiftMismatch("cone needs a shift-0 chain map")
    x, y = fmap.source, fmap.target
    a = x.algebra
    f = a.field
    comps = {}
    for d in set(list(y.comps) + [d - 1 for d in x.comps]):
        m = [my + mx for my, mx in zip(y.mult(d), x.mult(d + 1))]
        if any(m):
            comps[d] = m
    diffs = {}
    for d in comps:
        if d + 1 not in comps:
            continue
        rows_y, rows_x = y.mult(d + 1), x.mult(d + 2)
        cols_y, cols_x = y.mult(d), x.mult(d + 1)
        rows = expand_mults(a, [ry + rx for ry, rx in zip(rows_y, rows_x)])
        cols = expand_mults(a, [cy + cx for cy, cx in zip(cols_y, cols_x)])
        cm = CornerMat(a, rows, cols)
        ry_map, rx_map = _sum_maps(a, rows_y, rows_x)
        cy_map, cx_map = _sum_maps(a, cols_y, cols_x)
        dy = y.diff(d)
        for t in range(len(dy.rows)):
            for s in range(len(dy.cols)):
                cm.entries[ry_map[t]][cy_map[s]] = list(dy.entries[t][s])
        fm = fmap.mat(d + 1)
        for t in range(len(fm.rows)):
            for s in range(len(fm.cols)):
                cm.entries[ry_map[t]][cx_map[s]] = list(fm.entries[t][s])
        dx = x.diff(d + 1)
        for t in range(len(dx.rows)):
            for s in range(len(dx.cols)):
                cm.entries[rx_map[t]][cx_map[s]] = [
                    f.neg(c) for c in dx.entries[t][s]
                ]
        diffs[d] = cm
    out = ProjComplex(a, comps, diffs)
    out.verify_d_squared()
    return out


# ---------------------------------------------------------------------------
# minimalization with homotopy-equivalence certificates


def _element_inverse(a: BasedAlgebra, g, v: int):
    """Inverse of g inside e_v A e_v, or None."""
    f = a.field
    idx = a.corner_indices(v, v)
    lm = a.left_mult_matrix(g)
    sub = Mat(f, [[lm.rows[i][j] for j in idx] for i in idx], len(idx))
    ev = a.basis_vec(a.idempotents[v])
    target = Mat.from_columns(f, [[ev[i] for i in idx]], len(idx))
    from .linalg import solve

    sol = solve(sub, target)
    if sol is None:
        return None
    out = a.zero_vec()
    for n, i in enumerate(idx):
        out[i] = sol.rows[n][0]
    # two-sided check
    if a.mul(g, out) != ev or a.mul(out, g) != ev:
        return None
    return out


def minimalize(x: ProjComplex, with_maps: bool = False):
    """Homotopy-equivalent complex with radical differentials.

    Returns the reduced complex, or (reduced, p, i) with chain maps
    p: x -> reduced and i: reduced -> x when with_maps is True."""
    a = x.algebra
    f = a.field
    cur = ProjComplex(a, dict(x.comps), {d: cm.copy() for d, cm in x.diffs.items()})
    p_maps = None
    i_maps = None
    if with_maps:
        p_maps = {d: _identity_corner(a, cur.summands(d)) for d in cur.degrees}
        i_maps = {d: _identity_corner(a, cur.summands(d)) for d in cur.degrees}
        orig = x

    while True:
        pivot = _find_unit_entry(cur)
        if pivot is None:
            break
        d, t, s, ginv = pivot
        cur, step_p, step_i = _cancel(cur, d, t, s, ginv)
        if with_maps:
            p_maps = _compose_map_families(step_p, p_maps, cur, 0)
            i_maps = _compose_map_families(i_maps, step_i, cur, 0)
    if not with_maps:
        return cur
    pm = ChainMap(orig, cur, 0, {d: m for d, m in p_maps.items() if d in orig.comps and d in cur.comps})
    im = ChainMap(cur, orig, 0, {d: m for d, m in i_maps.items() if d in cur.comps and d in orig.comps})
    return cur, pm, im


def _identity_corner(a, summands):
    cm = CornerMat(a, summands, summands)
    for t, v in enumerate(summands):
        cm.entries[t][t] = a.basis_vec(a.idempotents[v])
    return cm


def _find_unit_entry(x: ProjComplex):
    a = x.algebra
    f = a.field
    for d in x.degrees:
        if d not in x.diffs:
            continue
        cm = x.diffs[d]
        for t, w in enumerate(cm.rows):
            for s, v in enumerate(cm.cols):
                if v != w:
                    continue
                g = cm.entries[t][s]
                if f.is_zero(g[a.idempotents[v]]):
                    continue
                ginv = _element_inverse(a, g, v)
                if ginv is not None:
                    return d, t, s, ginv
    return None


def _cancel(x: ProjComplex, d: int, t: int, s: int, ginv):
    """Cancel the invertible entry (t, s) of d^d; returns (reduced, p, i)
    where p: x -> reduced, i: reduced -> x are映 families of CornerMats."""
    a = x.algebra
    f = a.field
    src = x.summands(d)
    tgt = x.summands(d + 1)
    keep_s = [k for k in range(len(src)) if k != s]
    keep_t = [k for k in range(len(tgt)) if k != t]
    dm = x.diff(d)
    beta = dm.submatrix([t], keep_s)     # g row without pivot col
    gamma = dm.submatrix(keep_t, [s])
    delta = dm.submatrix(keep_t, keep_s)
    ginv_mat = CornerMat(a, [src[s]], [tgt[t]], [[list(ginv)]])
    corr = gamma.compose(ginv_mat).compose(beta)
    new_d = delta.add(corr, f.neg(f.one))

    comps = {deg: list(m) for deg, m in x.comps.items()}
    comps[d] = _drop_summand(a, comps[d], src[s], s, src)
    comps[d + 1] = _drop_summand(a, comps[d + 1], tgt[t], t, tgt)
    diffs = {deg: cm.copy() for deg, cm in x.diffs.items() if deg not in (d - 1, d, d + 1)}
    if any(comps.get(d, [])) and any(comps.get(d + 1, [])):
        diffs[d] = new_d
    if d - 1 in x.diffs:
        inc = x.diffs[d - 1]
        diffs[d - 1] = inc.submatrix(keep_s, list(range(len(inc.cols))))
    if d + 1 in x.diffs:
        outg = x.diffs[d + 1]
        diffs[d + 1] = outg.submatrix(list(range(len(outg.rows))), keep_t)

    reduced = ProjComplex(a, comps, diffs)

    # certificates: p: x -> reduced, i: reduced -> x
    p_fam = {}
    i_fam = {}
    for deg in x.degrees:
        summ = x.summands(deg)
        if deg == d:
            pm = CornerMat(a, [src[k] for k in keep_s], summ)
            for n, k in enumerate(keep_s):
                pm.entries[n][k] = a.basis_vec(a.idempotents[src[k]])
            p_fam[deg] = pm
            im = CornerMat(a, summ, [src[k] for k in keep_s])
            for n, k in enumerate(keep_s):
                im.entries[k][n] = a.basis_vec(a.idempotents[src[k]])
            # i at degree d gets the -g^{-1} beta correction into the pivot row
            gb = ginv_mat.compose(beta)
            for n, k in enumerate(keep_s):
                im.entries[s][n] = [f.neg(c) for c in gb.entries[0][n]]
            i_fam[deg] = im
        elif deg == d + 1:
            pm = CornerMat(a, [tgt[k] for k in keep_t], summ)
            for n, k in enumerate(keep_t):
                pm.entries[n][k] = a.basis_vec(a.idempotents[tgt[k]])
            gg = gamma.compose(ginv_mat)
            for n, k in enumerate(keep_t):
                pm.entries[n][t] = [f.neg(c) for c in gg.entries[n][0]]
            p_fam[deg] = pm
            im = CornerMat(a, summ, [tgt[k] for k in keep_t])
            for n, k in enumerate(keep_t):
                im.entries[k][n] = a.basis_vec(a.idempotents[tgt[k]])
            i_fam[deg] = im
        else:
            ident = _identity_corner(a, summ)
            p_fam[deg] = ident
            i_fam[deg] = ident
    return reduced, p_fam, i_fam


def _drop_summand(a, mults, vertex, pos, summands):
    out = list(mults)
    out[vertex] -= 1
    return out


def _compose_map_families(outer, inner, ref, shift):
    """Degreewise composition outer . inner of corner-matrix families."""
    out = {}
    for d, im in inner.items():
        om = outer.get(d + shift)
        if om is None:
            if im.rows:
                raise InvariantViolation("certificate families out of sync")
            continue
        if om.cols != im.rows:
            raise InvariantViolation("certificate families out of sync")
        out[d] = om.compose(im)
    return out


# ---------------------------------------------------------------------------
# cohomology, endomorphism algebras, exceptionality


def total_cohomology_dims(x: ProjComplex) -> dict[int, int]:
    """Exact cohomology dimensions degreewise (module-level ranks)."""
    out = {}
    for d in x.degrees:
        dim_d = x.module_at(d).dim
        rk_out = rank(x.diff(d).expanded()) if d + 1 in x.comps else 0
        rk_in = rank(x.diff(d - 1).expanded()) if d - 1 in x.comps else 0
        out[d] = dim_d - rk_out - rk_in
    return {d: v for d, v in out.items() if v}


def complex_of_modules_cohomology(mods: dict[int, FDModule],
                                  diffs: dict[int, Mat]) -> dict[int, int]:
    out = {}
    for d, m in mods.items():
        rk_out = rank(diffs[d]) if d in diffs else 0
        rk_in = rank(diffs[d - 1]) if d - 1 in diffs else 0
        val = m.dim - rk_out - rk_in
        if val:
            out[d] = val
    return out


def end_algebra(x: ProjComplex) -> BasedAlgebra:
    """Endomorphism algebra of x in the homotopy category, with verified
    well-definedness of the induced multiplication."""
    space = hom_dim(x, x, 0)
    reps = space.chainmap_basis
    n = space.dim
    a = x.algebra
    f = a.field
    if n == 0:
        raise RecolleError("zero complex has no unit")

    # coordinates of an arbitrary chain map modulo boundaries
    f_idx = _EntryIndexer(a, _chain_blocks(x, x, 0))
    h_idx = _EntryIndexer(a, _homotopy_blocks(x, x, 0))
    if h_idx.nunknowns:
        bmat = _boundary_matrix(x, x, 0, h_idx, f_idx)
    else:
        bmat = Mat.zero(f, f_idx.nunknowns, 0)
    rep_cols = [_flatten_map(f_idx, r) for r in reps]
    basis_mat = hstack([bmat, Mat.from_columns(f, rep_cols, f_idx.nunknowns)])

    from .linalg import solve

    def class_coords(chmap: ChainMap):
        vec = _flatten_map(f_idx, chmap)
        sol = solve(basis_mat, Mat.from_columns(f, [vec], f_idx.nunknowns))
        if sol is None:
            raise InvariantViolation("composite is not a chain map class")
        return [sol.rows[bmat.ncols + i][0] for i in range(n)]

    def compose_reps(r1: ChainMap, r2: ChainMap) -> ChainMap:
        mats = {}
        for d in x.degrees:
            if d in r2.mats:
                mats[d] = r1.mat(d).compose(r2.mats[d])
        return ChainMap(x, x, 0, mats)

    mult = {}
    for i in range(n):
        for j in range(n):
            prod = compose_reps(reps[i], reps[j])
            coords = class_coords(prod)
            entries = tuple(
                (k, c) for k, c in enumerate(coords) if not f.is_zero(c)
            )
            if entries:
                mult[(i, j)] = entries
    ident = ChainMap(x, x, 0, {d: _identity_corner(a, x.summands(d)) for d in x.degrees})
    unit = class_coords(ident)
    end = BasedAlgebra(
        f, [f"f{i}" for i in range(n)], None, None, mult, None, None, "end",
        None, unit,
    )
    end.radical_idx = None
    end.chain_reps = reps
    end.complex = x
    end.verify_associative()
    return end


def _flatten_map(f_idx: _EntryIndexer, chmap: ChainMap):
    a = f_idx.algebra
    f = a.field
    vec = [f.zero] * f_idx.nunknowns
    for d, cm in chmap.mats.items():
        if d not in f_idx.blocks:
            if not cm.is_zero():
                raise InvariantViolation("chain map outside expected blocks")
            continue
        for t in range(len(cm.rows)):
            for s in range(len(cm.cols)):
                for i, c in enumerate(cm.entries[t][s]):
                    if not f.is_zero(c):
                        vec[f_idx.index[(d, t, s, i)]] = c
    return vec


def is_exceptional(x: ProjComplex, certificate: dict | None = None) -> bool:
    """Hom(x, x[n]) = 0 for all n != 0; x must be minimal so the amplitude
    cutoff argument applies."""
    if not x.is_minimal():
        raise RecolleError("exceptionality check requires a minimal complex")
    amp = x.amplitude
    for n in range(1, amp + 1):
        for sgn in (1, -1):
            d = hom_dim(x, x, sgn * n).dim
            if certificate is not None:
                certificate[sgn * n] = d
            if d != 0:
                return False
    if certificate is not None:
        certificate["cutoff"] = amp
    return True


# ---------------------------------------------------------------------------
# isomorphism of complexes


def is_isomorphic_complex(x: ProjComplex, y: ProjComplex, seed: int = 0,
                          samples: int = 24) -> TriBool:
    """Isomorphism in K^b(proj) between minimal complexes: search for a chain
    map whose degreewise expansion is invertible."""
    if x.algebra is not y.algebra:
        raise AlgebraMismatch("iso test over different algebras")
    if x.is_zero() and y.is_zero():
        return TriBool.yes("both zero")
    if {d: tuple(m) for d, m in x.comps.items()} != {d: tuple(m) for d, m in y.comps.items()}:
        return TriBool.no("component multiplicities differ")
    space = hom_dim(x, y, 0)
    if space.dim == 0:
        return TriBool.no("no nonzero homotopy classes")
    f = x.algebra.field

    def check(ch: ChainMap):
        for d in x.degrees:
            m = ch.mat(d).expanded()
            if m.nrows != m.ncols or invert(m) is None:
                return False
        return True

    for r in space.chainmap_basis:
        if check(r):
            return TriBool.yes(("chain iso", r))
    rng = random.Random(seed)
    k = len(space.chainmap_basis)
    if f.p is not None and f.p ** k <= 2 ** 14:
        for combo in itertools.product(list(f.elements()), repeat=k):
            if all(c == 0 for c in combo):
                continue
            ch = _combine_maps(space.chainmap_basis, [f.of(c) for c in combo])
            if check(ch):
                return TriBool.yes(("chain iso", ch))
        return TriBool.no("exhaustive search found no degreewise iso")
    for _ in range(samples):
        coeffs = [
            f.of(rng.randrange(0, 10)) if f.p is None else f.of(rng.randrange(f.p))
            for _ in range(k)
        ]
        ch = _combine_maps(space.chainmap_basis, coeffs)
        if check(ch):
            return TriBool.yes(("chain iso", ch))
    return TriBool.unknown("randomized search found no degreewise iso")


def _combine_maps(reps: list[ChainMap], coeffs) -> ChainMap:
    x, y, n = reps[0].source, reps[0].target, reps[0].shift
    mats = {}
    for d in x.degrees:
        cm = None
        for r, c in zip(reps, coeffs):
            term = r.mat(d).scaled(c)
            cm = term if cm is None else cm.add(term)
        if cm is not None:
            mats[d] = cm
    return ChainMap(x, y, n, mats)


# ---------------------------------------------------------------------------
# strict actions


def strict_action(x: ProjComplex, end: BasedAlgebra):
    """Check that the chosen endomorphism representatives multiply strictly;
    on success return the components of x as modules over end (as a complex
    of right end^op-modules), else the first obstruction pair."""
    from .algebra import opposite as op_alg
    from .modules import FDModule as FD

    a = x.algebra
    f = a.field
    reps = end.chain_reps
    n = len(reps)
    for i in range(n):
        for j in range(n):
            prod_mats = {}
            for d in x.degrees:
                prod_mats[d] = reps[i].mat(d).compose(reps[j].mat(d))
            expected = {}
            for k, c in end.mul_basis(i, j):
                for d in x.degrees:
                    term = reps[k].mat(d).scaled(c)
                    expected[d] = term if d not in expected else expected[d].add(term)
            for d in x.degrees:
                exp = expected.get(d)
                got = prod_mats[d]
                if exp is None:
                    if not got.is_zero():
                        return None, (i, j)
                elif not got.add(exp, f.neg(f.one)).is_zero():
                    return None, (i, j)
    # strict: components become left end-modules = right end^op-modules
    eop = op_alg(end)
    mods = {}
    for d in x.degrees:
        dim = x.module_at(d).dim
        action = [reps[j].mat(d).expanded() for j in range(n)]
        mods[d] = FD(eop, dim, action, label=f"X^{d} over End")
        mods[d].verify()
    diffs = {d: x.diff(d).expanded() for d in x.degrees if d + 1 in x.comps}
    return (mods, diffs), None
