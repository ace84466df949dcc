"""Finite-dimensional right modules given by action matrices.

A module stores one matrix per algebra basis element; action[j] is the
matrix of m -> m * b_j on column vectors, so action(x*y) = action(y) @
action(x).  Left modules are right modules over the opposite algebra
throughout the package.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import BasedAlgebra, corner, opposite
from .errors import AlgebraMismatch, InvariantViolation, ZeroModule
from .linalg import (
    Mat,
    column_space_basis,
    hstack,
    invert,
    kernel_basis,
    rank,
    solve,
)
from .verdicts import TriBool


class FDModule:
    __slots__ = ("algebra", "dim", "action", "slots", "label")

    def __init__(self, algebra: BasedAlgebra, dim: int, action: list[Mat],
                 slots=None, label: str = ""):
        self.algebra = algebra
        self.dim = dim
        self.action = action
        # slots: for standard projective sums, list of (vertex, algebra basis
        # indices) giving the identification of coordinates with e_v A bases
        self.slots = slots
        self.label = label

    def act_matrix(self, avec) -> Mat:
        """Matrix of the action of an arbitrary algebra element."""
        f = self.algebra.field
        out = Mat.zero(f, self.dim, self.dim)
        for k, c in enumerate(avec):
            if f.is_zero(c):
                continue
            out = out + self.action[k].scale(c)
        return out

    def vertex_decomposition(self) -> list[int]:
        a = self.algebra
        return [rank(self.action[a.idempotents[v]]) for v in range(a.num_vertices)]

    def verify(self):
        a = self.algebra
        ident = Mat.identity(a.field, self.dim)
        if self.act_matrix(a.unit) != ident:
            raise InvariantViolation("unit does not act as identity")
        for i in range(a.dim):
            for j in range(a.dim):
                lhs = self.action[j] @ self.action[i]
                rhs = Mat.zero(a.field, self.dim, self.dim)
                for k, c in a.mul_basis(i, j):
                    rhs = rhs + self.action[k].scale(c)
                if lhs != rhs:
                    raise InvariantViolation(
                        f"action violates structure constants at ({i},{j})"
                    )

    def __repr__(self):
        return f"FDModule(dim={self.dim}{', ' + self.label if self.label else ''})"


@dataclass
class ModuleHom:
    source: FDModule
    target: FDModule
    matrix: Mat

    def verify(self):
        for j in range(self.source.algebra.dim):
            if self.matrix @ self.source.action[j] != self.target.action[j] @ self.matrix:
                raise InvariantViolation("hom does not intertwine the action")


# ---------------------------------------------------------------------------
# basic constructions


def zero_module(a: BasedAlgebra) -> FDModule:
    return FDModule(a, 0, [Mat.zero(a.field, 0, 0) for _ in range(a.dim)], label="0")


def simple_module(a: BasedAlgebra, v: int) -> FDModule:
    f = a.field
    ev = a.idempotents[v]
    action = []
    for j in range(a.dim):
        val = f.one if j == ev else f.zero
        action.append(Mat(f, [[val]]))
    return FDModule(a, 1, action, label=f"S_{a.vertices[v] if a.vertices else v}")


def projective_module(a: BasedAlgebra, v: int) -> FDModule:
    return proj_sum(a, [1 if w == v else 0 for w in range(a.num_vertices)])


def proj_sum(a: BasedAlgebra, mults) -> FDModule:
    """Direct sum of standard projectives e_v A with the path basis."""
    f = a.field
    slots = []
    coords = []  # (slot, algebra basis index)
    for v, m in enumerate(mults):
        vert = a.lv[a.idempotents[v]]
        idxs = [i for i in range(a.dim) if a.lv[i] == vert]
        for _ in range(m):
            s = len(slots)
            slots.append((v, idxs))
            coords.extend((s, i) for i in idxs)
    dim = len(coords)
    pos = {c: n for n, c in enumerate(coords)}
    action = []
    for j in range(a.dim):
        m = Mat.zero(f, dim, dim)
        for n, (s, i) in enumerate(coords):
            for k, c in a.mul_basis(i, j):
                m.rows[pos[(s, k)]][n] = c
        action.append(m)
    label = "+".join(
        f"P_{a.vertices[v] if a.vertices else v}" + (f"^{m}" if m > 1 else "")
        for v, m in enumerate(mults) if m
    )
    return FDModule(a, dim, action, slots=slots, label=label or "0")


def free_module(a: BasedAlgebra) -> FDModule:
    return proj_sum(a, [1] * a.num_vertices)


def direct_sum(mods: list[FDModule]) -> FDModule:
    if not mods:
        raise ZeroModule("empty direct sum")
    a = mods[0].algebra
    f = a.field
    for m in mods:
        if m.algebra is not a:
            raise AlgebraMismatch("direct sum over different algebras")
    dim = sum(m.dim for m in mods)
    action = []
    for j in range(a.dim):
        big = Mat.zero(f, dim, dim)
        off = 0
        for m in mods:
            blk = m.action[j]
            for i in range(m.dim):
                for k in range(m.dim):
                    big.rows[off + i][off + k] = blk.rows[i][k]
            off += m.dim
        action.append(big)
    return FDModule(a, dim, action, label="+".join(m.label for m in mods))


# ---------------------------------------------------------------------------
# submodules / quotients / kernels


def submodule_span(m: FDModule, cols: list[list]) -> Mat:
    """Closure of the given vectors under the action; returns column basis."""
    f = m.algebra.field
    if not cols:
        return Mat.zero(f, m.dim, 0)
    span = column_space_basis(Mat.from_columns(f, cols, m.dim))
    while True:
        new_cols = span.columns()
        for j in range(m.algebra.dim):
            img = m.action[j] @ span
            new_cols.extend(img.columns())
        bigger = column_space_basis(Mat.from_columns(f, new_cols, m.dim))
        if bigger.ncols == span.ncols:
            return bigger
        span = bigger


def module_from_columns(m: FDModule, span: Mat, label="") -> tuple[FDModule, Mat]:
    """Submodule on the given invariant column span; returns it with the
    inclusion matrix."""
    a = m.algebra
    f = a.field
    action = []
    for j in range(a.dim):
        img = m.action[j] @ span
        coeffs = solve(span, img)
        if coeffs is None:
            raise InvariantViolation("span is not action-invariant")
        action.append(coeffs)
    sub = FDModule(a, span.ncols, action, label=label)
    return sub, span


def quotient_module(m: FDModule, span: Mat, label="") -> tuple[FDModule, Mat]:
    """Quotient by an invariant span; returns it with the projection matrix."""
    a = m.algebra
    f = a.field
    ident = Mat.identity(f, m.dim)
    ext = hstack([span, ident])
    _, pivots = ext.rref()
    comp = [p - span.ncols for p in pivots if p >= span.ncols]
    full = hstack([span, Mat.from_columns(f, [ident.column(c) for c in comp], m.dim)])
    inv = invert(full)
    proj = Mat(f, [inv.rows[span.ncols + t] for t in range(len(comp))], m.dim)
    sec = Mat.from_columns(f, [ident.column(c) for c in comp], m.dim)
    action = [proj @ m.action[j] @ sec for j in range(a.dim)]
    quot = FDModule(a, len(comp), action, label=label)
    return quot, proj


def kernel_module(hom: Mat, m: FDModule, label="") -> tuple[FDModule, Mat]:
    """Kernel of a module map out of m (as a module with inclusion)."""
    ker = kernel_basis(hom)
    return module_from_columns(m, ker, label=label)


def radical_span(m: FDModule) -> Mat:
    """Column span of m * J."""
    f = m.algebra.field
    cols = []
    for rv in m.algebra.radical_vectors():
        act = m.act_matrix(rv)
        cols.extend(act.columns())
    if not cols:
        return Mat.zero(f, m.dim, 0)
    return column_space_basis(Mat.from_columns(f, cols, m.dim))


def radical_filtration(m: FDModule) -> list[list[int]]:
    """Layers m J^i / m J^{i+1} as vertex-multiplicity rows."""
    a = m.algebra
    f = a.field
    spans = [Mat.identity(f, m.dim)]
    while spans[-1].ncols:
        cur = spans[-1]
        cols = []
        for rv in a.radical_vectors():
            act = m.act_matrix(rv)
            img = act @ cur
            cols.extend(img.columns())
        nxt = (
            column_space_basis(Mat.from_columns(f, cols, m.dim))
            if cols
            else Mat.zero(f, m.dim, 0)
        )
        spans.append(nxt)
        if len(spans) > m.dim + 2:
            raise InvariantViolation("radical filtration does not terminate")
        if nxt.ncols == cur.ncols:
            raise InvariantViolation("radical filtration stalls (J not nilpotent?)")
    layers = []
    for i in range(len(spans) - 1):
        row = []
        for v in range(a.num_vertices):
            pv = m.action[a.idempotents[v]]
            upper = hstack([spans[i + 1], pv @ spans[i]])
            row.append(rank(upper) - rank(spans[i + 1]))
        if any(row):
            layers.append(row)
    if not layers and m.dim:
        layers = [[0] * a.num_vertices]
    return layers


# ---------------------------------------------------------------------------
# hom spaces and isomorphism testing


def hom_space(m: FDModule, n: FDModule) -> list[ModuleHom]:
    """Basis of Hom_A(m, n)."""
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("hom between modules over different algebras")
    a = m.algebra
    f = a.field
    if m.dim == 0 or n.dim == 0:
        return []
    nunk = n.dim * m.dim
    rows = []
    for j in range(a.dim):
        am, an = m.action[j], n.action[j]
        # T @ am - an @ T = 0, T is n.dim x m.dim, unknown index (r, c)
        for i in range(n.dim):
            for c in range(m.dim):
                row = [f.zero] * nunk
                for k in range(m.dim):
                    row[i * m.dim + k] = f.add(row[i * m.dim + k], am.rows[k][c])
                for k in range(n.dim):
                    row[k * m.dim + c] = f.sub(row[k * m.dim + c], an.rows[i][k])
                rows.append(row)
    ker = kernel_basis(Mat(f, rows, nunk))
    out = []
    for jcol in range(ker.ncols):
        vec = ker.column(jcol)
        t = Mat(f, [[vec[i * m.dim + c] for c in range(m.dim)] for i in range(n.dim)],
                m.dim)
        out.append(ModuleHom(m, n, t))
    return out


def is_isomorphic(m: FDModule, n: FDModule, seed: int = 0, samples: int = 20) -> TriBool:
    """Tri-valued isomorphism test with an explicit two-sided certificate."""
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("iso test over different algebras")
    if m.dim != n.dim:
        return TriBool.no("dimension mismatch")
    if m.dim == 0:
        return TriBool.yes("both zero")
    if m.vertex_decomposition() != n.vertex_decomposition():
        return TriBool.no("vertex decompositions differ")
    if radical_filtration(m) != radical_filtration(n):
        return TriBool.no("radical filtrations differ")
    homs = hom_space(m, n)
    if not homs:
        return TriBool.no("Hom space is zero")

    def check(t: Mat):
        tinv = invert(t)
        return None if tinv is None else (t, tinv)

    for h in homs:
        cert = check(h.matrix)
        if cert is not None:
            return TriBool.yes(cert)

    f = m.algebra.field
    rng = random.Random(seed)
    if f.p is not None and f.p ** len(homs) <= 2 ** 16:
        import itertools

        for combo in itertools.product(list(f.elements()), repeat=len(homs)):
            if all(c == 0 for c in combo):
                continue
            t = Mat.zero(f, n.dim, m.dim)
            for c, h in zip(combo, homs):
                t = t + h.matrix.scale(f.of(c))
            cert = check(t)
            if cert is not None:
                return TriBool.yes(cert)
        return TriBool.no("exhaustive search over Hom space found no unit")
    for _ in range(samples):
        t = Mat.zero(f, n.dim, m.dim)
        for h in homs:
            c = f.of(rng.randrange(0, 10)) if f.p is None else f.of(rng.randrange(f.p))
            t = t + h.matrix.scale(c)
        cert = check(t)
        if cert is not None:
            return TriBool.yes(cert)
    if f.p is None:
        # over Q a random integer combination detects isomorphism with
        # overwhelming probability; after `samples` misses we still refuse
        # to claim a negative
        return TriBool.unknown(f"no unit found in {samples} random samples")
    return TriBool.unknown("search space too large; randomized misses only")


# ---------------------------------------------------------------------------
# projective covers


def top_generators(m: FDModule) -> list[tuple[int, list]]:
    """(vertex, generator vector) pairs projecting to a basis of m / mJ."""
    a = m.algebra
    f = a.field
    rad = radical_span(m)
    gens = []
    for v in range(a.num_vertices):
        pv = m.action[a.idempotents[v]]
        cur = rad
        for c in range(m.dim):
            vec = pv.column(c)
            cand = hstack([cur, Mat.from_columns(f, [vec], m.dim)])
            if rank(cand) > rank(cur):
                gens.append((v, vec))
                cur = cand
    return gens


def projective_cover(m: FDModule) -> tuple[FDModule, ModuleHom]:
    """Minimal cover P -> m; kernel lies in P J."""
    if m.dim == 0:
        raise ZeroModule("projective cover of the zero module")
    a = m.algebra
    f = a.field
    gens = top_generators(m)
    mults = [0] * a.num_vertices
    for v, _ in gens:
        mults[v] += 1
    p = proj_sum(a, mults)
    # cover: coordinate (slot s, algebra basis i) -> g_s * b_i; slots are
    # grouped by vertex in proj_sum order
    slot_gen = {}
    by_vertex: dict[int, list] = {}
    for v, g in gens:
        by_vertex.setdefault(v, []).append(g)
    s = 0
    for v in range(a.num_vertices):
        for g in by_vertex.get(v, []):
            slot_gen[s] = g
            s += 1
    coords = []
    for s, (v, idxs) in enumerate(p.slots):
        for i in idxs:
            coords.append((s, i))
    mat = Mat.zero(f, m.dim, p.dim)
    for col, (s, i) in enumerate(coords):
        img = m.act_matrix(a.basis_vec(i)).apply(slot_gen[s])
        for r in range(m.dim):
            mat.rows[r][col] = img[r]
    return p, ModuleHom(p, m, mat)


# ---------------------------------------------------------------------------
# corner / opposite transports


def restrict_to_corner(m: FDModule, c: BasedAlgebra) -> tuple[FDModule, Mat]:
    """m*e as a right module over the corner algebra c = eAe.

    c must have been produced by corner(); its parent bookkeeping gives the
    embedding of basis elements."""
    a = m.algebra
    f = a.field
    parent_idx = c.parent_basis
    evec = a.zero_vec()
    for i in c.idempotents:
        evec[parent_idx[i]] = f.one
    proj = m.act_matrix(evec)
    span = column_space_basis(proj)
    action = []
    for j in range(c.dim):
        big = m.action[parent_idx[j]] @ span
        coeffs = solve(span, big)
        if coeffs is None:
            raise InvariantViolation("corner action escaped m*e")
        action.append(coeffs)
    return FDModule(c, span.ncols, action, label=f"({m.label})e"), span


def left_corner_module_on_proj(a: BasedAlgebra, verts: list[int], c=None, cop=None):
    """eA as a left module over C = eAe, returned as a right C^op-module."""
    if c is None:
        c = corner(a, verts)
    if cop is None:
        cop = opposite(c)
    f = a.field
    vset = set(verts)
    idxs = [i for i in range(a.dim) if a.lv[i] in vset]
    pos = {b: n for n, b in enumerate(idxs)}
    action = []
    for j in range(c.dim):
        pj = c.parent_basis[j]
        m = Mat.zero(f, len(idxs), len(idxs))
        for n, b in enumerate(idxs):
            for k, coeff in a.mul_basis(pj, b):
                m.rows[pos[k]][n] = coeff
        action.append(m)
    return FDModule(cop, len(idxs), action, label="eA as C-left"), idxs


def right_corner_module_on_inj(a: BasedAlgebra, verts: list[int], c=None):
    """Ae as a right module over C = eAe."""
    if c is None:
        c = corner(a, verts)
    f = a.field
    vset = set(verts)
    idxs = [i for i in range(a.dim) if a.rv[i] in vset]
    pos = {b: n for n, b in enumerate(idxs)}
    action = []
    for j in range(c.dim):
        pj = c.parent_basis[j]
        m = Mat.zero(f, len(idxs), len(idxs))
        for n, b in enumerate(idxs):
            for k, coeff in a.mul_basis(b, pj):
                m.rows[pos[k]][n] = coeff
        action.append(m)
    return FDModule(c, len(idxs), action, label="Ae as C-right"), idxs


def dual_module(m: FDModule, aop: BasedAlgebra) -> FDModule:
    """k-dual as a right module over the opposite algebra."""
    action = [m.action[j].transpose() for j in range(m.algebra.dim)]
    return FDModule(aop, m.dim, action, label=f"D({m.label})")


def _free_coordinate_order(fm: FDModule) -> list[int]:
    """Algebra basis index per coordinate of the free right module."""
    coords = []
    for s, (v, idxs) in enumerate(fm.slots):
        coords.extend(idxs)
    return coords


def quotient_algebra_as_right_module(a: BasedAlgebra, verts: list[int],
                                     fm: FDModule | None = None):
    """A/AeA as a right A-module (the image of the regular module)."""
    from .algebra import idempotent_ideal_indices

    f = a.field
    if fm is None:
        fm = free_module(a)
    coords = _free_coordinate_order(fm)
    posn = {b: n for n, b in enumerate(coords)}
    ideal = idempotent_ideal_indices(a, verts)
    cols = []
    for i in ideal:
        vec = [f.zero] * fm.dim
        vec[posn[i]] = f.one
        cols.append(vec)
    span = Mat.from_columns(f, cols, fm.dim)
    return quotient_module(fm, span, label="A/AeA")


def ideal_as_right_module(a: BasedAlgebra, verts: list[int],
                          fm: FDModule | None = None):
    """AeA as a right A-module (submodule of the regular module)."""
    from .algebra import idempotent_ideal_indices

    f = a.field
    if fm is None:
        fm = free_module(a)
    coords = _free_coordinate_order(fm)
    posn = {b: n for n, b in enumerate(coords)}
    ideal = idempotent_ideal_indices(a, verts)
    cols = []
    for i in ideal:
        vec = [f.zero] * fm.dim
        vec[posn[i]] = f.one
        cols.append(vec)
    span = Mat.from_columns(f, cols, fm.dim)
    return module_from_columns(fm, span, label="AeA")


def tensor_dim(m: FDModule, n: FDModule) -> int:
    """dim of m tensor_A n for m right over A and n right over A^op."""
    a = m.algebra
    f = a.field
    if m.dim == 0 or n.dim == 0:
        return 0
    nm = m.dim * n.dim
    rows = []
    for j in range(a.dim):
        am = m.action[j]
        an = n.action[j]  # right action of A^op = left action of A
        # relation (x * b) tensor y - x tensor (b * y) for each basis pair
        for cm in range(m.dim):
            for cn in range(n.dim):
                row = [f.zero] * nm
                for i in range(m.dim):
                    row[i * n.dim + cn] = f.add(row[i * n.dim + cn], am.rows[i][cm])
                for i in range(n.dim):
                    row[cm * n.dim + i] = f.sub(row[cm * n.dim + i], an.rows[i][cn])
                rows.append(row)
    rel = Mat(f, rows, nm)
    return nm - rank(rel)
