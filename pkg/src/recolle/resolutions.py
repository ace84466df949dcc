"""Minimal projective resolutions and replacements, with termination
statuses certified by syzygy isomorphisms.

The engine builds the minimal projective replacement of a bounded complex of
modules degree by degree, descending.  At each stage the next term is a
projective cover of the cycles of the mapping cone of the partial
quasi-isomorphism, taken modulo boundaries; below the input range this is
the classical syzygy iteration, so periodicity detection there certifies an
unbounded minimal replacement.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import BasedAlgebra
from .complexes import (
    CornerMat,
    ProjComplex,
    corner_from_expanded,
    expand_mults,
)
from .errors import InvariantViolation, LiftInconsistent, RecolleError
from .linalg import (
    Mat,
    column_space_basis,
    hstack,
    kernel_basis,
    rank,
    solve,
    vstack,
)
from .modules import (
    FDModule,
    ModuleHom,
    direct_sum,
    is_isomorphic,
    module_from_columns,
    proj_sum,
    radical_span,
    simple_module,
    zero_module,
)
from .verdicts import DepthExceeded, Finite, GldimStatus, Periodic, TriBool


@dataclass
class Replacement:
    """Minimal projective replacement of a bounded complex of modules."""

    algebra: BasedAlgebra
    mults: dict[int, list[int]]          # degree -> multiplicity vector
    dmaps: dict[int, Mat]                # module-level Q^d -> Q^{d+1}
    pi: dict[int, Mat]                   # Q^d -> M^d
    status: object                       # Finite | Periodic | DepthExceeded
    syzygies: list[tuple[int, FDModule]]  # (syzygy index, module)
    iso_certificate: object = None       # (i, j, TriBool) for Periodic
    input_range: tuple[int, int] | None = None

    def proj_complex(self) -> ProjComplex:
        a = self.algebra
        diffs = {}
        for d, m in self.dmaps.items():
            rows = expand_mults(a, self.mults.get(d + 1, []))
            cols = expand_mults(a, self.mults.get(d, []))
            if rows and cols:
                diffs[d] = corner_from_expanded(a, m, rows, cols)
        x = ProjComplex(a, self.mults, diffs)
        x.verify_d_squared()
        return x

    def term(self, n: int) -> list[int]:
        """Resolution term at syzygy depth n (degree bottom - n)."""
        lo = self.input_range[0] if self.input_range else 0
        return self.mults.get(lo - n, [0] * self.algebra.num_vertices)


def minimal_replacement(mods: dict[int, FDModule], diffs: dict[int, Mat],
                        depth: int, seed: int = 0,
                        min_syzygies: int = 0) -> Replacement:
    """Minimal projective replacement of the bounded complex `mods`.

    `depth` bounds the number of syzygy steps taken below the input range;
    termination is reported as Finite, certified-Periodic, or DepthExceeded.
    A Periodic verdict normally stops the construction; `min_syzygies` forces
    that many syzygy steps anyway so callers can read off stable terms.
    """
    degs = sorted(d for d, m in mods.items() if m.dim)
    if not degs:
        a = next(iter(mods.values())).algebra if mods else None
        if a is None:
            raise RecolleError("empty input complex without algebra reference")
        return Replacement(a, {}, {}, {}, Finite(-1), [], None, (0, 0))
    a = mods[degs[0]].algebra
    f = a.field
    bottom, top = degs[0], degs[-1]

    q_mults: dict[int, list[int]] = {}
    q_mods: dict[int, FDModule] = {}
    dmaps: dict[int, Mat] = {}
    pis: dict[int, Mat] = {}
    syzygies: list[tuple[int, FDModule]] = []
    status = None
    iso_cert = None

    def mod_at(d):
        return mods.get(d, zero_module(a))

    def q_at(d):
        return q_mods.get(d)

    i = top
    while True:
        qnext = q_at(i + 1)
        qdim = qnext.dim if qnext else 0
        mi = mod_at(i)
        wdim = qdim + mi.dim
        if wdim == 0:
            if i < bottom:
                status = Finite(bottom - i - 1)
                break
            i -= 1
            continue
        # W = Q^{i+1} (+) M^i with the cone differential into Q^{i+2} (+) M^{i+1}
        parts = []
        if qnext and qnext.dim:
            parts.append(qnext)
        if mi.dim:
            parts.append(mi)
        w = parts[0] if len(parts) == 1 else direct_sum(parts)
        # offsets: Q-part first (when present)
        q_off = 0
        m_off = qdim

        qnext2 = q_at(i + 2)
        qdim2 = qnext2.dim if qnext2 else 0
        mnext = mod_at(i + 1)
        rows = []
        # block row 1: -d_Q^{i+1} on Q-part
        if qdim2:
            dq = dmaps.get(i + 1)
            blk = Mat.zero(f, qdim2, wdim)
            if dq is not None:
                for r in range(qdim2):
                    for c in range(qdim):
                        blk.rows[r][q_off + c] = f.neg(dq.rows[r][c])
            rows.append(blk)
        # block row 2: pi^{i+1} on Q-part + d_M^i on M-part
        if mnext.dim:
            blk = Mat.zero(f, mnext.dim, wdim)
            pnext = pis.get(i + 1)
            if pnext is not None:
                for r in range(mnext.dim):
                    for c in range(qdim):
                        blk.rows[r][q_off + c] = pnext.rows[r][c]
            dm = diffs.get(i)
            if dm is not None:
                for r in range(mnext.dim):
                    for c in range(mi.dim):
                        blk.rows[r][m_off + c] = dm.rows[r][c]
            rows.append(blk)
        dmat = vstack(rows) if rows else Mat.zero(f, 0, wdim)
        kspan = kernel_basis(dmat) if dmat.nrows else Mat.identity(f, wdim)

        # boundaries from M^{i-1}
        lcols = []
        dprev = diffs.get(i - 1)
        if dprev is not None and mod_at(i - 1).dim:
            for c in range(dprev.ncols):
                vec = [f.zero] * wdim
                col = dprev.column(c)
                for r in range(mi.dim):
                    vec[m_off + r] = col[r]
                lcols.append(vec)

        kmod, kincl = module_from_columns(w, column_space_basis(kspan))
        if i < bottom:
            idx = bottom - i
            syzygies.append((idx, kmod))
            if status is None:
                for pidx, prev in syzygies[:-1]:
                    cert = is_isomorphic(prev, kmod, seed=seed)
                    if cert.is_true:
                        status = Periodic(pidx, idx - pidx)
                        iso_cert = (pidx, idx, cert)
                        break
            if status is not None and idx > min_syzygies:
                break
            if status is None and idx > depth:
                status = DepthExceeded(depth)
                break

        # generator selection modulo (L + K J)
        gmat_cols = list(lcols)
        krad = radical_span(kmod)
        for c in range(krad.ncols):
            gmat_cols.append(kincl.apply(krad.column(c)))
        gmat = Mat.from_columns(f, gmat_cols, wdim)
        gens = []
        cur = gmat
        for v in range(a.num_vertices):
            pv = w.action[a.idempotents[v]]
            for c in range(kincl.ncols):
                vec = pv.apply(kincl.column(c))
                cand = hstack([cur, Mat.from_columns(f, [vec], wdim)])
                if rank(cand) > rank(cur):
                    gens.append((v, vec))
                    cur = cand
        mults = [0] * a.num_vertices
        by_vertex: dict[int, list] = {}
        for v, g in gens:
            mults[v] += 1
            by_vertex.setdefault(v, []).append(g)
        if not gens:
            if i < bottom:
                if status is not None:
                    raise InvariantViolation(
                        "certified periodic resolution terminated"
                    )
                status = Finite(bottom - i - 1)
                break
            i -= 1
            continue
        qi = proj_sum(a, mults)
        # psi: Q^i -> W, coordinate (slot s, basis j) -> g_s * b_j
        slot_gen = []
        for v in range(a.num_vertices):
            slot_gen.extend(by_vertex.get(v, []))
        psi = Mat.zero(f, wdim, qi.dim)
        coords = []
        for s, (v, idxs) in enumerate(qi.slots):
            coords.extend((s, j) for j in idxs)
        for col, (s, j) in enumerate(coords):
            img = w.act_matrix(a.basis_vec(j)).apply(slot_gen[s])
            for r in range(wdim):
                psi.rows[r][col] = img[r]
        q_mults[i] = mults
        q_mods[i] = qi
        if qdim:
            dq_i = Mat(f, [[f.neg(psi.rows[r][c]) for c in range(qi.dim)]
                           for r in range(qdim)], qi.dim)
            dmaps[i] = dq_i
        if mi.dim:
            pis[i] = Mat(f, [[psi.rows[m_off + r][c] for c in range(qi.dim)]
                             for r in range(mi.dim)], qi.dim)
        i -= 1

    return Replacement(a, q_mults, dmaps, pis, status, syzygies, iso_cert,
                       (bottom, top))


# ---------------------------------------------------------------------------
# module resolutions


@dataclass
class ResolutionReport:
    module: FDModule
    terms: list[list[int]]          # degree 0..n multiplicity vectors
    maps: list[CornerMat]           # maps[n]: term n -> term n-1 (n >= 1)
    cover: ModuleHom | None
    status: object
    syzygies: list[FDModule]
    iso_certificate: object = None
    replacement: Replacement | None = None

    def term_module(self, n: int) -> FDModule:
        a = self.module.algebra
        if n < len(self.terms):
            return proj_sum(a, self.terms[n])
        return zero_module(a)

    def json(self):
        return {
            "terms": [list(t) for t in self.terms],
            "status": self.status.json(),
            "module": self.module.label,
        }


def min_resolution(m: FDModule, depth: int | None = None, seed: int = 0,
                   min_syzygies: int = 0) -> ResolutionReport:
    """Minimal projective resolution of a module with periodicity detection."""
    a = m.algebra
    if depth is None:
        depth = default_depth(a)
    if m.dim == 0:
        return ResolutionReport(m, [], [], None, Finite(-1), [])
    rep = minimal_replacement({0: m}, {}, depth, seed, min_syzygies=min_syzygies)
    terms = []
    n = 0
    while -n in rep.mults:
        terms.append(rep.mults[-n])
        n += 1
    maps = []
    x = rep.proj_complex()
    for k in range(1, len(terms)):
        maps.append(x.diff(-k))
    cover = None
    if 0 in rep.pi:
        cover = ModuleHom(proj_sum(a, terms[0]), m, rep.pi[0])
    return ResolutionReport(
        m, terms, maps, cover, rep.status,
        [s for _, s in rep.syzygies], rep.iso_certificate, rep,
    )


def default_depth(a: BasedAlgebra) -> int:
    return 2 * a.dim + 4


def proj_resolve_complex(c, depth: int | None = None, seed: int = 0):
    """Compactness test for a bounded complex: returns (witness, status).

    `c` is either a ProjComplex (already compact; returned as-is) or a pair
    (mods, diffs) describing a bounded complex of modules.  A Finite status
    comes with the minimal projective replacement as witness; Periodic is
    certified non-compact evidence; DepthExceeded decides nothing."""
    if isinstance(c, ProjComplex):
        return c, Finite(len(c.degrees))
    mods, diffs = c
    nonzero = [m for m in mods.values() if m.dim]
    if not nonzero:
        return None, Finite(-1)
    a = nonzero[0].algebra
    if depth is None:
        depth = default_depth(a)
    rep = minimal_replacement(mods, diffs, depth, seed)
    if isinstance(rep.status, Finite):
        return rep.proj_complex(), rep.status
    return None, rep.status


def pd(m: FDModule, depth: int | None = None, seed: int = 0):
    """PdStatus of a module: Finite(n) | Periodic | DepthExceeded."""
    if m.dim == 0:
        return Finite(-1)
    return min_resolution(m, depth, seed).status


def gldim(a: BasedAlgebra, depth: int | None = None, seed: int = 0) -> GldimStatus:
    """Max over pd of the simples; Infinite on any certified Periodic."""
    worst = -1
    unknown = None
    for v in range(a.num_vertices):
        st = pd(simple_module(a, v), depth, seed)
        if isinstance(st, Periodic):
            return GldimStatus("Infinite", witness=(v, st))
        if isinstance(st, DepthExceeded):
            unknown = (v, st)
        else:
            worst = max(worst, st.n)
    if unknown is not None:
        return GldimStatus("Unknown", witness=unknown)
    return GldimStatus("Finite", n=worst)


# ---------------------------------------------------------------------------
# Ext and Tor via the minimal resolution


def idempotent_component(n: FDModule, v: int) -> Mat:
    """Column basis of n e_v."""
    return column_space_basis(n.action[n.algebra.idempotents[v]])


def _coords_in_basis(basis: Mat, vec) -> list:
    sol = solve(basis, Mat.from_columns(basis.field, [vec], basis.nrows))
    if sol is None:
        raise InvariantViolation("vector outside component span")
    return sol.column(0)


def ext_dim(m: FDModule, n: FDModule, i: int, depth: int | None = None,
            seed: int = 0):
    """dim Ext^i(m, n), or None (unknown) if the resolution was truncated
    before degree i."""
    if i < 0:
        raise RecolleError("ext degree must be >= 0")
    a = m.algebra
    if depth is None:
        depth = default_depth(a) + i
    res = _resolution_with_terms(m, max(depth, i + 1), i + 2, seed)
    if isinstance(res.status, DepthExceeded) and len(res.terms) <= i + 1:
        return None
    hom_dims, deltas = _hom_complex(res, n, i + 1)
    return _cohomology_at(hom_dims, deltas, i)


def _resolution_with_terms(m: FDModule, depth: int, nterms: int, seed: int):
    """Resolution forced to carry at least nterms terms (when not Finite)."""
    return min_resolution(m, depth, seed, min_syzygies=nterms)


def _hom_complex(res: ResolutionReport, n: FDModule, upto: int):
    """Hom(term_k, n) coordinates and differentials for k = 0..upto."""
    a = res.module.algebra
    f = a.field
    comp_basis = [idempotent_component(n, v) for v in range(a.num_vertices)]
    dims = []
    deltas = []
    slot_lists = []
    for k in range(upto + 1):
        mults = res.terms[k] if k < len(res.terms) else [0] * a.num_vertices
        slots = expand_mults(a, mults)
        slot_lists.append(slots)
        dims.append(sum(comp_basis[v].ncols for v in slots))
    for k in range(upto):
        # delta_k : Hom(term_k, n) -> Hom(term_{k+1}, n), f -> f . d_{k+1}
        if k + 1 >= len(res.terms):
            deltas.append(Mat.zero(f, dims[k + 1], dims[k]))
            continue
        d = res.maps[k]  # CornerMat: term_{k+1} -> term_k
        src_slots = slot_lists[k]
        tgt_slots = slot_lists[k + 1]
        mat = Mat.zero(f, dims[k + 1], dims[k])
        soff = [0]
        for v in src_slots:
            soff.append(soff[-1] + comp_basis[v].ncols)
        toff = [0]
        for v in tgt_slots:
            toff.append(toff[-1] + comp_basis[v].ncols)
        for t, w in enumerate(tgt_slots):
            for s, v in enumerate(src_slots):
                g = d.entries[s][t]  # term_{k+1} slot t -> term_k slot s
                if all(f.is_zero(c) for c in g):
                    continue
                act = n.act_matrix(g)
                for cidx in range(comp_basis[v].ncols):
                    img = act.apply(comp_basis[v].column(cidx))
                    coords = _coords_in_basis(comp_basis[w], img)
                    for ridx, c in enumerate(coords):
                        mat.rows[toff[t] + ridx][soff[s] + cidx] = f.add(
                            mat.rows[toff[t] + ridx][soff[s] + cidx], c
                        )
        deltas.append(mat)
    return dims, deltas


def _cohomology_at(dims, deltas, i):
    rk_out = rank(deltas[i]) if i < len(deltas) else 0
    rk_in = rank(deltas[i - 1]) if i >= 1 else 0
    return dims[i] - rk_out - rk_in


def tor_dim(m: FDModule, n: FDModule, i: int, depth: int | None = None,
            seed: int = 0):
    """dim Tor_i(m, n) for m right over A and n right over A^op; None when
    the truncated resolution cannot decide."""
    if i < 0:
        raise RecolleError("tor degree must be >= 0")
    a = m.algebra
    if depth is None:
        depth = default_depth(a) + i
    res = _resolution_with_terms(m, max(depth, i + 1), i + 2, seed)
    if isinstance(res.status, DepthExceeded) and len(res.terms) <= i + 1:
        return None
    f = a.field
    comp_basis = [column_space_basis(n.action[a.idempotents[v]])
                  for v in range(a.num_vertices)]
    dims = []
    slot_lists = []
    for k in range(i + 2):
        mults = res.terms[k] if k < len(res.terms) else [0] * a.num_vertices
        slots = expand_mults(a, mults)
        slot_lists.append(slots)
        dims.append(sum(comp_basis[v].ncols for v in slots))
    bounds = []
    for k in range(i + 1):
        # term_{k+1} (x) n -> term_k (x) n
        if k + 1 >= len(res.terms):
            bounds.append(Mat.zero(f, dims[k], dims[k + 1]))
            continue
        d = res.maps[k]
        src_slots = slot_lists[k + 1]
        tgt_slots = slot_lists[k]
        soff = [0]
        for v in src_slots:
            soff.append(soff[-1] + comp_basis[v].ncols)
        toff = [0]
        for v in tgt_slots:
            toff.append(toff[-1] + comp_basis[v].ncols)
        mat = Mat.zero(f, dims[k], dims[k + 1])
        for t, w in enumerate(tgt_slots):
            for s, v in enumerate(src_slots):
                # d rows are term_k summands, cols are term_{k+1} summands
                g = d.entries[t][s]
                if all(f.is_zero(c) for c in g):
                    continue
                act = n.act_matrix(g)
                for cidx in range(comp_basis[v].ncols):
                    img = act.apply(comp_basis[v].column(cidx))
                    coords = _coords_in_basis(comp_basis[w], img)
                    for ridx, c in enumerate(coords):
                        mat.rows[toff[t] + ridx][soff[s] + cidx] = f.add(
                            mat.rows[toff[t] + ridx][soff[s] + cidx], c
                        )
        bounds.append(mat)
    rk_out = rank(bounds[i])
    rk_in = rank(bounds[i - 1]) if i >= 1 else 0
    return dims[i] - rk_out - rk_in


# ---------------------------------------------------------------------------
# lifting module endomorphisms along resolutions


def elementary_corner_maps(a: BasedAlgebra, src_mults, tgt_mults):
    """Unknown coordinates for module maps proj_sum(src) -> proj_sum(tgt):
    list of ((t, s, i), expanded elementary matrix)."""
    src = expand_mults(a, src_mults)
    tgt = expand_mults(a, tgt_mults)
    out = []
    for t, w in enumerate(tgt):
        for s, v in enumerate(src):
            for i in a.corner_indices(w, v):
                cm = CornerMat(a, tgt, src)
                cm.entries[t][s] = a.basis_vec(i)
                out.append(((t, s, i), cm.expanded()))
    return out


def solve_map_equation(a, src_mults, tgt_mults, lhs_left: Mat | None,
                       rhs: Mat, lhs_right: Mat | None = None):
    """Solve L @ X @ R = rhs for a module map X: proj(src) -> proj(tgt);
    returns the expanded matrix of one solution or None."""
    f = a.field
    elems = elementary_corner_maps(a, src_mults, tgt_mults)
    if not elems:
        return None if not rhs.is_zero() else Mat.zero(f, rhs.nrows, rhs.ncols)
    cols = []
    for _, e in elems:
        m = e
        if lhs_left is not None:
            m = lhs_left @ m
        if lhs_right is not None:
            m = m @ lhs_right
        cols.append([m.rows[r][c] for r in range(m.nrows) for c in range(m.ncols)])
    sysm = Mat.from_columns(f, cols, rhs.nrows * rhs.ncols)
    target = Mat.from_columns(
        f, [[rhs.rows[r][c] for r in range(rhs.nrows) for c in range(rhs.ncols)]],
        rhs.nrows * rhs.ncols,
    )
    sol = solve(sysm, target)
    if sol is None:
        return None
    out = None
    for n, (_, e) in enumerate(elems):
        term = e.scale(sol.rows[n][0])
        out = term if out is None else out + term
    return out


def lift_action(res: ResolutionReport, endo: Mat, verify: bool = True) -> list[Mat]:
    """Lift a module endomorphism of res.module to a chain self-map of the
    resolution (expanded matrices per degree)."""
    m = res.module
    a = m.algebra
    f = a.field
    for j in range(a.dim):
        if endo @ m.action[j] != m.action[j] @ endo:
            raise LiftInconsistent("endomorphism does not commute with the action")
    lifts: list[Mat] = []
    if not res.terms:
        return lifts
    # degree 0: pi . X = endo . pi
    pi = res.cover.matrix
    x0 = solve_map_equation(a, res.terms[0], res.terms[0], pi,
                            endo @ pi)
    if x0 is None:
        raise LiftInconsistent("no lift at degree 0")
    lifts.append(x0)
    for k in range(1, len(res.terms)):
        d = res.maps[k - 1].expanded()  # term_k -> term_{k-1}
        xk = solve_map_equation(a, res.terms[k], res.terms[k], d,
                                lifts[k - 1] @ d)
        if xk is None:
            raise LiftInconsistent(f"no lift at degree {k}")
        lifts.append(xk)
    if verify:
        if pi @ lifts[0] != endo @ pi:
            raise InvariantViolation("lift fails at the cover")
        for k in range(1, len(lifts)):
            d = res.maps[k - 1].expanded()
            if d @ lifts[k] != lifts[k - 1] @ d:
                raise InvariantViolation(f"lift fails to commute at degree {k}")
    return lifts
