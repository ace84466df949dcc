"""One-sided projective resolutions of bimodules with the other-side action
transported along the resolution.

Everything here is organized around a single container: a complex of
projective right modules over `proj_ring` together with a strict left action
of `act_ring` by chain maps in corner form.  Dualizing over proj_ring is a
formal transpose (entries unchanged, positions flipped, ring replaced by its
opposite); resolving over the act side replaces the complex by its minimal
projective replacement over opposite(act_ring) and lifts the right
proj_ring-action through it, verifying strictness.  Compactness questions for
the iterated duals of a recollement bimodule reduce to the termination
statuses of these resolve steps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import BasedAlgebra, corner, opposite
from .complexes import (
    CornerMat,
    ProjComplex,
    expand_mults,
    stalk_complex,
)
from .errors import InvariantViolation
from .linalg import Mat, solve
from .modules import FDModule
from .resolutions import (
    Replacement,
    elementary_corner_maps,
    minimal_replacement,
)
from .verdicts import Finite


def op_ring(a: BasedAlgebra) -> BasedAlgebra:
    """Memoized opposite so double opposites return the original object."""
    if getattr(a, "_op_cache", None) is None:
        o = opposite(a)
        a._op_cache = o
        o._op_cache = a
    return a._op_cache


@dataclass
class BimoduleComplex:
    """Complex of projective right proj_ring-modules with a strict left
    act_ring-action by chain maps; action[s][d] is a CornerMat on the
    degree-d component (entries are proj_ring elements acting on the left)."""

    proj_ring: BasedAlgebra
    complex: ProjComplex
    act_ring: BasedAlgebra
    action: list[dict[int, CornerMat]]
    label: str = ""

    def act_mat(self, s: int, d: int) -> CornerMat:
        m = self.action[s].get(d)
        if m is None:
            summ = self.complex.summands(d)
            return CornerMat(self.proj_ring, summ, summ)
        return m

    def act_expanded(self, s: int, d: int) -> Mat:
        return self.act_mat(s, d).expanded()

    def verify(self):
        x = self.complex
        sring = self.act_ring
        f = sring.field
        dims = {d: x.module_at(d).dim for d in x.degrees}
        for s in range(sring.dim):
            for d in x.degrees:
                if d + 1 not in x.comps:
                    continue
                dm = x.diff(d).expanded()
                if dm @ self.act_expanded(s, d) != self.act_expanded(s, d + 1) @ dm:
                    raise InvariantViolation("action is not by chain maps")
        for d in x.degrees:
            acc = Mat.zero(f, dims[d], dims[d])
            for k, c in enumerate(sring.unit):
                if not f.is_zero(c):
                    acc = acc + self.act_expanded(k, d).scale(c)
            if acc != Mat.identity(f, dims[d]):
                raise InvariantViolation("unit does not act as identity")
        for i in range(sring.dim):
            for j in range(sring.dim):
                for d in x.degrees:
                    lhs = self.act_expanded(i, d) @ self.act_expanded(j, d)
                    rhs = Mat.zero(f, dims[d], dims[d])
                    for k, c in sring.mul_basis(i, j):
                        rhs = rhs + self.act_expanded(k, d).scale(c)
                    if lhs != rhs:
                        raise InvariantViolation(
                            f"action not strictly multiplicative at ({i},{j})"
                        )

    def act_side_modules(self):
        """The complex as a complex of right opposite(act_ring)-modules."""
        t = op_ring(self.act_ring)
        x = self.complex
        mods = {}
        diffs = {}
        for d in x.degrees:
            dim = x.module_at(d).dim
            action = [self.act_expanded(s, d) for s in range(t.dim)]
            mods[d] = FDModule(t, dim, action, label=f"{self.label}^{d}")
        for d in x.degrees:
            if d + 1 in x.comps:
                diffs[d] = x.diff(d).expanded()
        return mods, diffs


def corner_element_in_parent(c: BasedAlgebra, j: int):
    """A corner basis element as a parent-algebra vector."""
    a = c.parent
    vec = a.zero_vec()
    vec[c.parent_basis[j]] = a.field.one
    return vec


def eA_bimodule(a: BasedAlgebra, verts: list[int],
                c: BasedAlgebra | None = None) -> BimoduleComplex:
    """The stalk eA as projective right A-modules with its left eAe-action."""
    if c is None:
        c = corner(a, verts)
    mults = [0] * a.num_vertices
    for v in verts:
        mults[v] = 1
    x = stalk_complex(a, mults)
    summ = x.summands(0)
    action = []
    for j in range(c.dim):
        pj = c.parent_basis[j]
        cm = CornerMat(a, summ, summ)
        for t, w in enumerate(summ):
            for s, v in enumerate(summ):
                if a.lv[pj] == w and a.rv[pj] == v:
                    cm.entries[t][s] = a.basis_vec(pj)
        action.append({0: cm})
    bc = BimoduleComplex(a, x, c, action, label="eA")
    bc.verify()
    return bc


def dual_over_proj_ring(bc: BimoduleComplex) -> BimoduleComplex:
    """Hom into proj_ring: transpose complex and action; the left
    act_ring-action becomes a left opposite(act_ring)-action."""
    a = bc.proj_ring
    aop = op_ring(a)
    x = bc.complex
    comps = {-d: list(m) for d, m in x.comps.items()}
    diffs = {}
    for d in x.degrees:
        if d + 1 not in x.comps:
            continue
        diffs[-(d + 1)] = _transpose_corner(aop, x.diff(d))
    xtr = ProjComplex(aop, comps, diffs)
    xtr.verify_d_squared()
    sop = op_ring(bc.act_ring)
    action = []
    for s in range(sop.dim):
        fam = {}
        for d in x.degrees:
            fam[-d] = _transpose_corner(aop, bc.act_mat(s, d))
        action.append(fam)
    out = BimoduleComplex(aop, xtr, sop, action, label=f"({bc.label})^tr")
    out.verify()
    return out


def _transpose_corner(aop: BasedAlgebra, cm: CornerMat) -> CornerMat:
    out = CornerMat(aop, cm.cols, cm.rows)
    for t in range(len(cm.rows)):
        for s in range(len(cm.cols)):
            out.entries[s][t] = list(cm.entries[t][s])
    return out


@dataclass
class ResolveOutcome:
    status: object
    result: BimoduleComplex | None
    strict: bool
    replacement: Replacement | None = None
    note: str = ""

    def json(self):
        return {
            "status": self.status.json() if hasattr(self.status, "json") else str(self.status),
            "strict": self.strict,
            "note": self.note,
        }


def resolve_act_side(bc: BimoduleComplex, depth: int, seed: int = 0) -> ResolveOutcome:
    """Resolve the complex over the act side and transport the right
    proj_ring-action through the replacement.

    The result (when the status is Finite and the transported action is
    strict) is a BimoduleComplex over opposite(act_ring) whose act ring is
    opposite(old proj_ring)."""
    if bc.act_ring.dim == 1:
        return _resolve_over_base_field(bc)
    mods, diffs = bc.act_side_modules()
    rep = minimal_replacement(mods, diffs, depth, seed)
    if not isinstance(rep.status, Finite):
        return ResolveOutcome(rep.status, None, False, rep)
    t = op_ring(bc.act_ring)
    q = rep.proj_complex()
    right = [
        {d: bc.complex.module_at(d).action[b] for d in bc.complex.degrees}
        for b in range(bc.proj_ring.dim)
    ]
    lifted, strict = _lift_family_through_replacement(rep, right, bc.proj_ring,
                                                      side="right")
    if lifted is None:
        return ResolveOutcome(rep.status, None, False, rep,
                              note="no strict transported action found")
    new_act = op_ring(bc.proj_ring)
    out = BimoduleComplex(t, q, new_act, lifted, label=f"R({bc.label})")
    try:
        out.verify()
    except InvariantViolation as exc:
        return ResolveOutcome(rep.status, None, False, rep,
                              note=f"transported action failed checks: {exc}")
    return ResolveOutcome(rep.status, out, strict, rep)


def _resolve_over_base_field(bc: BimoduleComplex) -> ResolveOutcome:
    """When the act ring is the ground field, the minimal replacement over it
    is the cohomology with zero differentials, and the transported action is
    the honest induced action on the cohomology subquotients."""
    from .modules import kernel_module, quotient_module
    from .linalg import column_space_basis

    a = bc.proj_ring
    f = a.field
    t = op_ring(bc.act_ring)
    x = bc.complex
    comps: dict[int, list[int]] = {}
    action_mats: dict[int, list[Mat]] = {}
    for d in x.degrees:
        mod = x.module_at(d)
        dmat = x.diff(d).expanded() if d + 1 in x.comps else Mat.zero(f, 0, mod.dim)
        ker, incl = kernel_module(dmat, mod)
        if d - 1 in x.comps:
            prev = x.diff(d - 1).expanded()
            img_cols = []
            for c in range(prev.ncols):
                vec = prev.column(c)
                coords = solve(incl, Mat.from_columns(f, [vec], mod.dim))
                if coords is None:
                    raise InvariantViolation("image not contained in kernel")
                img_cols.append(coords.column(0))
            span = column_space_basis(Mat.from_columns(f, img_cols, ker.dim)) \
                if img_cols else Mat.zero(f, ker.dim, 0)
            hmod, _ = quotient_module(ker, span, label=f"H^{d}")
        else:
            hmod = ker
        if hmod.dim:
            comps[d] = [hmod.dim]
            action_mats[d] = [hmod.action[j] for j in range(a.dim)]
    xnew = ProjComplex(t, comps, {})
    new_act = op_ring(a)
    action: list[dict[int, CornerMat]] = []
    for b in range(new_act.dim):
        fam = {}
        for d, mats in action_mats.items():
            summ = xnew.summands(d)
            cm = CornerMat(t, summ, summ)
            m = mats[b]
            for i in range(m.nrows):
                for j in range(m.ncols):
                    c = m.rows[i][j]
                    if not f.is_zero(c):
                        vec = t.zero_vec()
                        vec[t.idempotents[0]] = c
                        cm.entries[i][j] = vec
            fam[d] = cm
        action.append(fam)
    out = BimoduleComplex(t, xnew, new_act, action, label=f"H({bc.label})")
    out.verify()
    return ResolveOutcome(Finite(len(comps)), out, True, None,
                          note="cohomology over the ground field")


def _vidx(a, v):
    return [i for i in range(a.dim) if a.lv[i] == v]


def _scalar_of_family(f, fam) -> object | None:
    scalar = None
    for _, m in fam.items():
        for i in range(m.nrows):
            for j in range(m.ncols):
                if i == j:
                    if scalar is None:
                        scalar = m.rows[i][j]
                    elif m.rows[i][j] != scalar:
                        return None
                elif not f.is_zero(m.rows[i][j]):
                    return None
    return scalar


def _identity_corner_scaled(a: BasedAlgebra, summ, scalar) -> CornerMat:
    cm = CornerMat(a, summ, summ)
    for t, v in enumerate(summ):
        vec = a.zero_vec()
        vec[a.idempotents[v]] = scalar
        cm.entries[t][t] = vec
    return cm


def _lift_family_through_replacement(rep: Replacement, fams,
                                     rring: BasedAlgebra, side: str):
    """Lift each chain self-map in fams to a chain self-map of the
    replacement with pi . tau = F . pi exactly; `side` fixes the
    multiplicativity convention (right: F_{m(i,j)} = F_j F_i; left:
    F_{m(i,j)} = F_i F_j).  Returns (corner families, strict) or
    (None, False)."""
    a = rep.algebra
    f = a.field
    degs = sorted(rep.mults, reverse=True)
    if not degs:
        return [{} for _ in range(rring.dim)], True
    summ = {d: expand_mults(a, rep.mults[d]) for d in degs}
    lifted: list[dict[int, CornerMat]] = []
    for b in range(rring.dim):
        scalar = _scalar_of_family(f, fams[b])
        if scalar is not None:
            lifted.append({d: _identity_corner_scaled(a, summ[d], scalar)
                           for d in degs})
            continue
        fam: dict[int, CornerMat] = {}
        ok = True
        for d in degs:
            mults = rep.mults[d]
            pi = rep.pi.get(d)
            fmat = fams[b].get(d)
            blocks = []
            rhss = []
            if pi is not None:
                blocks.append(pi)
                rhss.append(fmat @ pi if fmat is not None
                            else Mat.zero(f, pi.nrows, pi.ncols))
            dq = rep.dmaps.get(d)
            if dq is not None and (d + 1) in fam:
                blocks.append(dq)
                rhss.append(fam[d + 1].expanded() @ dq)
            tau = _solve_joint_corner(a, mults, blocks, rhss, summ[d])
            if tau is None:
                ok = False
                break
            fam[d] = tau
        if not ok:
            return None, False
        lifted.append(fam)
    # strictness check with the side-appropriate composition rule
    exp = [
        {d: cm.expanded() for d, cm in fam.items()}
        for fam in lifted
    ]
    dims = {d: sum(len(_vidx(a, v)) * m for v, m in enumerate(rep.mults[d]))
            for d in degs}
    for i in range(rring.dim):
        for j in range(rring.dim):
            for d in degs:
                mi, mj = exp[i][d], exp[j][d]
                prod = (mj @ mi) if side == "right" else (mi @ mj)
                rhs = Mat.zero(f, dims[d], dims[d])
                for k, c in rring.mul_basis(i, j):
                    rhs = rhs + exp[k][d].scale(c)
                if prod != rhs:
                    return None, False
    return lifted, True


def _solve_joint_corner(a: BasedAlgebra, mults, blocks, rhss, summ):
    """Solve simultaneous L_k @ X = R_k for a module self-map X of
    proj_sum(mults); returns X as a CornerMat or None."""
    f = a.field
    elems = elementary_corner_maps(a, mults, mults)
    dim = sum(len(_vidx(a, v)) * m for v, m in enumerate(mults))
    out_cm = CornerMat(a, summ, summ)
    if not elems:
        for r in rhss:
            if not r.is_zero():
                return None
        return out_cm
    cols = []
    height = sum(r.nrows * r.ncols for r in rhss)
    for _, e in elems:
        col = []
        for lmat, r in zip(blocks, rhss):
            m = lmat @ e
            col.extend(m.rows[i][j] for i in range(m.nrows) for j in range(m.ncols))
        cols.append(col)
    target = []
    for r in rhss:
        target.extend(r.rows[i][j] for i in range(r.nrows) for j in range(r.ncols))
    sysm = Mat.from_columns(f, cols, height)
    sol = solve(sysm, Mat.from_columns(f, [target], height))
    if sol is None:
        return None
    for n, ((t, s, i), _) in enumerate(elems):
        c = sol.rows[n][0]
        if not f.is_zero(c):
            out_cm.entries[t][s][i] = f.add(out_cm.entries[t][s][i], c)
    return out_cm


# ---------------------------------------------------------------------------
# the two recollement functor values that need this machinery


def jstar_complex(a: BasedAlgebra, verts: list[int], depth: int, seed: int = 0,
                  c: BasedAlgebra | None = None):
    """RHom_C(Ae, C) with its right A-action, as a complex of A-modules.

    Returns (mods, diffs, outcome); mods is None when the C-side resolution
    does not terminate or no strict transported action was found."""
    if c is None:
        c = corner(a, verts)
    bc = eA_bimodule(a, verts, c)
    ae = dual_over_proj_ring(bc)          # Ae over A^op, left C^op-action
    outcome = resolve_act_side(ae, depth, seed)
    if outcome.result is None:
        return None, None, outcome
    js = dual_over_proj_ring(outcome.result)   # over C^op, right A-action
    mods, diffs = js.act_side_modules()        # honest right A-modules
    return mods, diffs, outcome


def ishriek_complex(a: BasedAlgebra, verts: list[int], depth: int,
                    seed: int = 0, b: BasedAlgebra | None = None):
    """RHom_A(B, A) with its right B-action, as a complex of B-modules.

    Returns (mods, diffs, outcome); needs pd_A(B) finite."""
    from .algebra import quotient_by_idempotent_ideal
    from .modules import free_module, quotient_algebra_as_right_module

    if b is None:
        b = quotient_by_idempotent_ideal(a, verts)
    bmod, proj = quotient_algebra_as_right_module(a, verts)
    f = a.field
    fm = free_module(a)
    coords = []
    for s, (v, idxs) in enumerate(fm.slots):
        coords.extend(idxs)
    posn = {bb: n for n, bb in enumerate(coords)}
    section = _module_section(proj)
    action_fams = []
    for j in range(b.dim):
        pj = b.parent_basis[j]
        lm = Mat.zero(f, fm.dim, fm.dim)
        for n, bb in enumerate(coords):
            for k, coeff in a.mul_basis(pj, bb):
                lm.rows[posn[k]][n] = coeff
        action_fams.append({0: proj @ lm @ section})
    mods = {0: bmod}
    rep = minimal_replacement(mods, {}, depth, seed)
    if not isinstance(rep.status, Finite):
        return None, None, ResolveOutcome(rep.status, None, False, rep)
    lifted, strict = _lift_family_through_replacement(rep, action_fams, b,
                                                      side="left")
    if lifted is None:
        return None, None, ResolveOutcome(rep.status, None, False, rep,
                                          note="no strict lifted B-action")
    q = rep.proj_complex()
    bcq = BimoduleComplex(a, q, b, lifted, label="res(B_A)")
    try:
        bcq.verify()
    except InvariantViolation as exc:
        return None, None, ResolveOutcome(rep.status, None, False, rep,
                                          note=f"lifted action failed: {exc}")
    ish = dual_over_proj_ring(bcq)        # over A^op, left B^op = right B
    mods_b, diffs_b = ish.act_side_modules()
    return mods_b, diffs_b, ResolveOutcome(rep.status, ish, strict, rep)


def _module_section(proj: Mat) -> Mat:
    """Right inverse of a surjective projection matrix."""
    sol = solve(proj, Mat.identity(proj.field, proj.nrows))
    if sol is None:
        raise InvariantViolation("projection is not surjective")
    return sol
