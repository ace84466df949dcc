"""Ladder extensions, iterated dual bimodules, the derived Nakayama functor,
and simplicity reports.

A recollement extends one step downwards exactly when A/AeA is perfect over
A, and one step upwards exactly when eA is perfect as a left eAe-module.
Further steps are governed by the compactness of the iterated one-sided duals
X_n of the bimodule eA; each certified step adds one recollement to the
ladder, and a certified failure at both ends makes the ladder complete.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import BasedAlgebra, is_local
from .bimodules import (
    BimoduleComplex,
    ResolveOutcome,
    dual_over_proj_ring,
    eA_bimodule,
    resolve_act_side,
)
from .complexes import ProjComplex, minimalize
from .errors import RecolleError, NotPerfect
from .linalg import Mat
from .modules import FDModule, left_corner_module_on_proj
from .recollement import IdempotentRecollement
from .resolutions import default_depth, gldim, min_resolution, minimal_replacement
from .verdicts import Finite, GldimStatus, Periodic, TriBool, pd_finite


def extend_down(rec: IdempotentRecollement, depth: int | None = None) -> TriBool:
    """One step downwards: pd_A(A/AeA) finite."""
    return pd_finite(rec.strat.resolution.status)


def extend_up(rec: IdempotentRecollement, depth: int | None = None) -> TriBool:
    """One step upwards: eA perfect as a left eAe-module."""
    a = rec.algebra
    if depth is None:
        depth = default_depth(a)
    ea_left, _ = left_corner_module_on_proj(a, rec.verts, rec.c)
    return pd_finite(min_resolution(ea_left, depth, rec.seed).status)


def derived_dual(bc: BimoduleComplex, side: str = "act",
                 depth: int | None = None, seed: int = 0) -> BimoduleComplex:
    """Hom of the bimodule complex into the ring on the designated side.

    side="proj" is the formal transpose (the complex already consists of
    projectives there); side="act" first resolves over the act side and then
    transposes, raising NotPerfect if the resolution does not terminate."""
    if side == "proj":
        return dual_over_proj_ring(bc)
    if depth is None:
        depth = default_depth(bc.act_ring)
    outcome = resolve_act_side(bc, depth, seed)
    if outcome.result is None:
        raise NotPerfect(outcome.status)
    return dual_over_proj_ring(outcome.result)


@dataclass
class LadderStep:
    direction: str            # "up" | "down"
    index: int
    verdict: TriBool
    status: object

    def json(self):
        return {
            "direction": self.direction,
            "index": self.index,
            "verdict": self.verdict.json(),
        }


@dataclass
class LadderReport:
    rec: IdempotentRecollement
    down_steps: list[LadderStep]
    up_steps: list[LadderStep]
    height_lower_bound: int
    complete_down: TriBool
    complete_up: TriBool

    @property
    def complete(self) -> TriBool:
        return self.complete_down.and_(self.complete_up)

    def certified_height(self) -> int:
        return self.height_lower_bound

    def json(self):
        return {
            "idempotent": [self.rec.algebra.vertices[v] for v in self.rec.verts],
            "down": [s.json() for s in self.down_steps],
            "up": [s.json() for s in self.up_steps],
            "height_lower_bound": self.height_lower_bound,
            "complete_down": self.complete_down.json(),
            "complete_up": self.complete_up.json(),
        }


def ladder_heights(rec: IdempotentRecollement, m: int = 2,
                   depth: int | None = None) -> LadderReport:
    """Iterate the dual chain in both directions up to m steps each and
    report certified verdicts per step."""
    a = rec.algebra
    if depth is None:
        depth = default_depth(a)
    seed = rec.seed
    bc = eA_bimodule(a, rec.verts, rec.c)

    def chain(start: BimoduleComplex, direction: str) -> list[LadderStep]:
        steps = []
        state = start
        for n in range(1, m + 1):
            if direction == "down":
                state = dual_over_proj_ring(state)
            outcome = resolve_act_side(state, depth, seed)
            if isinstance(outcome.status, Finite) and outcome.result is not None:
                steps.append(LadderStep(direction, n, TriBool.yes(outcome.status),
                                        outcome.status))
                state = outcome.result
                if direction == "up":
                    state = dual_over_proj_ring(state)
                continue
            if isinstance(outcome.status, Periodic):
                steps.append(LadderStep(direction, n, TriBool.no(outcome.status),
                                        outcome.status))
            elif isinstance(outcome.status, Finite):
                steps.append(LadderStep(
                    direction, n,
                    TriBool.unknown(outcome.note or "no strict transported action"),
                    outcome.status))
            else:
                steps.append(LadderStep(direction, n, TriBool.unknown(outcome.status),
                                        outcome.status))
            break
        return steps

    down = chain(bc, "down")
    up = chain(bc, "up")

    # cross-check: the first down step is equivalent to pd_A(A/AeA) finite
    if down:
        route_b = extend_down(rec, depth)
        if not down[0].verdict.is_unknown and not route_b.is_unknown:
            if down[0].verdict.value != route_b.value:
                from .errors import InvariantViolation

                raise InvariantViolation(
                    "(X_1)_C compactness disagrees with pd_A(A/AeA)"
                )
    if up:
        route_b = extend_up(rec, depth)
        if not up[0].verdict.is_unknown and not route_b.is_unknown:
            if up[0].verdict.value != route_b.value:
                from .errors import InvariantViolation

                raise InvariantViolation(
                    "left-C perfectness of eA disagrees along the two routes"
                )

    height = 1 + sum(1 for s in down if s.verdict.is_true) + sum(
        1 for s in up if s.verdict.is_true
    )

    # completeness means the ladder cannot be extended further: the first
    # non-True verdict must be a certified False
    def complete_flag(steps):
        for s in steps:
            if s.verdict.is_false:
                return TriBool.yes(s.status)
            if s.verdict.is_unknown:
                return TriBool.unknown(s.status)
        return TriBool.unknown(f"no failing step within {m}")

    return LadderReport(rec, down, up, height, complete_flag(down),
                        complete_flag(up))


# ---------------------------------------------------------------------------
# derived Nakayama functor


class InfiniteGlobalDimension(RecolleError):
    pass


def injective_module(a: BasedAlgebra, v: int) -> FDModule:
    """D(Ae_v) as a right A-module on the dual path basis."""
    f = a.field
    idxs = [i for i in range(a.dim) if a.rv[i] == v]
    pos = {b: n for n, b in enumerate(idxs)}
    action = []
    for j in range(a.dim):
        # (phi . b_j)(x_n) = phi(b_j x_n): entry (n, k) is the coefficient
        # of x_k in b_j x_n, i.e. the transposed left-multiplication matrix
        m = Mat.zero(f, len(idxs), len(idxs))
        for n, x in enumerate(idxs):
            for k, c in a.mul_basis(j, x):
                m.rows[n][pos[k]] = c
        action.append(m)
    name = a.vertices[v] if a.vertices else v
    out = FDModule(a, len(idxs), action, label=f"I_{name}")
    out.verify()
    return out


def _nu_map(a: BasedAlgebra, g, v: int, w: int) -> Mat:
    """The map I_v -> I_w dual to right multiplication Ae_w -> Ae_v by
    g in e_w A e_v."""
    f = a.field
    src = [i for i in range(a.dim) if a.rv[i] == v]
    tgt = [i for i in range(a.dim) if a.rv[i] == w]
    pos_src = {b: n for n, b in enumerate(src)}
    # right multiplication by g: Ae_w -> Ae_v, then transpose
    m = Mat.zero(f, len(src), len(tgt))
    for n, x in enumerate(tgt):
        prod = a.mul(a.basis_vec(x), g)
        for k, c in enumerate(prod):
            if not f.is_zero(c) and k in pos_src:
                m.rows[pos_src[k]][n] = c
            elif not f.is_zero(c):
                raise RecolleError("nu map escaped the injective component")
    return m.transpose()


def nakayama(a: BasedAlgebra, x: ProjComplex, depth: int | None = None,
             seed: int = 0) -> ProjComplex:
    """nu(x) = minimal projective replacement of the complex of injectives
    obtained by applying D Hom(-, A) componentwise; requires finite global
    dimension."""
    gl = gldim(a, depth, seed)
    if gl.kind != "Finite":
        raise InfiniteGlobalDimension(f"gldim status {gl}")
    if depth is None:
        depth = default_depth(a) + gl.n + x.amplitude + 2
    f = a.field
    from .modules import direct_sum

    mods: dict[int, FDModule] = {}
    offsets: dict[int, list[int]] = {}
    for d in x.degrees:
        summ = x.summands(d)
        parts = [injective_module(a, v) for v in summ]
        mods[d] = parts[0] if len(parts) == 1 else direct_sum(parts)
        offs = [0]
        for p in parts:
            offs.append(offs[-1] + p.dim)
        offsets[d] = offs
    diffs: dict[int, Mat] = {}
    for d in x.degrees:
        if d + 1 not in x.comps:
            continue
        cm = x.diff(d)
        big = Mat.zero(f, mods[d + 1].dim, mods[d].dim)
        for t, w in enumerate(cm.rows):
            for s, v in enumerate(cm.cols):
                g = cm.entries[t][s]
                if all(f.is_zero(c) for c in g):
                    continue
                blk = _nu_map(a, g, v, w)
                for i in range(blk.nrows):
                    for j in range(blk.ncols):
                        big.rows[offsets[d + 1][t] + i][offsets[d][s] + j] = \
                            f.add(big.rows[offsets[d + 1][t] + i][offsets[d][s] + j],
                                  blk.rows[i][j])
        diffs[d] = big
    rep = minimal_replacement(mods, diffs, depth, seed)
    if not isinstance(rep.status, Finite):
        raise InfiniteGlobalDimension(
            "injective complex has no finite replacement despite finite gldim"
        )
    out = rep.proj_complex()
    if not out.is_minimal():
        out = minimalize(out)
    return out


# ---------------------------------------------------------------------------
# simplicity reports


@dataclass
class LevelVerdict:
    kind: str                 # "SimpleCertified" | "NotSimple" | "NoWitnessFound"
    reason: str = ""
    witnesses: list = None

    def json(self):
        return {"kind": self.kind, "reason": self.reason,
                "witnesses": self.witnesses or []}

    def __repr__(self):
        return f"{self.kind}({self.reason})"


@dataclass
class SimplicityReport:
    d_mod: LevelVerdict
    d_minus: LevelVerdict
    kb_proj: LevelVerdict
    ladder_reports: list[LadderReport]

    def json(self):
        return {
            "D(Mod)": self.d_mod.json(),
            "D-(Mod)": self.d_minus.json(),
            "Kb(proj)/Db": self.kb_proj.json(),
        }


def simplicity_report(a: BasedAlgebra, depth: int | None = None,
                      max_steps: int = 2, seed: int = 0) -> SimplicityReport:
    """Local algebras are derived simple at every level (any recollement
    would split the rank 1 = r(B) + r(C)).  Otherwise idempotent-generated
    ladders provide NotSimple witnesses by height; absence of witnesses
    within the search bounds is reported as such, never as simplicity."""
    from .recollement import build_recollement, stratifying_status

    if depth is None:
        depth = default_depth(a)
    loc = is_local(a)
    if loc.is_true:
        reason = ("local algebra: rank additivity forces one side of any "
                  "recollement to vanish")
        v = LevelVerdict("SimpleCertified", reason)
        return SimplicityReport(v, v, v, [])
    reports = []
    import itertools

    r = a.num_vertices
    for size in range(1, r):
        for verts in itertools.combinations(range(r), size):
            st = stratifying_status(a, list(verts), depth, seed)
            if st.certified:
                rec = build_recollement(a, list(verts), depth, seed)
                reports.append(ladder_heights(rec, max_steps, depth))
    witnesses = [
        [rep.rec.algebra.vertices[v] for v in rep.rec.verts]
        for rep in reports
    ]

    def verdict(threshold: int) -> LevelVerdict:
        hits = [w for rep, w in zip(reports, witnesses)
                if rep.certified_height() >= threshold]
        if hits:
            return LevelVerdict(
                "NotSimple",
                f"idempotent ladder of certified height >= {threshold}",
                hits,
            )
        return LevelVerdict(
            "NoWitnessFound",
            f"no idempotent ladder of height >= {threshold} within bounds",
        )

    return SimplicityReport(verdict(1), verdict(2), verdict(3), reports)
