"""The cone generator of the radical-square-zero example does not induce an
algebra recollement: the total cohomology of (X^tr tensor_C X) grows without
bound with the truncation depth of the C-side resolution."""

from recolle import presets
from recolle.algebra import build_algebra, opposite
from recolle.bimodules import BimoduleComplex, dual_over_proj_ring, op_ring
from recolle.complexes import (
    CornerMat,
    corner_from_expanded,
    expand_mults,
    two_term_complex,
)
from recolle.linalg import Mat, rank
from recolle.modules import simple_module
from recolle.resolutions import minimal_replacement, tor_dim


def test_tor_over_the_cone_endomorphism_algebra():
    """Tor_i(k, k) over k[x,y]/(x^2, y^2, xy) doubles with i: the syzygy of
    the simple is two copies of it."""
    c = build_algebra(presets.commutative_fat_point())
    assert c.dim == 3
    k = simple_module(c, 0)
    kop = simple_module(opposite(c), 0)
    assert [tor_dim(k, kop, i) for i in range(6)] == [1, 2, 4, 8, 16, 32]


def build_cone_with_path_model_action():
    """X = Cone(P2 -> P1) over the radical-square-zero algebra, with the
    strict action of the path model of End(X): the unit acts as the
    identity, one radical generator by the loop at 2 in degree -1, the other
    by the loop at 1 in degree 0 (all products vanish on both sides)."""
    a = build_algebra(presets.radical_square_zero())
    a_idx = a.labels.index("a")
    x = two_term_complex(a, [0, 1], [1, 0], [[a.basis_vec(a_idx)]])
    c3 = build_algebra(presets.commutative_fat_point())

    def single(mat_entries, degree):
        summ = x.summands(degree)
        cm = CornerMat(a, summ, summ)
        for t in range(len(summ)):
            for s in range(len(summ)):
                cm.entries[t][s] = list(mat_entries[t][s])
        return cm

    b_idx = a.labels.index("b")
    g_idx = a.labels.index("g")
    e1 = a.basis_vec(a.idempotents[0])
    e2 = a.basis_vec(a.idempotents[1])
    unit_action = {
        -1: single([[e2]], -1),
        0: single([[e1]], 0),
    }
    x_action = {-1: single([[a.basis_vec(b_idx)]], -1),
                0: single([[a.zero_vec()]], 0)}
    y_action = {-1: single([[a.zero_vec()]], -1),
                0: single([[a.basis_vec(g_idx)]], 0)}
    # c3 basis order: e, x, y
    action = [unit_action, x_action, y_action]
    bc = BimoduleComplex(a, x, c3, action, label="X")
    bc.verify()
    return a, x, c3, bc


def test_truncated_tensor_cohomology_grows():
    a, x, c3, bc = build_cone_with_path_model_action()
    f = a.field
    c3op = op_ring(c3)

    # X as a complex of left C-modules (right C^op), and its dual X^tr as a
    # complex of right C-modules
    mods, diffs = bc.act_side_modules()
    xtr = dual_over_proj_ring(bc)
    xtr_mods, xtr_diffs = xtr.act_side_modules()
    pdims = {p: m.dim for p, m in xtr_mods.items()}

    def window_dim(depth):
        rep = minimal_replacement(mods, diffs, depth, min_syzygies=depth)
        ranks = {q: sum(m) for q, m in rep.mults.items()}

        def vertical_entry(q, mod):
            dq = rep.dmaps.get(q)
            if dq is None or ranks.get(q + 1, 0) == 0:
                return None
            rows = expand_mults(c3op, [ranks[q + 1]])
            cols = expand_mults(c3op, [ranks[q]])
            cm = corner_from_expanded(c3op, dq, rows, cols)
            big = Mat.zero(f, mod.dim * len(rows), mod.dim * len(cols))
            for t in range(len(rows)):
                for s in range(len(cols)):
                    blk = mod.act_matrix(cm.entries[t][s])
                    for i in range(mod.dim):
                        for j in range(mod.dim):
                            big.rows[t * mod.dim + i][s * mod.dim + j] = \
                                blk.rows[i][j]
            return big

        degrees = {}
        for q in ranks:
            for p in pdims:
                degrees.setdefault(p + q, []).append((p, q))

        def total_dim_at(n):
            return sum(pdims[p] * ranks[q] for (p, q) in degrees.get(n, []))

        def total_diff(n):
            src = degrees.get(n, [])
            tgt = degrees.get(n + 1, [])
            if not src or not tgt:
                return None
            soff, pos = {}, 0
            for pq in sorted(src):
                soff[pq] = pos
                pos += pdims[pq[0]] * ranks[pq[1]]
            src_total = pos
            toff, pos = {}, 0
            for pq in sorted(tgt):
                toff[pq] = pos
                pos += pdims[pq[0]] * ranks[pq[1]]
            big = Mat.zero(f, pos, src_total)
            for (p, q) in sorted(src):
                if (p + 1, q) in toff:
                    dh = xtr_diffs.get(p)
                    if dh is not None:
                        for copy in range(ranks[q]):
                            for i in range(dh.nrows):
                                for j in range(dh.ncols):
                                    big.rows[toff[(p + 1, q)] + copy * dh.nrows + i][
                                        soff[(p, q)] + copy * dh.ncols + j] = \
                                        dh.rows[i][j]
                if (p, q + 1) in toff:
                    dv = vertical_entry(q, xtr_mods[p])
                    if dv is not None:
                        sign = f.one if p % 2 == 0 else f.neg(f.one)
                        for i in range(dv.nrows):
                            for j in range(dv.ncols):
                                big.rows[toff[(p, q + 1)] + i][soff[(p, q)] + j] = \
                                    f.mul(sign, dv.rows[i][j])
            return big

        total = 0
        for n in range(-depth + 2, 2):
            dn = total_diff(n)
            dn1 = total_diff(n + 1)
            if dn is not None and dn1 is not None:
                assert (dn1 @ dn).is_zero()
            dim_n = total_dim_at(n)
            rk_out = rank(dn) if dn is not None else 0
            prev = total_diff(n - 1)
            rk_in = rank(prev) if prev is not None else 0
            total += dim_n - rk_out - rk_in
        return total

    small = window_dim(3)
    large = window_dim(6)
    assert large > small >= 1
