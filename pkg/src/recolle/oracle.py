"""Independent brute-force verifiers.

These cross-check the main algorithms on tiny instances and deliberately
share nothing with them beyond the exact linear algebra kernel: Hom spaces
are counted by exhaustive enumeration instead of solving, Tor comes from a
truncated normalized bar construction, and algebra dimensions from a
subword-avoidance automaton.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import BasedAlgebra, QuiverPresentation
from .errors import NonMonomial, RecolleError
from .fields import Field
from .linalg import Mat, rank
from .modules import FDModule


@dataclass
class OracleReport:
    target: str
    instance: str
    oracle_value: object
    main_value: object

    @property
    def agree(self) -> bool:
        return self.oracle_value == self.main_value

    def json(self):
        return {
            "target": self.target,
            "instance": self.instance,
            "oracle": self.oracle_value,
            "main": self.main_value,
            "agree": self.agree,
        }


# ---------------------------------------------------------------------------
# exhaustive Hom in the homotopy category over a small finite field


def _expand_left_mult(a: BasedAlgebra, g, tgt_vertex, src_vertex) -> Mat:
    """Matrix of left multiplication by g: e_src A -> e_tgt A in path bases."""
    f = a.field
    src_idx = [i for i in range(a.dim) if a.lv[i] == src_vertex]
    tgt_idx = [i for i in range(a.dim) if a.lv[i] == tgt_vertex]
    pos = {b: n for n, b in enumerate(tgt_idx)}
    m = Mat.zero(f, len(tgt_idx), len(src_idx))
    for c, j in enumerate(src_idx):
        img = a.mul(g, a.basis_vec(j))
        for k, val in enumerate(img):
            if not f.is_zero(val):
                m.rows[pos[k]][c] = val
    return m


def _degree_map_space(a: BasedAlgebra, src_summands, tgt_summands):
    """Elementary maps between projective sums, as expanded matrices."""
    elems = []
    src_off = [0]
    for v in src_summands:
        src_off.append(src_off[-1] + sum(1 for i in range(a.dim) if a.lv[i] == v))
    tgt_off = [0]
    for w in tgt_summands:
        tgt_off.append(tgt_off[-1] + sum(1 for i in range(a.dim) if a.lv[i] == w))
    total_r, total_c = tgt_off[-1], src_off[-1]
    f = a.field
    for t, w in enumerate(tgt_summands):
        for s, v in enumerate(src_summands):
            for i in range(a.dim):
                if a.lv[i] == w and a.rv[i] == v:
                    blk = _expand_left_mult(a, a.basis_vec(i), w, v)
                    big = Mat.zero(f, total_r, total_c)
                    for rr in range(blk.nrows):
                        for cc in range(blk.ncols):
                            big.rows[tgt_off[t] + rr][src_off[s] + cc] = blk.rows[rr][cc]
                    elems.append(big)
    return elems, total_r, total_c


def hom_bruteforce(x, y, n: int, limit: int = 1 << 24) -> int:
    """dim Hom_{K^b}(x, y[n]) by enumerating all degreewise maps and all
    homotopies over GF(2).

    Enumeration is vector-wise over every map assignment: chain maps are
    counted by evaluating the commutation defect, null-homotopic ones by
    collecting every boundary value; both counts are powers of 2 and the
    quotient dimension is their exponent difference."""
    a = x.algebra
    f = a.field
    if f.p != 2:
        raise RecolleError("brute-force Hom is implemented over GF(2)")
    sign = f.one

    xd = {d: x.diff(d).expanded() for d in x.diffs}
    yd = {d: y.diff(d).expanded() for d in y.diffs}

    # fixed layout of all "condition" coordinates (entries of maps
    # x^d -> y^{d+1+n}) for flattening defect matrices into bit integers
    cond_off: dict[int, int] = {}
    pos = 0
    for d in sorted(set(list(x.comps) + [dd - 1 for dd in x.comps])):
        rr = _expanded_dim(a, y, d + 1 + n)
        cc = _expanded_dim(a, x, d)
        if rr and cc:
            cond_off[d] = pos
            pos += rr * cc

    def flatten(d, m: Mat) -> int:
        if d not in cond_off:
            if not m.is_zero():
                raise RecolleError("defect lands outside condition layout")
            return 0
        acc = 0
        base = cond_off[d]
        cc = m.ncols
        for r in range(m.nrows):
            row = m.rows[r]
            for c in range(cc):
                if row[c]:
                    acc |= 1 << (base + r * cc + c)
        return acc

    def defect_of_map(d, e: Mat) -> int:
        """Commutation defect of an elementary map component at degree d."""
        out = 0
        if (d + n) in yd:
            out ^= flatten(d, yd[d + n] @ e)
        if (d - 1) in xd:
            out ^= flatten(d - 1, e @ xd[d - 1])
        return out

    def boundary_of_homotopy(d, h: Mat) -> int:
        """dh + hd value of an elementary homotopy component at degree d
        (h: x^d -> y^{d+n-1}), flattened over the map coordinates."""
        out = 0
        if (d + n - 1) in yd:
            out ^= flatten_map(d, yd[d + n - 1] @ h)
        if (d - 1) in xd:
            out ^= flatten_map(d - 1, h @ xd[d - 1])
        return out

    # layout of map coordinates (for boundary values)
    map_off: dict[int, int] = {}
    mpos = 0
    for d in x.degrees:
        rr = _expanded_dim(a, y, d + n)
        cc = _expanded_dim(a, x, d)
        if rr and cc:
            map_off[d] = mpos
            mpos += rr * cc

    def flatten_map(d, m: Mat) -> int:
        if d not in map_off:
            if not m.is_zero():
                raise RecolleError("boundary lands outside map layout")
            return 0
        acc = 0
        base = map_off[d]
        cc = m.ncols
        for r in range(m.nrows):
            row = m.rows[r]
            for c in range(cc):
                if row[c]:
                    acc |= 1 << (base + r * cc + c)
        return acc

    map_defects: list[int] = []
    for d in x.degrees:
        tgt = y.summands(d + n)
        src = x.summands(d)
        if tgt and src:
            elems, _, _ = _degree_map_space(a, src, tgt)
            map_defects.extend(defect_of_map(d, e) for e in elems)
    if 2 ** len(map_defects) > limit:
        raise RecolleError(
            f"enumeration size 2^{len(map_defects)} exceeds {limit}"
        )
    chain_count = _count_zero_xor_subsets(map_defects)

    h_values: list[int] = []
    for d in x.degrees:
        tgt = y.summands(d + n - 1)
        src = x.summands(d)
        if tgt and src:
            elems, _, _ = _degree_map_space(a, src, tgt)
            h_values.extend(boundary_of_homotopy(d, e) for e in elems)
    if 2 ** len(h_values) > limit:
        raise RecolleError(
            f"homotopy enumeration size 2^{len(h_values)} exceeds {limit}"
        )
    boundary_count = _count_distinct_xor_subsets(h_values)

    def log2(k):
        e = k.bit_length() - 1
        if 1 << e != k:
            raise RecolleError("count is not a power of 2")
        return e

    return log2(chain_count) - log2(boundary_count)


def _expanded_dim(a, x, d) -> int:
    return sum(
        sum(1 for i in range(a.dim) if a.lv[i] == v) for v in x.summands(d)
    )


def _count_zero_xor_subsets(values: list[int]) -> int:
    """Number of subsets with XOR zero, by Gray-code enumeration."""
    count = 0
    cur = 0
    total = 1 << len(values)
    prev_gray = 0
    for i in range(total):
        gray = i ^ (i >> 1)
        changed = gray ^ prev_gray
        if changed:
            cur ^= values[changed.bit_length() - 1]
        prev_gray = gray
        if cur == 0:
            count += 1
    return count


def _count_distinct_xor_subsets(values: list[int]) -> int:
    """Size of the XOR-span, by Gray-code enumeration of all subsets."""
    seen = set()
    cur = 0
    total = 1 << len(values)
    prev_gray = 0
    for i in range(total):
        gray = i ^ (i >> 1)
        changed = gray ^ prev_gray
        if changed:
            cur ^= values[changed.bit_length() - 1]
        prev_gray = gray
        seen.add(cur)
    return len(seen)


# ---------------------------------------------------------------------------
# Tor via the truncated normalized bar construction


def bar_tor(m: FDModule, n: FDModule, i: int, depth: int | None = None) -> int:
    """Tor_i(m, n) from the normalized bar complex truncated at `depth`;
    exact for i < depth."""
    a = m.algebra
    f = a.field
    if depth is None:
        depth = i + 2
    if depth <= i:
        raise RecolleError("bar truncation depth must exceed i")
    # complement of the unit: drop the first idempotent coordinate
    unit_slot = a.idempotents[0] if a.idempotents else 0
    comp = [j for j in range(a.dim) if j != unit_slot]

    def reduce_bar(vec):
        """class of an algebra element in A / k*1, coordinates over comp."""
        lam = vec[unit_slot]
        out = []
        for j in comp:
            c = vec[j]
            if not f.is_zero(lam) and not f.is_zero(a.unit[j]):
                c = f.sub(c, f.mul(lam, a.unit[j]))
            out.append(c)
        return out

    abar = len(comp)

    def space_dim(k):
        return m.dim * (abar ** k) * n.dim

    def index(k, mm, bars, nn):
        idx = mm
        for b in bars:
            idx = idx * abar + b
        return idx * n.dim + nn

    def boundary(k):
        """d: B_k -> B_{k-1}."""
        rows = space_dim(k - 1)
        cols = space_dim(k)
        mat = Mat.zero(f, rows, cols)
        for mm in range(m.dim):
            for bars in itertools.product(range(abar), repeat=k):
                for nn in range(n.dim):
                    col = index(k, mm, bars, nn)
                    sign = f.one
                    # face 0:  m*a1
                    a1 = comp[bars[0]]
                    mvec = m.action[a1].column(mm)
                    for mi, c in enumerate(mvec):
                        if not f.is_zero(c):
                            row = index(k - 1, mi, bars[1:], nn)
                            mat.rows[row][col] = f.add(mat.rows[row][col],
                                                       f.mul(sign, c))
                    # middle faces: multiply consecutive bars
                    for pos in range(k - 1):
                        sign = f.neg(sign)
                        prod = a.mul(a.basis_vec(comp[bars[pos]]),
                                     a.basis_vec(comp[bars[pos + 1]]))
                        red = reduce_bar(prod)
                        for bi, c in enumerate(red):
                            if f.is_zero(c):
                                continue
                            nb = bars[:pos] + (bi,) + bars[pos + 2:]
                            row = index(k - 1, mm, nb, nn)
                            mat.rows[row][col] = f.add(mat.rows[row][col],
                                                       f.mul(sign, c))
                    # last face: a_k * n  (left action on n = right action
                    # of the opposite algebra)
                    sign = f.neg(sign)
                    ak = comp[bars[-1]]
                    nvec = n.action[ak].column(nn)
                    for ni, c in enumerate(nvec):
                        if not f.is_zero(c):
                            row = index(k - 1, mm, bars[:-1], ni)
                            mat.rows[row][col] = f.add(mat.rows[row][col],
                                                       f.mul(sign, c))
        return mat

    d_i = boundary(i) if i >= 1 else Mat.zero(f, 0, space_dim(0))
    d_ip1 = boundary(i + 1)
    rk_in = rank(d_ip1)
    rk_out = rank(d_i) if i >= 1 else 0
    return space_dim(i) - rk_in - rk_out


# ---------------------------------------------------------------------------
# path counting for monomial presentations


def path_count(q: QuiverPresentation) -> int:
    """Number of paths avoiding the relation words; raises on non-monomial
    relations, detects non-termination exactly via the suffix automaton."""
    words = []
    for rel in q.relations:
        if len(rel) != 1:
            raise NonMonomial("relation is a sum of paths")
        coeff, word = rel[0]
        words.append(tuple(word))
    maxlen = max((len(w) for w in words), default=1)

    def dead(path):
        return any(
            path[len(path) - len(w):] == w for w in words if len(w) <= len(path)
        )

    # the number of extensions of a path depends only on (target vertex,
    # last maxlen-1 arrows), so count paths in the finite state graph
    from collections import deque

    def state(path):
        suf = path[-(maxlen - 1):] if maxlen > 1 else ()
        return (q.arrows[path[-1]].target, suf)

    start_states = [(i,) for i in range(len(q.arrows)) if not dead((i,))]
    trans: dict = {}
    work = deque(state(p) for p in start_states)
    while work:
        s = work.popleft()
        if s in trans:
            continue
        vertex, suf = s
        outs = []
        for i, arr in enumerate(q.arrows):
            if arr.source != vertex:
                continue
            newpath = suf + (i,)
            if dead(newpath):
                continue
            ns = (arr.target, newpath[-(maxlen - 1):] if maxlen > 1 else ())
            outs.append(ns)
            work.append(ns)
        trans[s] = outs
    # cycle detection: a reachable cycle means infinitely many paths
    color: dict = {}

    def cyclic(s):
        color[s] = 1
        for t in trans.get(s, []):
            if color.get(t) == 1 or (color.get(t) is None and cyclic(t)):
                return True
        color[s] = 2
        return False

    for s in list(trans):
        if color.get(s) is None and cyclic(s):
            raise RecolleError("monomial quotient is infinite-dimensional")
    memo: dict = {}

    def paths_from(s):
        if s in memo:
            return memo[s]
        tot = 1  # the path ending at this state
        for t in trans.get(s, []):
            tot += paths_from(t)
        memo[s] = tot
        return tot

    total = len(q.vertices)
    for p in start_states:
        total += paths_from(state(p))
    return total
