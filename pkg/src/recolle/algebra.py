"""Finite-dimensional basic algebras presented by quivers with relations.

Composition convention: for an arrow a: s -> t we have e_t * a * e_s = a, and
a product p*q is nonzero only if source(p) = target(q) ("q first, then p").
Paths are stored as traversal words [first, ..., last]; the display name
reverses the word, so the word (b, g) prints as "gb".  Under this convention
e_v * A is spanned by the paths with target v, which reproduces the usual
displayed composition series of the indecomposable projectives.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    EmptyIdempotent,
    InfiniteDimensional,
    InvariantViolation,
    NonAdmissible,
    RecolleError,
    TrivialQuotient,
)
from .fields import Field, QQ
from .linalg import Mat, kernel_basis, rank
from .verdicts import TriBool


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int  # vertex index
    target: int


@dataclass
class QuiverPresentation:
    """Quiver with relations; relations are lists of (coeff, word) terms,
    each word a tuple of arrow indices in traversal order."""

    vertices: list[str]
    arrows: list[Arrow]
    relations: list[list[tuple[object, tuple[int, ...]]]]
    field: Field = QQ

    def validate(self):
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise NonAdmissible("duplicate arrow names")
        for rel in self.relations:
            if not rel:
                raise NonAdmissible("empty relation")
            ends = set()
            for _, word in rel:
                if len(word) < 2:
                    raise NonAdmissible("relation path of length < 2")
                for i in range(len(word) - 1):
                    if self.arrows[word[i]].target != self.arrows[word[i + 1]].source:
                        raise NonAdmissible("relation term is not a path")
                ends.add((self.arrows[word[0]].source, self.arrows[word[-1]].target))
            if len(ends) != 1:
                raise NonAdmissible("relation terms are not parallel paths")

    def arrow_index(self, name: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.name == name:
                return i
        raise KeyError(name)


def presentation(vertices, arrows, relations, field=QQ) -> QuiverPresentation:
    """Convenience builder: arrows as (name, source_label, target_label),
    relations as lists of (coeff, [arrow names in traversal order]) or plain
    lists of arrow names for monomial relations."""
    vidx = {v: i for i, v in enumerate(vertices)}
    arrs = [Arrow(n, vidx[s], vidx[t]) for (n, s, t) in arrows]
    q = QuiverPresentation(list(vertices), arrs, [], field)
    rels = []
    for rel in relations:
        if rel and isinstance(rel[0], str):
            rel = [(1, rel)]
        terms = []
        for coeff, names in rel:
            word = tuple(q.arrow_index(n) for n in names)
            terms.append((field.of(coeff), word))
        rels.append(terms)
    q.relations = rels
    q.validate()
    return q


# ---------------------------------------------------------------------------


class BasedAlgebra:
    """Algebra with a distinguished basis and exact structure constants.

    For Path/Corner/Quotient origin every basis element is vertex-homogeneous
    (carries left/right vertex tags) and the non-idempotent part spans the
    radical.  Endomorphism-origin algebras have no vertex tags; their radical
    is computed (trace form in char 0, bounded quasi-regularity search over
    small prime fields).
    """

    def __init__(self, field, labels, lv, rv, mult, idempotents, radical_idx,
                 origin, vertices=None, unit=None):
        self.field = field
        self.dim = len(labels)
        self.labels = labels            # display names
        self.lv = lv                    # left vertex tag per basis elt (or None)
        self.rv = rv
        self.mult = mult                # dict (i,j) -> tuple((k, coeff), ...)
        self.idempotents = idempotents  # basis indices of primitive orth idempotents, or None
        self.radical_idx = radical_idx  # basis indices spanning J, or None (compute)
        self.origin = origin            # "path" | "corner" | "quotient" | "opposite" | "end"
        self.vertices = vertices        # vertex labels when basic
        if unit is None:
            if idempotents is None:
                raise RecolleError("unit required when idempotents are unknown")
            unit = [field.zero] * self.dim
            for i in idempotents:
                unit[i] = field.one
        self.unit = unit
        self._lmat_cache: dict[int, Mat] = {}

    # -- elements are coordinate vectors (lists of scalars) ----------------
    def zero_vec(self):
        return [self.field.zero] * self.dim

    def basis_vec(self, i: int):
        v = self.zero_vec()
        v[i] = self.field.one
        return v

    def mul_basis(self, i: int, j: int):
        return self.mult.get((i, j), ())

    def mul(self, x, y):
        f = self.field
        out = self.zero_vec()
        for i, a in enumerate(x):
            if f.is_zero(a):
                continue
            for j, b in enumerate(y):
                if f.is_zero(b):
                    continue
                ab = f.mul(a, b)
                for k, c in self.mul_basis(i, j):
                    out[k] = f.add(out[k], f.mul(ab, c))
        return out

    def left_mult_matrix(self, x) -> Mat:
        """Matrix of y -> x*y on column vectors."""
        f = self.field
        out = None
        for i, c in enumerate(x):
            if f.is_zero(c):
                continue
            term = self.basis_left_mult_matrix(i).scale(c)
            out = term if out is None else out + term
        return out if out is not None else Mat.zero(f, self.dim, self.dim)

    def right_mult_matrix(self, x) -> Mat:
        f = self.field
        m = Mat.zero(f, self.dim, self.dim)
        for j in range(self.dim):
            col = self.mul(self.basis_vec(j), x)
            for i in range(self.dim):
                m.rows[i][j] = col[i]
        return m

    def basis_left_mult_matrix(self, i: int) -> Mat:
        if i not in self._lmat_cache:
            m = Mat.zero(self.field, self.dim, self.dim)
            for j in range(self.dim):
                for k, c in self.mul_basis(i, j):
                    m.rows[k][j] = c
            self._lmat_cache[i] = m
        return self._lmat_cache[i]

    @property
    def num_vertices(self) -> int:
        if self.idempotents is None:
            raise RecolleError("algebra is not basic-presented")
        return len(self.idempotents)

    def vertex_of_idempotent(self, i: int) -> int:
        return self.lv[self.idempotents[i]]

    def is_basic_presented(self) -> bool:
        return self.idempotents is not None and self.lv is not None

    # -- corner-space bookkeeping ------------------------------------------
    def corner_indices(self, w: int, v: int) -> list[int]:
        """Basis indices spanning e_w A e_v (vertex-tagged algebras only)."""
        return [i for i in range(self.dim) if self.lv[i] == w and self.rv[i] == v]

    def radical_vectors(self):
        if self.radical_idx is not None:
            return [self.basis_vec(i) for i in self.radical_idx]
        return _computed_radical(self)

    def verify_associative(self):
        """Exhaustive associativity check on basis triples."""
        for i in range(self.dim):
            bi = self.basis_vec(i)
            for j in range(self.dim):
                bj = self.basis_vec(j)
                ij = self.mul(bi, bj)
                for k in range(self.dim):
                    bk = self.basis_vec(k)
                    if self.mul(ij, bk) != self.mul(bi, self.mul(bj, bk)):
                        raise InvariantViolation(
                            f"associativity fails on basis triple {i},{j},{k}"
                        )

    def verify_idempotents(self):
        f = self.field
        for a in self.idempotents:
            va = self.basis_vec(a)
            if self.mul(va, va) != va:
                raise InvariantViolation(f"basis element {a} is not idempotent")
            for b in self.idempotents:
                if a != b and any(
                    not f.is_zero(c) for c in self.mul(va, self.basis_vec(b))
                ):
                    raise InvariantViolation("idempotents not orthogonal")
        tot = self.zero_vec()
        for a in self.idempotents:
            tot[a] = f.one
        if tot != self.unit:
            raise InvariantViolation("idempotents do not sum to the unit")

    def __repr__(self):
        return f"BasedAlgebra(dim={self.dim}, origin={self.origin}, field={self.field})"


# ---------------------------------------------------------------------------
# building from a presentation


def _word_source(q: QuiverPresentation, word) -> int:
    return q.arrows[word[0]].source


def _word_target(q: QuiverPresentation, word) -> int:
    return q.arrows[word[-1]].target


DEFAULT_CAP_SLACK = 8


def default_length_cap(q: QuiverPresentation) -> int:
    longest = max((len(w) for rel in q.relations for _, w in rel), default=1)
    return 2 * max(1, len(q.arrows)) * longest + DEFAULT_CAP_SLACK


def build_algebra(q: QuiverPresentation, length_cap: int | None = None) -> BasedAlgebra:
    """Path basis modulo the relation ideal, computed length by length.

    Relations must be length-homogeneous (all terms of one relation share the
    same path length); monomial relations are the usual special case.  Raises
    InfiniteDimensional if new basis words still appear at the length cap.
    """
    q.validate()
    f = q.field
    for rel in q.relations:
        if len({len(w) for _, w in rel}) != 1:
            raise NonAdmissible("relation mixes path lengths; not supported")
    cap = default_length_cap(q) if length_cap is None else length_cap

    rel_by_len: dict[int, list] = {}
    for rel in q.relations:
        rel_by_len.setdefault(len(rel[0][1]), []).append(rel)

    # per length: list of basis words, and reductions of candidate words
    basis_words: dict[int, list[tuple]] = {0: [], 1: []}
    # cand_red: candidate word -> {basis word: coeff}; identity for basis words
    cand_red: dict[tuple, dict[tuple, object]] = {}
    rules: dict[int, list[dict[tuple, object]]] = {}  # length -> rule vectors over candidates

    for i, a in enumerate(q.arrows):
        basis_words[1].append((i,))

    def reduce_word(word: tuple) -> dict[tuple, object]:
        """Class of a composable path word as a combination of basis words.

        Only words whose length has already been processed may be reduced;
        relation terms are parallel, so extending a reduced prefix by the
        last arrow always lands on known candidates."""
        if len(word) <= 1:
            return {word: f.one}
        if word in cand_red:
            return dict(cand_red[word])
        left = reduce_word(word[:-1])
        out: dict[tuple, object] = {}
        for bw, c in left.items():
            cand = bw + word[-1:]
            red = cand_red[cand]
            for w2, c2 in red.items():
                out[w2] = f.add(out.get(w2, f.zero), f.mul(c, c2))
        out = {w: c for w, c in out.items() if not f.is_zero(c)}
        cand_red[word] = dict(out)
        return out

    length = 1
    while basis_words[length]:
        length += 1
        if length > cap:
            raise InfiniteDimensional(cap)
        # candidates: basis word of length-1 extended by a composable arrow
        cands: list[tuple] = []
        for bw in basis_words[length - 1]:
            for i, a in enumerate(q.arrows):
                if q.arrows[bw[-1]].target == a.source:
                    cands.append(bw + (i,))
        cidx = {w: j for j, w in enumerate(cands)}

        rule_vecs: list[list] = []

        def add_rule(combo: dict[tuple, object]):
            vec = [f.zero] * len(cands)
            for w, c in combo.items():
                vec[cidx[w]] = f.add(vec[cidx[w]], c)
            rule_vecs.append(vec)

        def word_to_cands(word: tuple) -> dict[tuple, object]:
            left = reduce_word(word[:-1])
            out: dict[tuple, object] = {}
            for bw, c in left.items():
                cand = bw + word[-1:]
                if cand in cidx:
                    out[cand] = f.add(out.get(cand, f.zero), c)
                # non-composable extension: zero
            return out

        for rel in rel_by_len.get(length, []):
            combo: dict[tuple, object] = {}
            for coeff, word in rel:
                for w, c in word_to_cands(word).items():
                    combo[w] = f.add(combo.get(w, f.zero), f.mul(coeff, c))
            add_rule(combo)

        # propagate shorter rules: extend every length-1 rule by one arrow
        for rule in rules.get(length - 1, []):
            for i, a in enumerate(q.arrows):
                right: dict[tuple, object] = {}   # append arrow (left-multiply)
                left: dict[tuple, object] = {}    # prepend arrow (right-multiply)
                for w, c in rule.items():
                    if q.arrows[w[-1]].target == a.source:
                        for w2, c2 in word_to_cands(w + (i,)).items():
                            right[w2] = f.add(right.get(w2, f.zero), f.mul(c, c2))
                    if a.target == q.arrows[w[0]].source:
                        for w2, c2 in word_to_cands((i,) + w).items():
                            left[w2] = f.add(left.get(w2, f.zero), f.mul(c, c2))
                if any(not f.is_zero(c) for c in right.values()):
                    add_rule(right)
                if any(not f.is_zero(c) for c in left.values()):
                    add_rule(left)

        new_basis: list[tuple] = []
        new_rules: list[dict[tuple, object]] = []
        if rule_vecs:
            m = Mat(f, rule_vecs, len(cands))
            r, pivots = m.rref()
            pivset = set(pivots)
            new_basis = [w for j, w in enumerate(cands) if j not in pivset]
            for row_i, pc in enumerate(pivots):
                red = {}
                rule = {cands[pc]: f.one}
                for j in range(len(cands)):
                    if j not in pivset and not f.is_zero(r.rows[row_i][j]):
                        red[cands[j]] = f.neg(r.rows[row_i][j])
                        rule[cands[j]] = r.rows[row_i][j]
                cand_red[cands[pc]] = red
                new_rules.append(rule)
        else:
            new_basis = list(cands)
        for w in new_basis:
            cand_red[w] = {w: f.one}
        basis_words[length] = new_basis
        rules[length] = new_rules

    # assemble the algebra
    all_words: list[tuple | int] = []  # int v for trivial path at vertex v
    labels, lv, rv = [], [], []
    for v, name in enumerate(q.vertices):
        all_words.append(("e", v))
        labels.append(f"e_{name}")
        lv.append(v)
        rv.append(v)
    for m in sorted(k for k in basis_words if k >= 1):
        for w in basis_words[m]:
            all_words.append(w)
            labels.append("".join(q.arrows[i].name for i in reversed(w)))
            lv.append(_word_target(q, w))
            rv.append(_word_source(q, w))
    pos = {w: i for i, w in enumerate(all_words)}

    def is_trivial(w):
        return w[0] == "e"

    mult: dict[tuple, tuple] = {}
    for i, wi in enumerate(all_words):
        for j, wj in enumerate(all_words):
            # product b_i * b_j = "first wj, then wi"
            if is_trivial(wi):
                prod = {wj: f.one} if lv[j] == wi[1] else {}
            elif is_trivial(wj):
                prod = {wi: f.one} if rv[i] == wj[1] else {}
            elif q.arrows[wj[-1]].target != q.arrows[wi[0]].source:
                prod = {}
            else:
                prod = reduce_word(wj + wi)
            entries = tuple(
                (pos[w], c)
                for w, c in sorted(prod.items(), key=lambda t: pos[t[0]])
                if not f.is_zero(c)
            )
            if entries:
                mult[(i, j)] = entries

    idem = list(range(len(q.vertices)))
    radical_idx = list(range(len(q.vertices), len(all_words)))
    alg = BasedAlgebra(
        f, labels, lv, rv, mult, idem, radical_idx, "path", list(q.vertices)
    )
    alg.presentation = q
    if alg.dim <= 24:
        alg.verify_associative()
        alg.verify_idempotents()
    return alg


# ---------------------------------------------------------------------------
# derived constructions


def opposite(a: BasedAlgebra) -> BasedAlgebra:
    """Same basis, reversed multiplication, vertex tags swapped."""
    mult = {}
    for (i, j), entries in a.mult.items():
        mult[(j, i)] = entries
    lv = a.rv if a.rv is not None else None
    rv = a.lv if a.lv is not None else None
    out = BasedAlgebra(
        a.field, list(a.labels), lv, rv, mult,
        list(a.idempotents) if a.idempotents is not None else None,
        list(a.radical_idx) if a.radical_idx is not None else None,
        "opposite", a.vertices, list(a.unit),
    )
    out.parent = a
    out.parent_basis = list(range(a.dim))
    return out


def corner(a: BasedAlgebra, verts: list[int]) -> BasedAlgebra:
    """eAe for e the sum of the chosen vertex idempotents."""
    if not verts:
        raise EmptyIdempotent("corner at empty idempotent set")
    verts = sorted(set(verts))
    if not a.is_basic_presented():
        raise RecolleError("corner needs a vertex-tagged algebra")
    vset = set(verts)
    keep = [i for i in range(a.dim) if a.lv[i] in vset and a.rv[i] in vset]
    return _subquotient(a, keep, verts, "corner")


def idempotent_ideal_indices(a: BasedAlgebra, verts: list[int]) -> list[int]:
    """Basis indices spanning AeA (the span is basis-aligned for path-like
    bases: closure of the idempotents under basis multiplication)."""
    vset = set(verts)
    seed = [i for i in a.idempotents if a.lv[i] in vset]
    inside = set(seed)
    changed = True
    while changed:
        changed = False
        for i in range(a.dim):
            for j in list(inside):
                for pair in (a.mul_basis(i, j), a.mul_basis(j, i)):
                    for k, _ in pair:
                        if k not in inside:
                            inside.add(k)
                            changed = True
    # sanity: the span must be an ideal aligned with the basis
    return sorted(inside)


def quotient_by_idempotent_ideal(a: BasedAlgebra, verts: list[int]) -> BasedAlgebra:
    """A/AeA; basis = images of the basis elements outside AeA."""
    if not verts:
        raise EmptyIdempotent("quotient at empty idempotent set")
    ideal = idempotent_ideal_indices(a, verts)
    keep = [i for i in range(a.dim) if i not in set(ideal)]
    if not keep:
        raise TrivialQuotient("AeA = A")
    keep_verts = sorted({a.lv[i] for i in keep if i in a.idempotents})
    return _subquotient(a, keep, keep_verts, "quotient", drop=set(ideal))


def _subquotient(a, keep, verts, origin, drop=None):
    """Algebra on the kept basis indices; products are truncated to the kept
    set when `drop` spans an ideal (quotient) or automatically closed
    (corner)."""
    f = a.field
    pos = {b: i for i, b in enumerate(keep)}
    mult = {}
    for i, bi in enumerate(keep):
        for j, bj in enumerate(keep):
            entries = []
            for k, c in a.mul_basis(bi, bj):
                if k in pos:
                    entries.append((pos[k], c))
                elif drop is None or k not in drop:
                    raise InvariantViolation("corner product escaped the corner")
            if entries:
                mult[(i, j)] = tuple(entries)
    vset = set(verts)
    idem = [pos[a.idempotents[_vi(a, v)]] for v in verts]
    lv = [a.lv[b] for b in keep]
    rv = [a.rv[b] for b in keep]
    rad = [pos[b] for b in keep if b in set(a.radical_idx)]
    out = BasedAlgebra(
        f, [a.labels[b] for b in keep], lv, rv, mult, idem, rad, origin,
        [a.vertices[v] for v in verts] if a.vertices else None,
    )
    # re-tag vertices to the compressed index range
    vmap = {v: i for i, v in enumerate(verts)}
    out.lv = [vmap[x] for x in out.lv]
    out.rv = [vmap[x] for x in out.rv]
    out.parent = a
    out.parent_basis = list(keep)
    out.parent_vertices = list(verts)
    if out.dim <= 24:
        out.verify_associative()
        out.verify_idempotents()
    return out


def _vi(a: BasedAlgebra, v: int) -> int:
    for i, b in enumerate(a.idempotents):
        if a.lv[b] == v:
            return i
    raise KeyError(v)


# ---------------------------------------------------------------------------
# radical, center, fingerprints


def _computed_radical(a: BasedAlgebra) -> list[list]:
    """Radical basis for algebras without a combinatorial radical."""
    f = a.field
    if f.p is None:
        return _dickson_radical(a)
    if _is_commutative(a):
        return _frobenius_nilradical(a)
    if f.p ** a.dim <= 4096:
        return _bruteforce_radical(a)
    raise RecolleError(
        f"radical over GF({f.p}) in dim {a.dim}: brute-force budget exceeded"
    )


def _dickson_radical(a: BasedAlgebra) -> list[list]:
    """char 0: radical = radical of the trace form tr(L_a L_b)."""
    f = a.field
    lmats = [a.basis_left_mult_matrix(i) for i in range(a.dim)]
    gram = Mat.zero(f, a.dim, a.dim)
    for i in range(a.dim):
        for j in range(a.dim):
            prod = lmats[i] @ lmats[j]
            tr = f.zero
            for k in range(a.dim):
                tr = f.add(tr, prod.rows[k][k])
            gram.rows[i][j] = tr
    ker = kernel_basis(gram)
    return [ker.column(j) for j in range(ker.ncols)]


def _is_commutative(a: BasedAlgebra) -> bool:
    for (i, j), entries in a.mult.items():
        if dict(a.mul_basis(j, i)) != dict(entries):
            return False
    return True


def _frobenius_nilradical(a: BasedAlgebra) -> list[list]:
    """Commutative algebra over GF(p): x -> x^(p^m) is linear; its kernel is
    the nilradical once p^m >= dim."""
    f = a.field
    p = f.p
    m = 1
    while p ** m < a.dim:
        m += 1
    # matrix of x -> x^p
    frob = Mat.zero(f, a.dim, a.dim)
    for j in range(a.dim):
        x = a.basis_vec(j)
        y = x
        for _ in range(p - 1):
            y = a.mul(y, x)
        for i in range(a.dim):
            frob.rows[i][j] = y[i]
    total = frob
    for _ in range(m - 1):
        # apply frobenius again on the result columns: (x^p)^p
        nxt = Mat.zero(f, a.dim, a.dim)
        for j in range(a.dim):
            col = total.column(j)
            y = _power_p(a, col, p)
            for i in range(a.dim):
                nxt.rows[i][j] = y[i]
        total = nxt
    ker = kernel_basis(total)
    return [ker.column(j) for j in range(ker.ncols)]


def _power_p(a: BasedAlgebra, x, p):
    y = x
    for _ in range(p - 1):
        y = a.mul(y, x)
    return y


def _all_vectors(f: Field, dim: int):
    for combo in itertools.product(list(f.elements()), repeat=dim):
        yield list(combo)


def _is_nilpotent_mat(m: Mat, dim: int) -> bool:
    p = m
    k = 1
    while k < dim:
        p = p @ p
        k *= 2
    return p.is_zero()


def _bruteforce_radical(a: BasedAlgebra) -> list[list]:
    """rad = { x : 1 - y*x invertible for all y }, checked exhaustively;
    elements of the radical are nilpotent, so only those x are tried."""
    from .linalg import column_space_basis, invert

    f = a.field
    members = []
    for x in _all_vectors(f, a.dim):
        if all(f.is_zero(c) for c in x):
            continue
        if not _is_nilpotent_mat(a.left_mult_matrix(x), a.dim):
            continue
        ok = True
        for y in _all_vectors(f, a.dim):
            yx = a.mul(y, x)
            one_minus = [f.sub(u, v) for u, v in zip(a.unit, yx)]
            if invert(a.left_mult_matrix(one_minus)) is None:
                ok = False
                break
        if ok:
            members.append(x)
    if not members:
        return []
    basis = column_space_basis(Mat.from_columns(f, members, a.dim))
    return [basis.column(j) for j in range(basis.ncols)]


def radical(a: BasedAlgebra) -> list[list]:
    """Basis of the Jacobson radical as coordinate vectors."""
    return a.radical_vectors()


def radical_power_spans(a: BasedAlgebra) -> list[Mat]:
    """[J^0, J^1, J^2, ...] as column-span matrices, until zero."""
    from .linalg import column_space_basis, hstack

    f = a.field
    spans = [Mat.identity(f, a.dim)]
    jvecs = a.radical_vectors()
    if not jvecs:
        return spans
    j1 = column_space_basis(Mat.from_columns(f, jvecs, a.dim))
    spans.append(j1)
    while spans[-1].ncols:
        prev = spans[-1]
        cols = []
        for jv in jvecs:
            lm = a.left_mult_matrix(jv)
            for c in range(prev.ncols):
                cols.append(lm.apply(prev.column(c)))
        nxt = column_space_basis(Mat.from_columns(f, cols, a.dim)) if cols else Mat.zero(f, a.dim, 0)
        spans.append(nxt)
        if nxt.ncols == 0:
            break
        if len(spans) > a.dim + 2:
            raise InvariantViolation("radical is not nilpotent")
    return spans


def loewy_vector(a: BasedAlgebra) -> list[int]:
    spans = radical_power_spans(a)
    dims = [s.ncols for s in spans]
    out = []
    for i in range(len(dims) - 1):
        d = dims[i] - dims[i + 1]
        if d:
            out.append(d)
    if not out:
        out = [a.dim]
    return out


def center_basis(a: BasedAlgebra) -> list[list]:
    f = a.field
    rows = []
    for i in range(a.dim):
        li = a.basis_left_mult_matrix(i)
        ri = a.right_mult_matrix(a.basis_vec(i))
        diff = li - ri
        rows.extend(diff.rows)
    m = Mat(f, rows, a.dim)
    ker = kernel_basis(m)
    return [ker.column(j) for j in range(ker.ncols)]


def cartan_matrix(a: BasedAlgebra) -> list[list[int]]:
    """Entry (i, j) = dim e_i A e_j; row sums are the dims of the e_i A."""
    if not a.is_basic_presented():
        raise RecolleError("Cartan matrix needs a basic-presented algebra")
    r = a.num_vertices
    out = [[0] * r for _ in range(r)]
    for b in range(a.dim):
        out[a.lv[b]][a.rv[b]] += 1
    return out


# -- semisimple quotient and block counting --------------------------------


def semisimple_quotient(a: BasedAlgebra) -> BasedAlgebra:
    """A/J as a BasedAlgebra (loses vertex tags for computed radicals)."""
    from .linalg import column_space_basis, solve

    f = a.field
    jvecs = a.radical_vectors()
    if not jvecs:
        return a
    jmat = column_space_basis(Mat.from_columns(f, jvecs, a.dim))
    # complement basis: extend J-basis to a basis of A, quotient coordinates
    ext = Mat(
        f,
        [jmat.rows[i] + Mat.identity(f, a.dim).rows[i] for i in range(a.dim)],
    )
    _, pivots = ext.rref()
    comp = [p - jmat.ncols for p in pivots if p >= jmat.ncols]
    full = Mat.from_columns(
        f, jmat.columns() + [a.basis_vec(i) for i in comp], a.dim
    )

    def project(vec):
        sol = solve(full, Mat.from_columns(f, [vec], a.dim))
        return [sol.rows[jmat.ncols + t][0] for t in range(len(comp))]

    n = len(comp)
    mult = {}
    for i in range(n):
        for j in range(n):
            prod = a.mul(a.basis_vec(comp[i]), a.basis_vec(comp[j]))
            entries = tuple(
                (k, c) for k, c in enumerate(project(prod)) if not f.is_zero(c)
            )
            if entries:
                mult[(i, j)] = entries
    unit = project(a.unit)
    return BasedAlgebra(
        f, [a.labels[i] for i in comp], None, None, mult, None, [], "end",
        None, unit,
    )


def _min_poly(a: BasedAlgebra, x) -> list:
    """Monic minimal polynomial of x (low to high coefficients)."""
    from .linalg import solve

    f = a.field
    pows = [list(a.unit)]
    while True:
        nxt = a.mul(pows[-1], x)
        m = Mat.from_columns(f, pows, a.dim)
        rhs = Mat.from_columns(f, [nxt], a.dim)
        sol = solve(m, rhs)
        if sol is not None:
            coeffs = [f.neg(sol.rows[i][0]) for i in range(len(pows))]
            return coeffs + [f.one]
        pows.append(nxt)


def _poly_roots(f: Field, coeffs) -> list:
    """All roots in the ground field (rational-root search over Q)."""
    if f.p is not None:
        return [c for c in f.elements() if _poly_eval(f, coeffs, c) == f.zero]
    from math import gcd

    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    if not ints:
        return []
    roots = set()
    if ints[0] == 0:
        roots.add(Fraction(0))
        while ints and ints[0] == 0:
            ints = ints[1:]
    if not ints:
        return sorted(roots)
    lead, const = ints[-1], ints[0]
    for p in _divisors(abs(const)):
        for q in _divisors(abs(lead)):
            for sgn in (1, -1):
                cand = Fraction(sgn * p, q)
                if _poly_eval(f, coeffs, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _divisors(n: int):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _poly_eval(f: Field, coeffs, x):
    acc = f.zero
    for c in reversed(coeffs):
        acc = f.add(f.mul(acc, x), c)
    return acc


def count_blocks(a: BasedAlgebra) -> int | None:
    """Number of isomorphism classes of simple modules, i.e. blocks of A/J.

    Returns None when A/J fails to split over the ground field (a proper
    division-algebra factor was detected)."""
    if a.is_basic_presented():
        return a.num_vertices
    ss = semisimple_quotient(a)
    z = center_basis(ss)
    # the center of the semisimple quotient, as an algebra
    sub = _span_subalgebra(ss, z)
    return _count_split_idempotents(sub)


def _span_subalgebra(a: BasedAlgebra, vecs, unit=None) -> BasedAlgebra:
    from .linalg import solve

    f = a.field
    m = Mat.from_columns(f, vecs, a.dim)

    def coords(v):
        sol = solve(m, Mat.from_columns(f, [v], a.dim))
        if sol is None:
            raise InvariantViolation("span is not multiplicatively closed")
        return [sol.rows[i][0] for i in range(len(vecs))]

    n = len(vecs)
    mult = {}
    for i in range(n):
        for j in range(n):
            prod = a.mul(vecs[i], vecs[j])
            entries = tuple(
                (k, c) for k, c in enumerate(coords(prod)) if not f.is_zero(c)
            )
            if entries:
                mult[(i, j)] = entries
    return BasedAlgebra(
        f, [f"z{i}" for i in range(n)], None, None, mult, None, [], "end",
        None, coords(unit if unit is not None else a.unit),
    )


def _count_split_idempotents(z: BasedAlgebra) -> int | None:
    """Primitive idempotent count of a commutative semisimple algebra,
    provided all minimal polynomials split into linear factors."""
    f = z.field
    if z.dim == 1:
        return 1
    for j in range(z.dim):
        x = z.basis_vec(j)
        mp = _min_poly(z, x)
        deg = len(mp) - 1
        roots = _poly_roots(f, mp)
        if len(roots) >= 2:
            # split along an eigen-idempotent of x
            c = roots[0]
            # e = product over other roots (x - r)/(c - r)
            e = list(z.unit)
            for r in roots[1:]:
                shifted = [f.sub(u, f.mul(r, w)) for u, w in zip(x, z.unit)]
                scale = f.inv(f.sub(c, r))
                e = z.mul(e, [f.mul(scale, t) for t in shifted])
            if z.mul(e, e) != e:
                return None  # z was not semisimple/split as expected
            rest = [f.sub(u, v) for u, v in zip(z.unit, e)]
            left = _count_corner_blocks(z, e)
            right = _count_corner_blocks(z, rest)
            if left is None or right is None:
                return None
            return left + right
        if deg >= 2 and len(roots) < deg:
            return None  # irreducible factor of degree >= 2: not split
    return 1


def _count_corner_blocks(z: BasedAlgebra, e) -> int | None:
    from .linalg import column_space_basis

    f = z.field
    cols = [z.mul(e, z.basis_vec(j)) for j in range(z.dim)]
    basis = column_space_basis(Mat.from_columns(f, cols, z.dim))
    vecs = [basis.column(j) for j in range(basis.ncols)]
    sub = _span_subalgebra(z, vecs, unit=e)
    return _count_split_idempotents(sub)


def _coords_in(a, vecs, v):
    from .linalg import solve

    m = Mat.from_columns(a.field, vecs, a.dim)
    sol = solve(m, Mat.from_columns(a.field, [v], a.dim))
    return [sol.rows[i][0] for i in range(len(vecs))]


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraFingerprint:
    dim: int
    loewy: tuple[int, ...]
    num_simples: int | None
    commutative: bool
    dim_center: int
    cartan: tuple[tuple[int, ...], ...] | None

    def key(self):
        return (
            self.dim,
            self.loewy,
            self.num_simples,
            self.commutative,
            self.dim_center,
            self.cartan,
        )

    def json(self):
        return {
            "dim": self.dim,
            "loewy": list(self.loewy),
            "num_simples": self.num_simples,
            "commutative": self.commutative,
            "dim_center": self.dim_center,
            "cartan": [list(r) for r in self.cartan] if self.cartan else None,
        }

    def __repr__(self):
        c = "comm" if self.commutative else "noncomm"
        return f"Fp(dim={self.dim}, loewy={list(self.loewy)}, r={self.num_simples}, {c}, Z={self.dim_center})"


def _canonical_cartan(c: list[list[int]]) -> tuple:
    r = len(c)
    best = None
    for perm in itertools.permutations(range(r)):
        cand = tuple(tuple(c[perm[i]][perm[j]] for j in range(r)) for i in range(r))
        if best is None or cand < best:
            best = cand
    return best


def fingerprint(a: BasedAlgebra) -> AlgebraFingerprint:
    loewy = tuple(loewy_vector(a))
    cart = _canonical_cartan(cartan_matrix(a)) if a.is_basic_presented() else None
    return AlgebraFingerprint(
        dim=a.dim,
        loewy=loewy,
        num_simples=count_blocks(a),
        commutative=_is_commutative(a),
        dim_center=len(center_basis(a)),
        cartan=cart,
    )


def is_local(a: BasedAlgebra) -> TriBool:
    """Local = unique maximal right ideal; certified via dim(A/J) = 1,
    refuted by a non-invertible non-nilpotent element or an idempotent
    count / block count above 1."""
    if a.is_basic_presented():
        if a.num_vertices > 1:
            return TriBool.no(f"{a.num_vertices} primitive idempotents")
        return TriBool.yes("one primitive idempotent, basic algebra")
    f = a.field
    if f.p is not None and f.p ** a.dim <= 4096:
        # finite algebra: local iff every element is invertible or nilpotent
        from .linalg import invert

        for x in _all_vectors(f, a.dim):
            lm = a.left_mult_matrix(x)
            if invert(lm) is None and not _is_nilpotent_mat(lm, a.dim):
                return TriBool.no("element neither invertible nor nilpotent")
        return TriBool.yes("every element is invertible or nilpotent")
    jdim = len(a.radical_vectors())
    top_dim = a.dim - jdim
    if top_dim == 1:
        return TriBool.yes("dim A/J = 1")
    blocks = count_blocks(a)
    if blocks is None:
        return TriBool.unknown("A/J did not split over the ground field")
    if blocks > 1:
        return TriBool.no(f"{blocks} blocks in A/J")
    # single split block M_n(k) with n >= 2
    return TriBool.no(f"split simple quotient of dim {top_dim} > 1")
