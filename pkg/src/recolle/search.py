"""Bounded brute-force enumeration of exceptional compact objects,
stratification trees, and derived Jordan-Hoelder comparison.

The exceptional search enumerates minimal complexes (radical differential
entries) over a small prime field up to caps on the number of components and
the summand multiplicities, prunes by splitting summands and permutation
canonicity, filters by exceptionality and local endomorphism ring, and
deduplicates up to shift and isomorphism.  The search is exhaustive within
its caps and refuses to run when the raw space exceeds the budget.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .algebra import BasedAlgebra, corner, fingerprint, is_local, \
    quotient_by_idempotent_ideal, AlgebraFingerprint
from .complexes import (
    CornerMat,
    ProjComplex,
    end_algebra,
    expand_mults,
    hom_dim,
    is_isomorphic_complex,
    total_cohomology_dims,
)
from .errors import CapTooLarge, RecursionLimit, RootMismatch
from .recollement import build_recollement, stratifying_status
from .verdicts import TriBool

DEFAULT_BUDGET = 1 << 22


def search_budget() -> int:
    val = os.environ.get("RECOLLE_BUDGET")
    return int(val) if val else DEFAULT_BUDGET


@dataclass
class CatalogEntry:
    complex: ProjComplex
    end_fingerprint: AlgebraFingerprint
    exceptionality: dict
    cohomology: dict

    def json(self):
        return {
            "complex": self.complex.json(),
            "end_fingerprint": self.end_fingerprint.json(),
            "cohomology": {str(k): v for k, v in sorted(self.cohomology.items())},
        }


@dataclass
class ExceptionalCatalog:
    algebra: BasedAlgebra
    max_len: int
    max_mult: int
    entries: list[CatalogEntry]
    raw_candidates: int
    note: str = ("search field is a small prime field; statements about "
                 "other ground fields are outside the caps of this search")

    def shapes(self) -> list[str]:
        return [repr(e.complex) for e in self.entries]

    def json(self):
        return {
            "caps": {"max_len": self.max_len, "max_mult": self.max_mult,
                     "field": self.algebra.field.json()},
            "entries": [e.json() for e in self.entries],
            "raw_candidates": self.raw_candidates,
            "note": self.note,
        }


def _corner_rad_bases(a: BasedAlgebra):
    """rad-entry basis indices for each (target vertex, source vertex)."""
    rad = set(a.radical_idx)
    out = {}
    for w in range(a.num_vertices):
        for v in range(a.num_vertices):
            idx = [i for i in a.corner_indices(a.lv[a.idempotents[w]],
                                               a.lv[a.idempotents[v]])
                   if i in rad]
            out[(w, v)] = idx
    return out


def _ends_share_vertex(shape) -> bool:
    """First and last components share a projective summand.

    Any minimal complex of this shape admits a nonzero homotopy class
    X -> X[amplitude]: every map between the end components is a chain map,
    null-homotopic ones have all entries in the radical (the differential
    entries are radical and the radical is an ideal), and an
    identity-component map on the shared summand does not."""
    return any(x and y for x, y in zip(shape[0], shape[-1]))


def estimate_space(a: BasedAlgebra, max_len: int, max_mult: int) -> int:
    """Number of differential choices over the shapes the search will
    actually enumerate (shapes rejected wholesale are not counted)."""
    q = a.field.p
    rad = _corner_rad_bases(a)
    r = a.num_vertices
    mult_vectors = [m for m in itertools.product(range(max_mult + 1), repeat=r)
                    if any(m)]
    total = 0
    for length in range(2, max_len + 1):
        for shape in itertools.product(mult_vectors, repeat=length):
            if _ends_share_vertex(shape):
                continue
            bits = 0
            for d in range(length - 1):
                src = expand_mults(a, shape[d])
                tgt = expand_mults(a, shape[d + 1])
                for w in tgt:
                    for v in src:
                        bits += len(rad[(w, v)])
            total += q ** bits
            if total > (1 << 62):
                return total
    return total


def enumerate_exceptional(a: BasedAlgebra, max_len: int, max_mult: int,
                          seed: int = 0, budget: int | None = None) -> ExceptionalCatalog:
    """Exhaustive catalog of indecomposable exceptional minimal complexes of
    at most max_len components, up to shift and isomorphism."""
    if a.field.p is None:
        raise CapTooLarge("exceptional search needs a finite field")
    if budget is None:
        budget = search_budget()
    space = estimate_space(a, max_len, max_mult)
    if space > budget:
        raise CapTooLarge(
            f"raw search space {space} exceeds budget {budget}; "
            "reduce the caps or raise RECOLLE_BUDGET"
        )

    entries: list[CatalogEntry] = []
    raw = 0
    # length 1: single projective stalks (multi-summand stalks decompose)
    for v in range(a.num_vertices):
        mults = [1 if w == v else 0 for w in range(a.num_vertices)]
        x = ProjComplex(a, {0: mults}, {})
        raw += 1
        entries.append(_entry(x))

    rad = _corner_rad_bases(a)
    r = a.num_vertices
    mult_vectors = [m for m in itertools.product(range(max_mult + 1), repeat=r)
                    if any(m)]
    field_elems = list(a.field.elements())
    for length in range(2, max_len + 1):
        for shape in itertools.product(mult_vectors, repeat=length):
            if _ends_share_vertex(shape):
                continue
            summands = [expand_mults(a, m) for m in shape]
            cell_bases = []
            for d in range(length - 1):
                for t, w in enumerate(summands[d + 1]):
                    for s, v in enumerate(summands[d]):
                        for i in rad[(w, v)]:
                            cell_bases.append((d, t, s, i))
            for combo in itertools.product(field_elems, repeat=len(cell_bases)):
                raw += 1
                cand = _assemble(a, shape, summands, cell_bases, combo)
                if cand is None:
                    continue
                if not _canonical_under_permutations(a, cand, shape, summands):
                    continue
                if _has_split_summand(a, cand, summands):
                    continue
                try:
                    cand.verify_d_squared()
                except Exception:
                    continue
                if not _exceptional_fast(cand):
                    continue
                end = end_algebra(cand)
                if not is_local(end).is_true:
                    continue
                if any(
                    is_isomorphic_complex(e.complex, cand, seed=seed).is_true
                    for e in entries
                ):
                    continue
                entries.append(_entry(cand, end))
    return ExceptionalCatalog(a, max_len, max_mult, entries, raw)


def _assemble(a, shape, summands, cell_bases, combo):
    f = a.field
    if all(c == 0 for c in combo):
        return None
    diffs: dict[int, CornerMat] = {}
    for d in range(len(shape) - 1):
        diffs[d] = CornerMat(a, summands[d + 1], summands[d])
    for (d, t, s, i), c in zip(cell_bases, combo):
        if c:
            diffs[d].entries[t][s][i] = f.of(c)
    x = ProjComplex(a, {d: list(m) for d, m in enumerate(shape)}, diffs)
    # a complex must keep all its degrees alive
    if len(x.comps) != len(shape):
        return None
    # d^2 = 0 quick check
    for d in range(len(shape) - 2):
        if not x.diff(d + 1).compose(x.diff(d)).is_zero():
            return None
    return x


def _has_split_summand(a, x: ProjComplex, summands) -> bool:
    """A summand with zero incoming row and zero outgoing column splits off a
    stalk, so the candidate is decomposable or a shift duplicate."""
    f = a.field
    degs = sorted(x.comps)
    for di, d in enumerate(degs):
        summ = x.summands(d)
        for s in range(len(summ)):
            col_zero = True
            if d in x.diffs:
                cm = x.diffs[d]
                col_zero = all(f.is_zero(c) for t in range(len(cm.rows))
                               for c in cm.entries[t][s])
            row_zero = True
            if d - 1 in x.diffs:
                cm = x.diffs[d - 1]
                row_zero = all(f.is_zero(c) for q in range(len(cm.cols))
                               for c in cm.entries[s][q])
            if col_zero and row_zero:
                return True
    return False


def _canonical_under_permutations(a, x: ProjComplex, shape, summands) -> bool:
    """Keep only candidates that are lexicographically minimal under
    independent permutations of equal-vertex summands in each degree."""
    f = a.field
    key = _perm_key(a, x, shape, None)
    groups = []
    for d, summ in enumerate(summands):
        start = 0
        for v in range(a.num_vertices):
            cnt = shape[d][v]
            if cnt > 1:
                groups.append((d, list(range(start, start + cnt))))
            start += cnt
    if not groups:
        return True
    perms_per_group = [list(itertools.permutations(g)) for _, g in groups]
    for choice in itertools.product(*perms_per_group):
        perm_by_degree = {}
        for (d, g), image in zip(groups, choice):
            perm_by_degree.setdefault(d, {}).update(dict(zip(g, image)))
        kk = _perm_key(a, x, shape, perm_by_degree)
        if kk < key:
            return False
    return True


def _perm_key(a, x: ProjComplex, shape, perm_by_degree):
    out = []
    for d in range(len(shape) - 1):
        cm = x.diff(d)
        tp = perm_by_degree.get(d + 1, {}) if perm_by_degree else {}
        sp = perm_by_degree.get(d, {}) if perm_by_degree else {}
        for t in range(len(cm.rows)):
            for s in range(len(cm.cols)):
                out.append(tuple(cm.entries[tp.get(t, t)][sp.get(s, s)]))
    return tuple(out)


def _exceptional_fast(x: ProjComplex) -> bool:
    """Exceptionality with the most-likely-failing shifts first."""
    amp = x.amplitude
    for n in range(amp, 0, -1):
        if hom_dim(x, x, -n).dim != 0:
            return False
        if hom_dim(x, x, n).dim != 0:
            return False
    return True


def _entry(x: ProjComplex, end=None) -> CatalogEntry:
    cert: dict = {}
    from .complexes import is_exceptional

    ok = is_exceptional(x, cert)
    if not ok:
        raise RuntimeError("entry is not exceptional")
    if end is None:
        end = end_algebra(x)
    return CatalogEntry(x, fingerprint(end), cert, total_cohomology_dims(x))


# ---------------------------------------------------------------------------
# stratification trees


@dataclass
class TreeNode:
    fingerprint_: AlgebraFingerprint
    tag: str                     # "SimpleCertified" | "Unresolved" | "Node"
    idempotent: list | None = None
    left: "TreeNode | None" = None   # quotient factor A/AeA
    right: "TreeNode | None" = None  # corner factor eAe
    evidence: object = None

    def leaves(self) -> list["TreeNode"]:
        if self.tag != "Node":
            return [self]
        return self.left.leaves() + self.right.leaves()

    def leaf_fingerprints(self):
        return sorted(leaf.fingerprint_.key() for leaf in self.leaves())

    def fully_certified(self) -> bool:
        return all(leaf.tag == "SimpleCertified" for leaf in self.leaves())

    def signature(self):
        if self.tag != "Node":
            return (self.tag, self.fingerprint_.key())
        return ("Node", self.fingerprint_.key(), tuple(self.idempotent),
                self.left.signature(), self.right.signature())

    def json(self):
        out = {"fingerprint": self.fingerprint_.json(), "tag": self.tag}
        if self.tag == "Node":
            out["idempotent"] = self.idempotent
            out["quotient"] = self.left.json()
            out["corner"] = self.right.json()
        return out


@dataclass
class StratificationTree:
    root_algebra: BasedAlgebra
    root: TreeNode

    def leaf_multiset(self):
        return self.root.leaf_fingerprints()

    def json(self):
        return self.root.json()


def stratification_trees(a: BasedAlgebra, depth: int | None = None,
                         recursion_limit: int = 8, seed: int = 0) -> list[StratificationTree]:
    """All stratification trees obtained from certified vertex-idempotent
    recollements, with local leaves certified simple; deduplicated by
    structural signature."""
    trees = [StratificationTree(a, t)
             for t in _trees_below(a, depth, recursion_limit, seed)]
    seen = set()
    out = []
    for t in trees:
        sig = t.root.signature()
        if sig not in seen:
            seen.add(sig)
            out.append(t)
    return out


def _trees_below(x: BasedAlgebra, depth, limit, seed) -> list[TreeNode]:
    if limit <= 0:
        raise RecursionLimit("stratification recursion limit reached")
    fp = fingerprint(x)
    loc = is_local(x)
    if loc.is_true:
        return [TreeNode(fp, "SimpleCertified", evidence=loc.evidence)]
    out = []
    r = x.num_vertices
    for size in range(1, r):
        for verts in itertools.combinations(range(r), size):
            st = stratifying_status(x, list(verts), depth, seed)
            if not st.certified:
                continue
            rec = build_recollement(x, list(verts), depth, seed)
            lefts = _trees_below(rec.b, depth, limit - 1, seed)
            rights = _trees_below(rec.c, depth, limit - 1, seed)
            for lt in lefts:
                for rt in rights:
                    if x.num_vertices != rec.b.num_vertices + rec.c.num_vertices:
                        raise RootMismatch("rank additivity failed in tree")
                    out.append(TreeNode(fp, "Node", list(verts), lt, rt,
                                        evidence=st))
    if not out:
        return [TreeNode(fp, "Unresolved")]
    return out


@dataclass
class JHVerdict:
    kind: str                    # "Holds" | "Fails" | "Inconclusive"
    multiset1: list | None = None
    multiset2: list | None = None
    reason: str = ""

    def json(self):
        return {"kind": self.kind, "reason": self.reason}

    def __repr__(self):
        return f"JH.{self.kind}"


def jh_compare(t1: StratificationTree, t2: StratificationTree) -> JHVerdict:
    """Compare leaf fingerprint multisets of two stratification trees."""
    if t1.root_algebra is not t2.root_algebra:
        raise RootMismatch("trees over different root algebras")
    if not t1.root.fully_certified() or not t2.root.fully_certified():
        return JHVerdict("Inconclusive",
                         reason="a leaf is not certified derived simple")
    m1, m2 = t1.leaf_multiset(), t2.leaf_multiset()
    if m1 == m2:
        return JHVerdict("Holds", m1, m2)
    return JHVerdict("Fails", m1, m2,
                     reason="leaf fingerprint multisets differ")


def jh_across(trees: list[StratificationTree]) -> JHVerdict:
    """Pairwise comparison across all trees of one algebra."""
    if not trees:
        return JHVerdict("Inconclusive", reason="no stratification tree found")
    base = None
    for t in trees:
        if not t.root.fully_certified():
            return JHVerdict("Inconclusive",
                             reason="a leaf is not certified derived simple")
    for t in trees:
        ms = t.leaf_multiset()
        if base is None:
            base = (t, ms)
        elif ms != base[1]:
            return JHVerdict("Fails", base[1], ms,
                             reason="two stratifications with different factors")
    return JHVerdict("Holds", base[1], base[1])
