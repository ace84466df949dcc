import pytest

from recolle import presets
from recolle.algebra import build_algebra
from recolle.errors import CapTooLarge, RootMismatch
from recolle.fields import GF
from recolle.search import (
    enumerate_exceptional,
    estimate_space,
    jh_across,
    jh_compare,
    stratification_trees,
)


def entry_shapes(cat):
    return sorted(
        tuple(sorted((d, tuple(m)) for d, m in e.complex.comps.items()))
        for e in cat.entries
    )


def test_bridge_loop_catalog():
    a = build_algebra(presets.bridge_loop(GF(2)))
    cat = enumerate_exceptional(a, 2, 2)
    assert entry_shapes(cat) == sorted([
        (((0, (1, 0)),)),
        (((0, (0, 1)),)),
        tuple(sorted([(0, (0, 1)), (1, (1, 0))])),
    ])
    cone_entry = [e for e in cat.entries if len(e.complex.comps) == 2][0]
    fp = cone_entry.end_fingerprint
    assert (fp.dim, fp.commutative, fp.num_simples) == (2, True, 1)


def test_radsq_zero_catalog():
    a = build_algebra(presets.radical_square_zero(GF(2)))
    cat = enumerate_exceptional(a, 2, 2)
    assert len(cat.entries) == 3
    cone_entry = [e for e in cat.entries if len(e.complex.comps) == 2][0]
    fp = cone_entry.end_fingerprint
    assert (fp.dim, fp.commutative, fp.loewy) == (3, True, (1, 2))


def test_14dim_catalog_full_caps():
    a = build_algebra(presets.double_loops_dim14(GF(2)))
    cat = enumerate_exceptional(a, 2, 2)
    # only the two projective stalks are exceptional
    assert len(cat.entries) == 2
    assert all(e.complex.amplitude == 0 for e in cat.entries)


def test_two_cycle_catalog():
    a = build_algebra(presets.two_cycle(GF(2)))
    cat = enumerate_exceptional(a, 2, 2)
    # four classes: both stalks and both two-term complexes between distinct
    # projectives (consistent with the indecomposable-object families)
    assert len(cat.entries) == 4
    two_term = [e for e in cat.entries if e.complex.amplitude == 1]
    assert len(two_term) == 2
    shapes = sorted(tuple(tuple(e.complex.mult(d)) for d in e.complex.degrees)
                    for e in two_term)
    assert shapes == [(((0, 1), (1, 0))), (((1, 0), (0, 1)))]
    for e in two_term:
        assert e.end_fingerprint.dim == 1
    p1_entry = [e for e in cat.entries
                if e.complex.amplitude == 0 and e.complex.mult(0) == [1, 0]][0]
    assert (p1_entry.end_fingerprint.dim, p1_entry.end_fingerprint.commutative) \
        == (2, True)


def test_local_algebras_no_positive_amplitude():
    for pres in (presets.point, presets.dual_numbers, presets.fat_point_dim4):
        a = build_algebra(pres(GF(2)))
        cat = enumerate_exceptional(a, 3, 2)
        assert all(e.complex.amplitude == 0 for e in cat.entries)
        assert len(cat.entries) == 1


def test_budget_refusal():
    a = build_algebra(presets.double_loops_dim14(GF(2)))
    assert estimate_space(a, 2, 2) > 64
    with pytest.raises(CapTooLarge):
        enumerate_exceptional(a, 2, 2, budget=64)


def test_catalog_entries_reverified_by_oracle():
    from recolle.oracle import hom_bruteforce

    a = build_algebra(presets.bridge_loop(GF(2)))
    cat = enumerate_exceptional(a, 2, 2)
    for e in cat.entries:
        amp = e.complex.amplitude
        for n in range(-amp - 1, amp + 2):
            if n == 0:
                continue
            assert hom_bruteforce(e.complex, e.complex, n) == 0


def test_stratification_trees_and_jh():
    a = build_algebra(presets.loop_bridges_dim10())
    trees = stratification_trees(a)
    assert len(trees) == 2
    for t in trees:
        assert t.root.fully_certified()
        # leaf rank sums equal the root rank
        assert sum(l.fingerprint_.num_simples for l in t.root.leaves()) == 2
    verdict = jh_across(trees)
    assert verdict.kind == "Fails"
    dims = sorted(sorted(l.fingerprint_.dim for l in t.root.leaves())
                  for t in trees)
    assert dims == [[1, 4], [2, 2]]
    assert jh_compare(trees[0], trees[1]).kind == "Fails"
    assert jh_compare(trees[1], trees[0]).kind == "Fails"
    assert jh_compare(trees[0], trees[0]).kind == "Holds"


def test_jh_holds_bridge_loop():
    a = build_algebra(presets.bridge_loop())
    trees = stratification_trees(a)
    assert len(trees) == 2
    assert jh_across(trees).kind == "Holds"
    ms = trees[0].leaf_multiset()
    assert sorted(k[0] for k in ms) == [1, 2]


def test_local_tree():
    a = build_algebra(presets.dual_numbers())
    trees = stratification_trees(a)
    assert len(trees) == 1
    assert trees[0].root.tag == "SimpleCertified"
    assert jh_across(trees).kind == "Holds"


def test_root_mismatch():
    a = build_algebra(presets.bridge_loop())
    b = build_algebra(presets.dual_numbers())
    with pytest.raises(RootMismatch):
        jh_compare(stratification_trees(a)[0], stratification_trees(b)[0])
