from __future__ import annotations

import pytest

from sqfpow.graphs import GraphDomainError, connected_components, cycle, forest_corpus, graph_from_edges, matching_number, path, star
from sqfpow.monomials import MonomialIdeal, edge_ideal, ideal_intersection, scale, squarefree_power
from sqfpow.resolution import GF2, GF3, QQ
from sqfpow.splittings import (
    EkMap,
    SplittingError,
    Splitting,
    canonical_ek_map,
    cone_power_splitting,
    forest_power_splitting,
    forest_proof_ek_map,
    lemma26_ek_map,
    relabel,
    setup_labels,
    verify_betti_splitting,
    verify_cone_depth_formula,
    verify_ek_criterion,
    x_partition,
)


def S(n, *supports):
    return MonomialIdeal.from_supports(n, supports)


def test_x_partition_of_path():
    s = x_partition(edge_ideal(path(4)), 4)
    assert s.part1 == S(4, [1, 2], [2, 3])
    assert s.part2 == S(4, [3, 4])
    assert x_partition(edge_ideal(path(3)).with_ambient(4), 4).part2.is_zero


def test_x_partition_on_example_matches_forest_splitting(example_graph):
    I2 = squarefree_power(edge_ideal(example_graph), 2)
    s = x_partition(I2, 11)
    G2 = example_graph.remove_vertices([10, 11])
    assert s.part2 == scale((1 << 9) | (1 << 10), edge_ideal(G2))


def test_edge_ideal_splits_at_a_vertex():
    assert verify_betti_splitting(x_partition(edge_ideal(path(4)), 4))


def test_negative_control_reports_a_verdict():
    I = edge_ideal(cycle(5))
    gens = I.sorted_gens
    s = Splitting(I, MonomialIdeal(5, frozenset(gens[0::2])), MonomialIdeal(5, frozenset(gens[1::2])))
    v = verify_betti_splitting(s)
    assert isinstance(v.holds, bool)
    if not v.holds:
        assert v.cell is not None and len(v.ranks) == 3


def test_degenerate_splitting_is_flagged():
    I = edge_ideal(path(3)).with_ambient(4)
    v = verify_betti_splitting(x_partition(I, 4))
    assert v.holds and v.degenerate


def test_cone_splitting_examples():
    s = cone_power_splitting(S(2, [1, 2]), 2)
    assert s.part1.is_zero and s.part2 == S(3, [1, 2, 3])
    s = cone_power_splitting(edge_ideal(path(3)), 2)
    assert s.whole == S(4, [1, 2, 4], [2, 3, 4])
    with pytest.raises(SplittingError):
        cone_power_splitting(edge_ideal(path(3)), 3)


@pytest.mark.parametrize("k", [2, 3])
def test_cone_intersection_is_xn_times_power(k):
    s = cone_power_splitting(edge_ideal(path(6)), k)
    assert all(s.checks.values())
    In = squarefree_power(edge_ideal(path(6)), k).with_ambient(7)
    assert s.intersection == scale(1 << 6, In)


@pytest.mark.parametrize("fld", [GF2, GF3, QQ], ids=str)
def test_cone_splittings_are_betti_splittings(fld):
    for n in range(3, 7):
        I = edge_ideal(path(n))
        for k in range(2, matching_number(path(n)) + 2):
            assert verify_betti_splitting(cone_power_splitting(I, k), fld)


def test_cone_depth_formula_on_p3():
    rows = verify_cone_depth_formula(edge_ideal(path(3)))
    assert [(r.k, r.lhs) for r in rows] == [(1, 1), (2, 0)]
    assert all(r.holds for r in rows)
    assert len(verify_cone_depth_formula(S(2, [1, 2]))) == 2
    assert all(r.holds for r in verify_cone_depth_formula(edge_ideal(path(6))))


def test_forest_splitting_on_example(example_graph):
    fs = forest_power_splitting(example_graph, 2)
    assert fs.t == 4
    assert (fs.labels.leaf, fs.labels.support, fs.labels.inner) == (11, 10, 9)
    assert fs.all_hold, fs.identities
    assert verify_betti_splitting(fs.splitting())
    assert verify_betti_splitting(fs.inner_splitting())


def test_forest_splitting_t_zero_branch():
    fs = forest_power_splitting(path(6), 2)
    assert fs.t == 0 and fs.J2.is_zero and fs.J == fs.J1
    assert "lemma26" not in fs.identities
    fs = forest_power_splitting(path(7), 3)
    assert fs.whole == squarefree_power(edge_ideal(path(7)), 3)
    assert fs.identities["eq4"]


def test_forest_splitting_preconditions():
    with pytest.raises(GraphDomainError):
        forest_power_splitting(path(5), 1)
    with pytest.raises(GraphDomainError):
        forest_power_splitting(cycle(7), 1)


@pytest.mark.parametrize("fld", [GF2, GF3, QQ], ids=str)
def test_forest_splittings_hold_over_every_field(example_graph, fld):
    for k in range(1, 4):
        fs = forest_power_splitting(example_graph, k)
        assert verify_betti_splitting(fs.splitting(), fld)
        assert verify_betti_splitting(fs.inner_splitting(), fld)


def test_lemma26_branch_iff_t_positive():
    for G in forest_corpus(8):
        if matching_number(G) < 3 or all(len(c) <= 2 for c in connected_components(G)):
            continue
        fs = forest_power_splitting(G, 1)
        assert fs.identities["J2_nonzero_iff_t"]
        assert ("lemma26" in fs.identities) == (fs.t > 0)


def test_setup_relabeling_is_a_permutation(example_graph):
    lab = setup_labels(example_graph)
    perm = lab.relabeling(11)
    assert sorted(perm.values()) == list(range(1, 12))
    H = relabel(example_graph, perm)
    assert H.has_edge(11, 10) and H.has_edge(10, 9) and H.degree(11) == 1


def test_canonical_ek_map_examples():
    m = canonical_ek_map(S(3, [1, 2, 3]), S(3, [1, 2]))
    assert m(0b111) == 0b011
    with pytest.raises(SplittingError, match="not inside L"):
        canonical_ek_map(S(3, [1, 2]), S(3, [3]))
    with pytest.raises(SplittingError, match="x1x3 is not in L"):
        canonical_ek_map(S(3, [1, 2, 3]), S(3, [1, 2]), strict=True)
    I = edge_ideal(path(6))
    m = canonical_ek_map(squarefree_power(I, 2), I)
    assert all(v & ~u == 0 and v != u for u, v in m.assignment.items())
    assert verify_ek_criterion(canonical_ek_map(squarefree_power(edge_ideal(path(5)), 2), edge_ideal(path(5))))


def test_identity_map_fails_ek_criterion():
    I = edge_ideal(path(4))
    v = verify_ek_criterion(EkMap(I, I, {u: u for u in I.gens}))
    assert not v.holds and v.exhaustive and len(v.witness) == 1


def test_proof_maps_pass_ek_criterion(example_graph):
    for k in (1, 2, 3):
        fs = forest_power_splitting(example_graph, k)
        assert verify_ek_criterion(forest_proof_ek_map(fs), limit=20).holds
        assert verify_ek_criterion(lemma26_ek_map(fs), limit=20).holds


def test_sampled_mode_reports_coverage():
    I = edge_ideal(path(10))
    v = verify_ek_criterion(canonical_ek_map(squarefree_power(I, 2), I), limit=4, samples=500)
    assert v.holds and not v.exhaustive and v.checked == 500


def test_star_intersection_example():
    # I(K_{1,3})^[1] cone: intersection formula still exact
    s = cone_power_splitting(edge_ideal(star(4)), 2)
    assert s.checks["intersection"]
    assert s.intersection == ideal_intersection(s.part1, s.part2)
