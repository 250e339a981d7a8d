import numpy as np
import pytest

from citeflow import (ArcWeights, Network, arc_cut, cpm_path, islands,
                      main_path, nppc, parse_pajek, random_dag, spc,
                      standardize, write_subnetwork)

import oracles
from conftest import arcs_of, rand_instance


def spc_setup(net):
    std = standardize(net)
    return std, spc(std, "exact")


# --- main path ---

def test_main_path_branches_at_ties(branch):
    std, res = spc_setup(branch)
    sub = main_path(std, res.arc)
    assert sorted(sub.vertices) == [1, 2, 3, 4]
    assert [arcs_of(branch)[i] for i in sub.arcs] == \
        [(1, 2), (2, 3), (2, 4), (3, 4)]
    assert sub.kind == "main_path"


def test_main_path_single_breaks_ties_low(branch):
    std, res = spc_setup(branch)
    sub = main_path(std, res.arc, single=True)
    assert [arcs_of(branch)[i] for i in sub.arcs] == \
        [(1, 2), (2, 3), (3, 4)]


def test_main_path_strips_source_and_sink(diamond):
    std, res = spc_setup(diamond)
    sub = main_path(std, res.arc)
    assert std.s not in sub.vertices
    assert std.t not in sub.vertices
    assert all(i < diamond.m for i in sub.arcs)


def test_main_path_float_tie_tolerance():
    net = Network(4, [(1, 2), (1, 3), (2, 4), (3, 4)])
    std = standardize(net)
    w = list(spc(std, "float").arc)
    w[0] *= 1.0 + 1e-14  # still a tie at the documented tolerance
    sub = main_path(std, ArcWeights(w, "float"))
    assert len(sub.arcs) == 4
    w[0] *= 1.0 + 1e-9   # now a real winner
    sub = main_path(std, ArcWeights(w, "float"))
    assert [arcs_of(net)[i] for i in sub.arcs] == [(1, 2), (2, 4)]


@pytest.mark.parametrize("seed", range(10))
def test_main_path_vertices_lie_on_kept_arcs(seed):
    net, arcs = rand_instance(seed, n=10, density=0.3)
    std, res = spc_setup(net)
    sub = main_path(std, res.arc)
    touched = set()
    for i in sub.arcs:
        touched.update(arcs[i])
    # single-vertex paths happen when the net has no arcs at all
    if sub.arcs:
        assert sub.vertices <= touched | sub.vertices
        for v in sub.vertices:
            incident = any(v in arcs[i] for i in sub.arcs)
            assert incident or net.m == 0


def test_main_path_with_closure_weights(diamond):
    # weight vectors computed on the plain network get padded with zeros
    std = standardize(diamond)
    res = nppc(diamond)
    sub = main_path(std, res.arc)
    assert sorted(sub.vertices) == [1, 2, 3, 4]


def test_main_path_rejects_misaligned_weights(diamond):
    std = standardize(diamond)
    with pytest.raises(ValueError):
        main_path(std, ArcWeights([1.0, 2.0], "float"))


# --- critical path ---

def test_cpm_unique_path(branch):
    std, res = spc_setup(branch)
    sub = cpm_path(std, res.arc)
    assert [arcs_of(branch)[i] for i in sub.arcs] == \
        [(1, 2), (2, 3), (3, 4)]
    assert sorted(sub.vertices) == [1, 2, 3, 4]
    assert sub.kind == "cpm_path"


def test_cpm_keeps_all_optimal_paths(diamond):
    std, res = spc_setup(diamond)
    sub = cpm_path(std, res.arc)  # the two routes tie
    assert len(sub.arcs) == 4
    assert sorted(sub.vertices) == [1, 2, 3, 4]


@pytest.mark.parametrize("seed", range(12))
def test_cpm_matches_enumeration(seed):
    net, arcs = rand_instance(seed, n=9, density=0.3)
    std, res = spc_setup(net)
    best, arc_union, vert_union = oracles.cpm_oracle(
        net.n, arcs, list(res.arc))
    sub = cpm_path(std, res.arc)
    assert set(sub.arcs) == {i for i in arc_union if i < net.m}
    assert sub.vertices == vert_union


@pytest.mark.parametrize("seed", range(12))
def test_cpm_dominates_greedy_branches(seed):
    net, arcs = rand_instance(seed, n=10, density=0.35)
    std, res = spc_setup(net)
    w = list(res.arc)
    cpm_total = max(sum(w[i] for i in p)
                    for p in oracles.enumerate_st_paths(net.n, arcs)[3])
    # walk one greedy chain, always taking the smallest tied head
    sub = main_path(std, res.arc, single=True)
    greedy_total = sum(w[i] for i in sub.arcs)
    assert greedy_total <= cpm_total


# --- arc cut ---

def test_arc_cut_threshold_and_components(branch):
    std, res = spc_setup(branch)
    w = list(res.arc)[:branch.m]
    sub = arc_cut(branch, w, 2)
    assert [arcs_of(branch)[i] for i in sub.arcs] == [(1, 2), (3, 4)]
    assert sub.components == (frozenset({1, 2}), frozenset({3, 4}))
    assert sub.kind == "arc_cut"


def test_arc_cut_monotone_in_threshold(branch):
    std, res = spc_setup(branch)
    w = list(res.arc)[:branch.m]
    previous = None
    for threshold in (0, 1, 2, 3):
        arcs = set(arc_cut(branch, w, threshold).arcs)
        if previous is not None:
            assert arcs <= previous
        previous = arcs


def test_arc_cut_drops_isolated_vertices(diamond):
    sub = arc_cut(diamond, [1, 0, 0, 1], 1)
    assert sub.vertices == {1, 2, 3, 4}
    sub = arc_cut(diamond, [1, 0, 0, 0], 1)
    assert sub.vertices == {1, 2}


def test_arc_cut_length_check(diamond):
    with pytest.raises(ValueError):
        arc_cut(diamond, [1, 2], 1)


# --- subnetwork materialization ---

def test_to_network_renumbers_and_keeps_labels():
    net = Network(5, [(2, 4, 3.0), (4, 5, 1.0)], list("abcde"))
    sub = arc_cut(net, [3.0, 1.0], 2.0)
    dense = sub.to_network()
    assert dense.n == 2
    assert arcs_of(dense) == [(1, 2)]
    assert dense.label(1) == "b"
    assert dense.label(2) == "d"


def test_write_subnetwork_round_trips(branch):
    std, res = spc_setup(branch)
    sub = main_path(std, res.arc)
    text = write_subnetwork(sub, res.arc)
    back = parse_pajek(text)
    assert back.n == len(sub.vertices)
    assert back.m == len(sub.arcs)


# --- islands ---

def test_islands_hand_case():
    net = Network(4, [(1, 2, 5.0), (3, 4, 4.0), (2, 3, 1.0)])
    out = islands(net, [5, 4, 1], min_size=2, max_size=2)
    got = [(sorted(i.vertices), i.internal_min, i.external_max)
           for i in out.islands]
    assert got == [([1, 2], 5, 1), ([3, 4], 4, 1)]
    assert out.membership(4) == [1, 1, 2, 2]
    assert out.size_frequencies() == {2: 2}


def test_islands_outermost_has_no_external_bar(chain3):
    out = islands(chain3, [2.0, 1.0], min_size=2, max_size=3)
    assert len(out.islands) == 1
    isl = out.islands[0]
    assert sorted(isl.vertices) == [1, 2, 3]
    assert isl.internal_min == 1.0
    assert isl.external_max is None


def test_islands_respect_size_cap(chain3):
    out = islands(chain3, [2.0, 1.0], min_size=2, max_size=2)
    assert [sorted(i.vertices) for i in out.islands] == [[1, 2]]
    assert out.islands[0].external_max == 1.0


def test_islands_ignore_loops_and_untouched_vertices():
    net = Network(5, [(1, 1, 9.0), (2, 3, 2.0)])
    out = islands(net, [9.0, 2.0], min_size=2, max_size=5)
    assert [sorted(i.vertices) for i in out.islands] == [[2, 3]]
    assert out.membership(5) == [0, 1, 1, 0, 0]


def test_islands_equal_weight_group_merges_as_one():
    net = Network(3, [(1, 2, 1.0), (2, 3, 1.0)])
    out = islands(net, [1.0, 1.0], min_size=2, max_size=3)
    assert [sorted(i.vertices) for i in out.islands] == [[1, 2, 3]]


def test_islands_validation(chain3):
    with pytest.raises(ValueError):
        islands(chain3, [1.0], min_size=2)
    with pytest.raises(ValueError):
        islands(chain3, [1.0, 2.0], min_size=0)
    with pytest.raises(ValueError):
        islands(chain3, [1.0, 2.0], min_size=3, max_size=2)


def test_islands_are_pairwise_disjoint():
    for seed in range(15):
        net = random_dag(11, 0.3, seed)
        rng = np.random.default_rng(seed + 1000)
        w = rng.integers(1, 6, size=net.m).tolist()
        out = islands(net, w, min_size=2, max_size=6)
        seen = set()
        for isl in out.islands:
            assert not (isl.vertices & seen)
            seen |= isl.vertices


@pytest.mark.parametrize("seed", range(25))
@pytest.mark.parametrize("bounds", [(2, 12), (2, 4), (3, 6)])
def test_islands_match_brute_force(seed, bounds):
    k, kmax = bounds
    net = random_dag(9, 0.35, seed)
    if net.m == 0:
        pytest.skip("no arcs")
    rng = np.random.default_rng(seed + 77)
    # small integer weights force plenty of ties
    w = rng.integers(1, 5, size=net.m).tolist()
    got = {isl.vertices for isl in
           islands(net, w, min_size=k, max_size=min(kmax, net.n)).islands}
    expect = oracles.brute_islands(net.n, arcs_of(net), w, k,
                                   min(kmax, net.n))
    assert got == expect


def test_islands_sorted_by_strength_then_vertex():
    net = Network(6, [(1, 2, 3.0), (3, 4, 7.0), (5, 6, 3.0)])
    out = islands(net, [3.0, 7.0, 3.0], min_size=2, max_size=2)
    assert [sorted(i.vertices) for i in out.islands] == \
        [[3, 4], [1, 2], [5, 6]]
