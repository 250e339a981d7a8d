import math

import numpy as np
import pytest

from citeflow import Network, hits, random_dag

from conftest import arcs_of


def test_star_closed_form():
    # one paper cited by five others
    net = Network(6, [(1, j) for j in range(2, 7)])
    scores = hits(net)
    assert scores.converged
    assert abs(scores.authority[0] - 1.0) < 1e-12
    assert np.all(np.abs(scores.authority[1:]) < 1e-12)
    assert abs(scores.hub[0]) < 1e-12
    share = 1.0 / math.sqrt(5.0)
    assert np.all(np.abs(scores.hub[1:] - share) < 1e-12)


def test_single_arc():
    net = Network(2, [(1, 2)])
    scores = hits(net)
    assert scores.converged
    assert scores.authority.tolist() == [1.0, 0.0]
    assert scores.hub.tolist() == [0.0, 1.0]


def test_hub_sits_on_the_citing_side():
    # arc (u, v) records that v cites u
    net = Network(3, [(1, 3), (2, 3)])
    scores = hits(net)
    assert scores.hub[2] == 1.0
    assert scores.authority[2] == 0.0


def test_unit_norm_every_iteration():
    net = random_dag(12, 0.4, seed=8)
    for cap in (1, 2, 3, 7):
        scores = hits(net, max_iter=cap)
        assert abs(np.linalg.norm(scores.hub) - 1.0) < 1e-12
        assert abs(np.linalg.norm(scores.authority) - 1.0) < 1e-12


@pytest.mark.parametrize("seed", range(20))
def test_reversal_duality_is_bit_exact(seed):
    net = random_dag(14, 0.3, seed)
    if net.m == 0:
        pytest.skip("no arcs")
    fwd = hits(net)
    rev = hits(net.reverse())
    assert np.array_equal(rev.hub, fwd.authority)
    assert np.array_equal(rev.authority, fwd.hub)
    assert rev.iterations == fwd.iterations
    assert rev.converged == fwd.converged


def test_duality_holds_on_cyclic_networks():
    net = Network(4, [(1, 2), (2, 3), (3, 1), (1, 4), (4, 2)])
    fwd = hits(net)
    rev = hits(net.reverse())
    assert np.array_equal(rev.hub, fwd.authority)
    assert np.array_equal(rev.authority, fwd.hub)


def test_arc_multiplicity_is_ignored():
    simple = Network(3, [(1, 2), (1, 3), (2, 3)])
    multi = Network(3, [(1, 2), (1, 2), (1, 3), (2, 3), (2, 3)])
    a, b = hits(simple), hits(multi)
    assert np.array_equal(a.hub, b.hub)
    assert np.array_equal(a.authority, b.authority)


def test_degenerate_tie_reports_not_converged(diamond):
    # two equal-strength score splits; the rotation never settles, and
    # returning either split as "converged" would be arbitrary
    scores = hits(diamond, max_iter=50)
    assert not scores.converged
    assert scores.residual > 0.1
    assert abs(np.linalg.norm(scores.hub) - 1.0) < 1e-12


def test_chain_converges():
    scores = hits(Network(3, [(1, 2), (2, 3)]))
    assert scores.converged
    assert scores.iterations <= 5


def test_loose_tolerance_converges_faster():
    net = random_dag(15, 0.4, seed=3)
    tight = hits(net, tolerance=1e-12)
    loose = hits(net, tolerance=1e-3)
    assert loose.iterations <= tight.iterations
    assert loose.converged


def test_needs_an_arc():
    with pytest.raises(ValueError):
        hits(Network(3, []))


def test_top_ranks_by_score_then_id():
    net = Network(4, [(1, 4), (2, 4), (3, 4)])
    scores = hits(net)
    ranked = scores.top(3, kind="authority")
    assert [v for v, _ in ranked] == [1, 2, 3]
    assert ranked[0][1] == pytest.approx(1.0 / math.sqrt(3.0))
    assert scores.top(1, kind="hub") == [(4, pytest.approx(1.0))]


def test_scores_are_nonnegative():
    net = random_dag(20, 0.25, seed=11)
    if net.m:
        scores = hits(net)
        assert np.all(scores.hub >= 0.0)
        assert np.all(scores.authority >= 0.0)
