import numpy as np
import pytest

from citeflow import Network, random_dag


def arcs_of(net):
    """Arc list as plain (tail, head) int pairs, in arc-index order."""
    return list(zip(net.tails.tolist(), net.heads.tolist()))


def rand_instance(seed, n=8, density=0.3):
    net = random_dag(n, density, seed)
    return net, arcs_of(net)


@pytest.fixture
def diamond():
    # a cited by b and c, both cited by d
    return Network(4, [(1, 2), (1, 3), (2, 4), (3, 4)],
                   ["a", "b", "c", "d"])


@pytest.fixture
def chain3():
    return Network(3, [(1, 2), (2, 3)])


@pytest.fixture
def branch():
    # two source-sink routes of different strength
    return Network(4, [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])
