import pytest

from level2net.network import NetworkError, isomorphic
from level2net.newick import write_enewick
from level2net.random_nets import random_level2_network
from level2net.restriction import restrict


def test_same_seed_same_network():
    assert write_enewick(random_level2_network(9, 42)) == write_enewick(random_level2_network(9, 42))


def test_level_zero_gives_trees():
    for seed in range(30):
        assert random_level2_network(3 + seed % 10, seed, max_level=0).is_tree()


def test_level_one_budget():
    for seed in range(30):
        assert random_level2_network(3 + seed % 10, seed, max_level=1).level() <= 1


def test_samples_are_valid(networks):
    assert len(networks) == 200
    for net in networks:
        assert net.validate() == []
        assert net.is_recoverable()
        assert net.level() <= 2
        # nothing disappears when restricting to every taxon
        assert isomorphic(restrict(net, net.taxa), net)


def test_corpus_mixes_blob_shapes(networks):
    seen = set()
    for net in networks:
        for comp in net.biconnected_components():
            if len(comp) > 1:
                seen.add(len(comp))
    # cycles of several lengths plus level-2 blobs
    assert max(n.level() for n in networks) == 2 and len(seen) > 4


def test_too_few_leaves():
    with pytest.raises(NetworkError):
        random_level2_network(2, 0)
