import itertools

import numpy as np
import pytest

from core.errors import BoundExceeded, WitnessValidationError
from core.graph import EdgeSubset, tour_from_subset, union_multigraph
from models import Origin
from modules.instances import random_pair
from modules.oracle import (
    RollbackSets,
    condition_label,
    find_complementary_exhaustive,
    find_complementary_in_graph,
    require_witness,
    validate_witness,
)

from conftest import tours


def naive_search(x, y):
    """Every n-subset of the 2n edges as z."""
    g = union_multigraph(x, y)
    for ids in itertools.combinations(range(len(g.edges)), g.n):
        z = EdgeSubset.of(ids)
        if validate_witness(x, y, z, z.complement(g), g):
            return True
    return False


def relabel(t, perm):
    return [perm[v - 1] for v in t.order]


class TestValidateWitness:
    def test_known_witness(self, shared_edges):
        x, y, g, z, w = shared_edges
        assert validate_witness(x, y, z, w, g)
        require_witness(x, y, z, w, g)

    def test_x_and_y_themselves_do_not_count(self, shared_edges):
        x, y, g, _, _ = shared_edges
        z = g.origin_subset(Origin.FROM_X)
        assert validate_witness(None, None, z, z.complement(g), g)
        assert not validate_witness(x, y, z, z.complement(g), g)

    def test_non_partition(self, shared_edges):
        x, y, g, z, _ = shared_edges
        assert not validate_witness(x, y, z, z, g)

    def test_triangles_fail(self, tour_and_triangles):
        x, y, g, z, w = tour_and_triangles
        assert not validate_witness(x, y, z, w, g)
        with pytest.raises(WitnessValidationError):
            require_witness(x, y, z, w, g)


class TestExhaustive:
    def test_shared_edges_condition_holds(self, shared_edges):
        x, y, g, _, _ = shared_edges
        found = find_complementary_exhaustive(x, y)
        assert found is not None
        assert validate_witness(x, y, *found, g)
        assert condition_label(found) == "condition holds"

    def test_hexagon_unique_witness(self, hexagon):
        x, y, g = hexagon
        z, w = find_complementary_exhaustive(x, y)
        # either copy of 1-2 and 4-5 may land on either side
        assert {str(tour_from_subset(z, g)), str(tour_from_subset(w, g))} == {"1 2 3 5 4 6", "1 2 6 5 4 3"}

    @pytest.mark.parametrize(
        "x,y,directed",
        [((1, 2, 3, 4), (1, 2, 4, 3), False), ((1, 2, 3), (1, 3, 2), True)],
    )
    def test_condition_fails(self, x, y, directed):
        found = find_complementary_exhaustive(*tours(x, y, directed))
        assert found is None
        assert condition_label(found) == "condition fails"

    def test_two_cover_digraph_has_no_pair(self, two_cover_digraph):
        assert find_complementary_in_graph(two_cover_digraph) is None

    def test_bound(self):
        rng = np.random.default_rng(0)
        x, y = random_pair(13, False, rng)
        with pytest.raises(BoundExceeded):
            find_complementary_exhaustive(x, y)
        with pytest.raises(BoundExceeded):
            find_complementary_in_graph(union_multigraph(x, y), bound=10)

    @pytest.mark.parametrize("directed", [False, True])
    def test_agrees_with_naive_enumeration(self, directed):
        rng = np.random.default_rng(21 if directed else 12)
        for _ in range(40):
            n = int(rng.integers(4, 7))
            x, y = random_pair(n, directed, rng)
            assert (find_complementary_exhaustive(x, y) is not None) == naive_search(x, y)

    def test_relabelling_keeps_the_answer(self):
        rng = np.random.default_rng(99)
        for _ in range(20):
            n = int(rng.integers(5, 9))
            directed = bool(rng.integers(2))
            x, y = random_pair(n, directed, rng)
            perm = (rng.permutation(n) + 1).tolist()
            rx, ry = tours(relabel(x, perm), relabel(y, perm), directed)
            assert (find_complementary_exhaustive(x, y) is None) == (find_complementary_exhaustive(rx, ry) is None)


def test_rollback_sets():
    sets = RollbackSets(4)
    sets.union(0, 1)
    sets.union(1, 0)
    sets.union(2, 3)
    assert sets.find(3) != sets.find(0)
    sets.union(1, 3)
    assert sets.size[sets.find(0)] == 4
    sets.undo()
    assert sets.find(3) != sets.find(0)
    sets.undo()
    sets.undo()
    sets.undo()
    assert [sets.find(v) for v in range(4)] == [0, 1, 2, 3]
