import pytest

from core.graph import build_multigraph, subset_from_pairs, tour_from_permutation, union_multigraph

TWO_COVER_ARCS = [(1, 2), (1, 5), (2, 5), (2, 6), (3, 1), (3, 2), (4, 1), (4, 3), (5, 4), (5, 6), (6, 3), (6, 4)]


def tours(x, y, directed=False):
    return tour_from_permutation(x, directed), tour_from_permutation(y, directed)


@pytest.fixture
def shared_edges():
    """8-vertex pair sharing edges 1-2, 6-7 and 5-8, with a known witness."""
    x, y = tours((1, 2, 4, 7, 6, 8, 5, 3), (1, 2, 3, 4, 6, 7, 8, 5))
    g = union_multigraph(x, y)
    z = subset_from_pairs(g, [(1, 2), (2, 4), (4, 6), (6, 7), (7, 8), (8, 5), (5, 3), (3, 1)])
    return x, y, g, z, z.complement(g)


@pytest.fixture
def tour_and_triangles():
    """z is a Hamiltonian cycle, w two triangles {1,2,6} and {3,4,5}."""
    x, y = tours((1, 4, 5, 3, 2, 6), (1, 2, 6, 4, 3, 5))
    g = union_multigraph(x, y)
    z = subset_from_pairs(g, [(1, 4), (4, 6), (6, 2), (2, 3), (3, 5), (5, 1)])
    return x, y, g, z, z.complement(g)


@pytest.fixture
def two_cover_digraph():
    """Digraph whose only cycle covers are a tour and two triangles."""
    return build_multigraph(6, True, [(u - 1, v - 1) for u, v in TWO_COVER_ARCS])


@pytest.fixture
def hexagon():
    """x = 1..6, y = (1,2,6,4,5,3); ids 0-5 are x's edges, 6-11 y's."""
    x, y = tours((1, 2, 3, 4, 5, 6), (1, 2, 6, 4, 5, 3))
    return x, y, union_multigraph(x, y)
