import itertools

import pytest
from hypothesis import given, settings, strategies as st

from alphatriples.constructions import complete_graph, cycle_graph, factorless_regular, path_graph, petersen_graph
from alphatriples.factors import (
    FactorSubgraph,
    cubic_degree2_subgraph,
    degree_constrained_factor,
    path_cover_number,
    reduce_factor,
    two_factorization,
    validate_R_factor,
)
from alphatriples.graph import Graph, is_regular


def assert_two_factorization(g, factors):
    assert len(factors) == is_regular(g) // 2
    seen = set()
    for f in factors:
        assert f.is_consistent() and f.base == g
        assert all(d == 2 for d in f.degrees)
        assert not seen & f.edges
        seen |= f.edges
    assert seen == set(range(g.m))


def test_two_factorization_examples():
    c6 = cycle_graph(6)
    (only,) = two_factorization(c6)
    assert only.edges == frozenset(range(6))
    k5 = complete_graph(5)
    assert_two_factorization(k5, two_factorization(k5))
    assert_two_factorization(complete_graph(7), two_factorization(complete_graph(7)))
    with pytest.raises(ValueError):
        two_factorization(complete_graph(4))


def test_degree_constrained_factor():
    g = petersen_graph()
    h = degree_constrained_factor(g, 2, 3)
    assert h is not None and all(2 <= d <= 3 for d in h.degrees)
    h = degree_constrained_factor(complete_graph(5), 2, 2)
    assert h is not None and h.is_consistent() and all(d == 2 for d in h.degrees)
    # no perfect matching in K_3, no 2-factor in a path
    assert degree_constrained_factor(complete_graph(3), 1, 1) is None
    assert degree_constrained_factor(path_graph(4), 2, 2) is None


def test_factorless_regular_has_no_small_factor():
    g = factorless_regular(3)
    assert degree_constrained_factor(g, 2, 2) is None
    assert degree_constrained_factor(g, 1, 1) is None


def factor_oracle(g, a, b):
    for k in range(g.m + 1):
        for ids in itertools.combinations(range(g.m), k):
            f = FactorSubgraph.from_edges(g, ids)
            if all(a <= d <= b for d in f.degrees):
                return True
    return False


@st.composite
def small_graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=11)) if pairs else []
    return Graph.from_edges(n, chosen)


@given(small_graphs(), st.sampled_from([(1, 1), (2, 2), (1, 2), (0, 1), (2, 3)]))
@settings(max_examples=150, deadline=None)
def test_degree_constrained_factor_matches_subset_oracle(g, ab):
    a, b = ab
    h = degree_constrained_factor(g, a, b)
    assert (h is not None) == factor_oracle(g, a, b)
    if h is not None:
        assert h.is_consistent() and all(a <= d <= b for d in h.degrees)


def test_reduce_factor_on_k4():
    g = complete_graph(4)
    h = reduce_factor(FactorSubgraph.whole(g), 3)
    assert h.edge_pairs() == [(0, 2), (0, 3), (1, 2), (1, 3)]
    assert all(d == 2 for d in h.degrees)
    rep = validate_R_factor(h, 3)
    assert rep.passed and rep.line_max_degree == 2 and rep.edge_count == 4


def test_reduce_factor_keeps_reduced_input():
    g = cycle_graph(6)
    h = FactorSubgraph.whole(g)
    assert reduce_factor(h, 3).edges == h.edges


def test_reduce_factor_on_petersen():
    h = reduce_factor(FactorSubgraph.whole(petersen_graph()), 3)
    rep = validate_R_factor(h, 3)
    assert rep.passed and rep.edge_count >= 10


def test_reduce_factor_rejects_out_of_range():
    with pytest.raises(ValueError):
        reduce_factor(FactorSubgraph.whole(path_graph(4)), 3)


def test_validate_rejects_adjacent_top_degrees():
    rep = validate_R_factor(FactorSubgraph.whole(complete_graph(4)), 3)
    assert not rep.passed and not rep.no_adjacent_top


def test_validate_two_regular_passes_vacuously():
    # two disjoint 5-cycles of the Petersen graph
    h = degree_constrained_factor(petersen_graph(), 2, 2)
    assert h is not None and len(h) == 10
    assert validate_R_factor(h, 3).passed
    assert validate_R_factor(FactorSubgraph.whole(cycle_graph(7)), 3).passed


def test_cubic_degree2_subgraph():
    h = cubic_degree2_subgraph(complete_graph(4))
    assert len(h) == 4 and max(h.degrees) <= 2
    h = cubic_degree2_subgraph(petersen_graph())
    assert len(h) == 10 and max(h.degrees) <= 2
    with pytest.raises(ValueError):
        cubic_degree2_subgraph(cycle_graph(6))


def path_cover_oracle(g: Graph) -> int:
    # Cut every vertex order into maximal runs of consecutive adjacent vertices.
    best = g.n
    for order in itertools.permutations(range(g.n)):
        runs = 1 + sum(1 for a, b in zip(order, order[1:]) if not g.has_edge(a, b))
        best = min(best, runs)
    return best


def test_path_cover_examples():
    assert path_cover_number(path_graph(7)).size == 1
    assert path_cover_number(Graph.from_edges(4, [(0, 1), (2, 3)])).size == 2
    pc = path_cover_number(petersen_graph())
    assert pc.size == 1 and sorted(pc.paths[0]) == list(range(10))
    assert path_cover_number(factorless_regular(3)).size == 2


@given(small_graphs())
@settings(max_examples=150, deadline=None)
def test_path_cover_matches_oracle(g):
    pc = path_cover_number(g)
    assert pc.size == path_cover_oracle(g) == len(pc.paths)
    assert sorted(v for path in pc.paths for v in path) == list(range(g.n))
    for path in pc.paths:
        assert all(g.has_edge(a, b) for a, b in zip(path, path[1:]))
