import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from alphatriples.constructions import complete_graph, cycle_graph, path_graph, petersen_graph
from alphatriples.graph import Graph, line_graph
from alphatriples.solver import (
    alpha_p_bruteforce,
    alpha_p_exact,
    is_p_independent,
    lower_bound_matching,
    maximum_matching,
    mu_q,
    upper_bound_alpha_p,
    upper_bound_alpha_p_below_r,
)


def subset_oracle(g: Graph, p: int) -> int:
    # Largest p-independent subset by plain itertools enumeration.
    for k in range(g.n, 0, -1):
        for sub in itertools.combinations(range(g.n), k):
            if is_p_independent(g, sub, p):
                return k
    return 0


@st.composite
def small_graphs(draw, max_n=11):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@pytest.mark.parametrize(
    "g,p,expected",
    [
        (cycle_graph(5), 0, 2),
        (cycle_graph(5), 2, 5),
        (petersen_graph(), 0, 4),
        (complete_graph(4), 0, 1),
        (complete_graph(4), 2, 3),
        (cycle_graph(6), 1, 4),
    ],
)
def test_alpha_p_examples(g, p, expected):
    res = alpha_p_exact(g, p)
    assert res.value == expected
    assert len(res.witness) == expected and is_p_independent(g, res.witness, p)


def test_petersen_alpha_1_matches_oracles():
    g = petersen_graph()
    assert alpha_p_exact(g, 1).value == alpha_p_bruteforce(g, 1).value == subset_oracle(g, 1)
    assert subset_oracle(g, 0) == 4


@given(small_graphs(), st.integers(0, 3))
@settings(max_examples=300, deadline=None)
def test_exact_matches_bruteforce(g, p):
    exact = alpha_p_exact(g, p)
    brute = alpha_p_bruteforce(g, p)
    assert exact.value == brute.value
    assert is_p_independent(g, exact.witness, p)


@given(small_graphs(max_n=8), st.integers(0, 2))
@settings(max_examples=100, deadline=None)
def test_bruteforce_matches_subset_oracle(g, p):
    assert alpha_p_bruteforce(g, p).value == subset_oracle(g, p)


def test_witness_is_deterministic():
    g = petersen_graph()
    assert alpha_p_exact(g, 1).witness == alpha_p_exact(g, 1).witness


def test_bruteforce_size_cap():
    with pytest.raises(ValueError):
        alpha_p_bruteforce(cycle_graph(40), 0)


def test_negative_p_rejected():
    with pytest.raises(ValueError):
        alpha_p_exact(cycle_graph(4), -1)


@pytest.mark.parametrize(
    "g,q,expected",
    [(complete_graph(2), 0, 1), (cycle_graph(7), 2, 7), (cycle_graph(8), 2, 8), (complete_graph(4), 0, 2)],
)
def test_mu_q_examples(g, q, expected):
    res = mu_q(g, q)
    assert res.value == expected
    # witness ids are edge ids of g
    assert all(0 <= e < g.m for e in res.witness)


@pytest.mark.parametrize("g,expected", [(path_graph(4), 2), (petersen_graph(), 5), (complete_graph(4), 2)])
def test_maximum_matching_examples(g, expected):
    res = maximum_matching(g)
    assert res.size == expected == mu_q(g, 0).value
    ends = [v for e in res.edges for v in g.edges()[e]]
    assert len(ends) == len(set(ends))


def test_maximum_matching_against_networkx():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(1, 16)
        g = Graph.from_edges(
            n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < rng.uniform(0.1, 0.6)]
        )
        ref = nx.Graph()
        ref.add_nodes_from(range(n))
        ref.add_edges_from(g.edges())
        assert maximum_matching(g).size == len(nx.max_weight_matching(ref, maxcardinality=True))


def test_upper_bounds():
    assert upper_bound_alpha_p(10, 3, 1) == 6
    assert upper_bound_alpha_p(10, 3, 2) == Fraction(15, 2)
    for n, r in [(7, 4), (12, 5)]:
        assert upper_bound_alpha_p(n, r, r) == n
    assert upper_bound_alpha_p_below_r(8, 3, 2) == 6
    with pytest.raises(ValueError):
        upper_bound_alpha_p_below_r(8, 3, 3)
    with pytest.raises(ValueError):
        upper_bound_alpha_p(3, 3, 1)
    with pytest.raises(ValueError):
        upper_bound_alpha_p(10, 3, 4)


def test_matching_lower_bound():
    assert lower_bound_matching(10, 3) == Fraction(13, 3)
    assert lower_bound_matching(4, 3) == Fraction(5, 3)
    assert maximum_matching(complete_graph(4)).size >= lower_bound_matching(4, 3)
    assert maximum_matching(petersen_graph()).size >= lower_bound_matching(10, 3)
    for n in range(4, 40, 2):
        assert lower_bound_matching(n, 3) == Fraction(4 * n - 1, 9)
    with pytest.raises(ValueError):
        lower_bound_matching(10, 4)


def test_counting_bound_on_cubic_order_10(corpus):
    for g in corpus(3, 10, 10):
        assert alpha_p_exact(g, 2).value <= 7


def test_mu_q_equals_line_graph_alpha():
    g = petersen_graph()
    for q in range(4):
        assert mu_q(g, q).value == alpha_p_exact(line_graph(g).lg, q).value
