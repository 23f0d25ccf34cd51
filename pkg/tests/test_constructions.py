import pytest

from alphatriples.constructions import (
    ConstructionRecipe,
    Kind,
    complete_bipartite,
    cycle_graph,
    factorless_regular,
    named_graph,
    p3_packing_graph,
    petersen_graph,
    round_robin_one_factorization,
    sharpness_a_side,
    sharpness_bipartite,
)
from alphatriples.graph import components, is_connected, is_regular
from alphatriples.solver import alpha_p_exact, is_p_independent, mu_q, upper_bound_alpha_p


@pytest.mark.parametrize("r,p,t", [(3, 1, 1), (3, 2, 1), (4, 1, 1), (4, 3, 1), (5, 2, 1), (3, 1, 2)])
def test_sharpness_bipartite_structure(r, p, t):
    g = sharpness_bipartite(r, p, t)
    assert is_regular(g) == r
    assert g.n == 2 * t * (2 * r - p)
    a_side = sharpness_a_side(r, p, t)
    assert len(a_side) == upper_bound_alpha_p(g.n, r, p)
    assert is_p_independent(g, a_side, p)


def test_sharpness_bipartite_values():
    g = sharpness_bipartite(3, 1, 1)
    assert g.n == 10 and alpha_p_exact(g, 1).value == 6
    g = sharpness_bipartite(3, 2, 1)
    assert g.n == 8 and alpha_p_exact(g, 2).value == 6
    assert mu_q(g, 1).value <= 16 // 3 < 6


def test_sharpness_bipartite_rejects():
    with pytest.raises(ValueError):
        sharpness_bipartite(3, 3)
    with pytest.raises(ValueError):
        sharpness_bipartite(3, 0)


@pytest.mark.parametrize("order", [2, 4, 6, 8])
def test_round_robin_partitions_complete_graph(order):
    rounds = round_robin_one_factorization(order)
    assert len(rounds) == order - 1
    everything = [e for rnd in rounds for e in rnd]
    assert len(everything) == len(set(everything)) == order * (order - 1) // 2
    for rnd in rounds:
        assert sorted(v for e in rnd for v in e) == list(range(order))
    if order == 2:
        assert rounds == [[(0, 1)]]


def test_factorless_regular():
    g = factorless_regular(3)
    assert (g.n, is_regular(g)) == (16, 3) and is_connected(g)
    assert mu_q(g, 2).value < 16
    big = factorless_regular(5)
    assert (big.n, is_regular(big)) == (36, 5) and is_connected(big)
    with pytest.raises(ValueError):
        factorless_regular(4)


@pytest.mark.parametrize("x,n,alpha1", [(1, 3, 2), (2, 6, 4), (3, 9, 6)])
def test_p3_packing(x, n, alpha1):
    g = p3_packing_graph(x)
    assert g.n == n and len(components(g)) == x
    assert mu_q(g, 1).value == alpha1


def test_named_graphs():
    assert is_regular(petersen_graph()) == 3
    c7 = cycle_graph(7)
    assert is_regular(c7) == 2 and is_connected(c7)
    k33 = complete_bipartite(3, 3)
    assert is_regular(k33) == 3 and alpha_p_exact(k33, 0).value == 3
    assert named_graph("prism", 3).n == 6
    with pytest.raises(ValueError):
        named_graph("nope", 3)
    with pytest.raises(ValueError):
        named_graph("cycle")


def test_recipe_rebuilds():
    rec = ConstructionRecipe(Kind.SHARP_BIPARTITE, (3, 2, 1))
    assert rec.build() == sharpness_bipartite(3, 2, 1)
    assert rec.label() == "SharpBipartite(3,2,1)"
    assert ConstructionRecipe(Kind.NAMED, ("petersen",)).build() == petersen_graph()
