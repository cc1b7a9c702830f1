import pytest

from conftest import complete_graph
from gonlab.budget import SearchBudget
from gonlab.divisor import Divisor
from gonlab.gonality import (
    GonalityBracket,
    GonalityCertificate,
    complement_divisor,
    exact_gonality,
    genus_bound_is_loose,
    genus_upper_bound,
    greedy_independent_set,
    independence_upper_bound,
    max_independent_set,
)
from gonlab.graph import Multigraph, named_graph
from gonlab.reduction import has_positive_rank
from oracles import brute_gonality


@pytest.mark.parametrize("name", ["path:3", "path:5", "path:7"])
def test_trees_have_gonality_one(name):
    result = exact_gonality(named_graph(name))
    assert isinstance(result, GonalityCertificate)
    assert result.value == 1
    assert result.exhaustive


def test_star_gonality_one():
    star = Multigraph.from_edges(6, [(0, v) for v in range(1, 6)])
    assert exact_gonality(star).value == 1


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_cycles_have_gonality_two(n):
    result = exact_gonality(named_graph(f"cycle:{n}"))
    assert result.value == 2
    assert result.cleared_degree == 1


def test_exact_gonality_matches_brute_force(corpus):
    small = [g for g in corpus if g.n <= 6][:8]
    assert small
    for g in small:
        result = exact_gonality(g)
        assert isinstance(result, GonalityCertificate)
        assert result.value == brute_gonality(g)


def test_certificate_witness_is_valid(corpus):
    for g in corpus[:15]:
        result = exact_gonality(g)
        assert isinstance(result, GonalityCertificate)
        assert result.witness.degree() == result.value
        assert has_positive_rank(result.witness)


def test_parallel_search_matches_serial():
    g = named_graph("cycle:6")
    serial = exact_gonality(g, threads=1)
    parallel = exact_gonality(g, threads=4)
    assert serial == parallel


def test_budget_exhaustion_returns_bracket(pappus):
    result = exact_gonality(pappus, SearchBudget(max_candidates=100))
    assert isinstance(result, GonalityBracket)
    assert result.lower >= 1
    assert result.upper == 9
    assert result.cleared_degree < result.lower


def test_max_degree_cap_returns_bracket():
    g = named_graph("cycle:6")
    result = exact_gonality(g, max_degree=1)
    assert isinstance(result, GonalityBracket)
    assert result.lower == 2
    assert result.cleared_degree == 1


def test_genus_upper_bound_values(pappus):
    assert genus_upper_bound(pappus) == 10
    assert genus_upper_bound(named_graph("path:5")) == 1
    assert not genus_bound_is_loose(named_graph("path:5"))


def test_genus_bound_loose_for_cycles():
    c4 = named_graph("cycle:4")
    assert genus_upper_bound(c4) == 1  # known-loose: the true gonality is 2
    assert genus_bound_is_loose(c4)
    assert exact_gonality(c4).value == 2


def test_independence_bound_complete_graph():
    k5 = complete_graph(5)
    assert independence_upper_bound(k5) == 4


def test_independence_bound_pappus(pappus):
    indep, exact = max_independent_set(pappus)
    assert exact
    assert len(indep) == 9
    assert independence_upper_bound(pappus) == 9


def test_bipartite_cubic_bound_is_genus_minus_one(pappus):
    # for bipartite 3-regular graphs: n - alpha = genus - 1
    from gonlab.graph import genus

    assert independence_upper_bound(pappus) == genus(pappus) - 1


def test_greedy_independent_set_is_independent(corpus):
    for g in corpus[:30]:
        s = greedy_independent_set(g)
        assert all(w not in s for v in s for w, _ in g.neighbors(v))


def test_max_independent_set_is_independent_and_maximal(corpus):
    for g in corpus[:20]:
        s, exact = max_independent_set(g)
        assert exact
        assert all(w not in s for v in s for w, _ in g.neighbors(v))
        assert len(s) >= len(greedy_independent_set(g))


def test_complement_divisor_has_positive_rank(corpus, pappus):
    for g in corpus[:20] + [pappus]:
        indep, _ = max_independent_set(g)
        assert has_positive_rank(complement_divisor(g, indep))


def test_complement_divisor_weighted_for_parallel_edges():
    """With one chip per non-independent vertex the divisor fails positive
    rank on this multigraph (frozen from the lattice oracle); the
    multiplicity-weighted version restores it."""
    g = Multigraph(4, ((0, 2, 1), (0, 3, 2), (1, 2, 2), (1, 3, 1)))
    indep = frozenset({0, 1})
    assert not has_positive_rank(Divisor(g, (0, 0, 1, 1)))
    weighted = complement_divisor(g, indep)
    assert weighted.chips == (0, 0, 2, 2)
    assert has_positive_rank(weighted)
    assert exact_gonality(g).value <= independence_upper_bound(g)


def test_banana_graph_bounds():
    """Two vertices with parallel edges: gonality 2, so the unweighted
    n - alpha = 1 would be wrong; the weighted bound stays valid."""
    banana = Multigraph.from_edges(2, [(0, 1)] * 4)
    assert exact_gonality(banana).value == 2
    assert independence_upper_bound(banana) == 4
    assert genus_upper_bound(banana) == 3


def test_single_vertex_graph():
    g = named_graph("path:1")
    result = exact_gonality(g)
    assert result.value == 1
    assert independence_upper_bound(g) == 1


def test_sandwich_on_certificates(corpus):
    """Certified gonality sits between 1 and the valid upper bounds."""
    for g in corpus[:25]:
        result = exact_gonality(g)
        assert isinstance(result, GonalityCertificate)
        upper = independence_upper_bound(g)
        if not genus_bound_is_loose(g):
            upper = min(upper, genus_upper_bound(g))
        assert 1 <= result.value <= upper


def test_disconnected_rejected():
    g = Multigraph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        exact_gonality(g)
