import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from folnerkit.assoc import (
    assoc_subgraph_bs,
    assoc_subgraph_lamp,
    check_bs_bounds,
    corollary_quotient,
    dump_graph,
    e_formula,
    graph_orbit_count,
    induced_edges,
    interval_edges,
    lamp_inequality,
    leaves,
    interval_bound_spot_check,
    orbit_count,
)
from folnerkit.boundary import FiniteSubset
from folnerkit.groups import DomainError, GroupModel, LampElement, lamps, normalize_config
from folnerkit.hypercube import HammingSubset, hamming_edge_count
from folnerkit.sampling import random_bs_low_ratio_set, random_lamp_set
from folnerkit.standard import standard_set_bs, standard_set_lamp


def test_graph_of_pair():
    m = GroupModel.lamplighter(2)
    F = FiniteSubset.of(m, [m.identity, LampElement(1, normalize_config(0, []))])
    G = assoc_subgraph_lamp(F)
    G.check()
    assert dump_graph(G) == "- -> 0:1\n- -> 1:1\n"
    assert leaves(G) == {lamps(0), lamps(1)}
    r = lamp_inequality(F)
    assert r == {"outer": 4, "vertices": 3, "leaves": 2, "rhs": 4, "holds": True}


@pytest.mark.parametrize("d,n", [(2, 1), (2, 2), (2, 3), (3, 2), (4, 2)])
def test_standard_sets_tight(d, n):
    # outer boundary of F_n is 2 d^n, the associated graph has d^n vertices and no leaves
    r = lamp_inequality(standard_set_lamp(d, n))
    assert r["outer"] == r["rhs"] == 2 * d**n and r["leaves"] == 0


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_lamp_inequality_d2(seed):
    F = random_lamp_set(GroupModel.lamplighter(2), 30, random.Random(seed))
    assert lamp_inequality(F)["holds"]


@pytest.mark.parametrize("d,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_standard_graph_is_doubled_hamming_graph(d, n):
    F = standard_set_lamp(d, n)
    G = assoc_subgraph_lamp(F)
    assert all((v, u) in G.edges for u, v in G.edges)
    pos = list(range(1, n + 1))
    words = frozenset(tuple(c.get(i) for i in pos) for c in G.vertices)
    H = HammingSubset(n, d, words)
    assert len(words) == d**n and 2 * hamming_edge_count(H) == len(G.edges) == n * (d - 1) * d**n
    assert Fraction(2 * len(G.vertices), len(F)) == Fraction(2, n)


def test_lamp_inequality_fails_for_d3():
    m = GroupModel.lamplighter(3)
    F = FiniteSubset.of(m, [m.identity, LampElement(0, lamps(0))])
    r = lamp_inequality(F)
    # the two configurations and the third state at 0 form a triangle: 3 vertices, no leaves
    assert (r["outer"], r["vertices"], r["leaves"], r["rhs"]) == (5, 3, 0, 6)
    assert not r["holds"]


def test_bs_graph_of_standard():
    F = standard_set_bs(2, 2)
    G = assoc_subgraph_bs(F)
    assert len(G.edges) == 2 * len(F)
    assert len(G.edges) == len(G.one_way) + 2 * len(G.undirected)
    assert dump_graph(G, undirected=True).splitlines()[:2] == ["0 -- 1", "0 -- 2"]
    with pytest.raises(DomainError):
        assoc_subgraph_bs(standard_set_lamp(2, 1))
    with pytest.raises(DomainError):
        assoc_subgraph_lamp(F)


def test_e_formula():
    assert [e_formula(n) for n in range(1, 9)] == [0, 1, 3, 5, 8, 11, 14, 17]
    assert all(e_formula(n) == interval_edges(n) for n in range(1, 300))
    with pytest.raises(DomainError):
        e_formula(0)


@given(st.integers(1, 200))
def test_interval_orbits(n):
    assert orbit_count(range(1, n + 1)).total == n - 1
    assert induced_edges(range(1, n + 1)) == e_formula(n)


def test_orbit_examples():
    assert orbit_count([1, 3, 9]).total == 2
    assert orbit_count([Fraction(1, 2), Fraction(3, 2)]).total == 1
    assert graph_orbit_count([(1, 2), (2, 3), (1, 3)]).per_step == {0: 1, 1: 1}


def test_edge_run_orbits_break_edge_bound():
    # path 1-2-3: one run of step-1 edges, |V| + o = 4 = 2n with n = 2, and e(2) = 1 < 2 edges
    o = graph_orbit_count([(1, 2), (2, 3)]).total
    assert o == 1 and 2 > e_formula((3 + o + 1) // 2)


def test_corollary_quotient():
    assert corollary_quotient(1) == (Fraction(1), True)
    assert corollary_quotient(2) == (Fraction(3, 2), False)


def test_bs_bounds_standard():
    r = check_bs_bounds(standard_set_bs(2, 5))
    assert r["hypothesis"] and r["edge_identity"]
    assert r["holds"] and r["holds_edge_runs"]
    assert check_bs_bounds(standard_set_bs(2, 1))["holds"] is None


def test_bs_bounds_conventions_differ():
    rng = random.Random(11)
    reps = [check_bs_bounds(random_bs_low_ratio_set(2, rng)) for _ in range(200)]
    assert all(r["hypothesis"] and r["edge_identity"] for r in reps)
    assert all(r["holds_edge_runs"] for r in reps)
    assert any(not r["holds"] for r in reps)


def test_interval_bound_small():
    res = interval_bound_spot_check(universe=8, max_size=4)
    assert res["vertex_sets"] == sum(math.comb(8, k) for k in range(1, 5))
    assert not res["violations"]
    assert ((1, 2, 3), 2, 1) in res["edge_run_violations"]
