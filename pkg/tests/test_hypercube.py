import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from folnerkit.groups import DomainError
from folnerkit.hypercube import (
    HammingSubset,
    all_maximisers,
    automorphisms,
    brute_force_max_edges,
    compare_to_bound,
    cubal_set,
    edge_bound,
    hamming_bound_table,
    hamming_edge_count,
    harper_table,
    is_cubal,
    kkt_grid_check,
    kkt_objective,
)


@given(st.integers(0, 64))
def test_cubal_edges_equal_popcount_sum(k):
    # the initial segment {0..k-1} of Q_6 has sum_{j<k} popcount(j) edges
    assert hamming_edge_count(cubal_set(k, 6)) == sum(bin(j).count("1") for j in range(k))


def test_cubal_is_cubal():
    for k in range(17):
        assert is_cubal(cubal_set(k, 4))


def test_non_cubal_example():
    # two antipodal points of Q_2 are not a subcube
    S = HammingSubset(2, 2, frozenset({(0, 0), (1, 1)}))
    assert not is_cubal(S) and hamming_edge_count(S) == 0


def test_brute_force_small_cube():
    # Q_3 maxima computed by direct enumeration of all subsets
    words = list(itertools.product((0, 1), repeat=3))
    for k in range(1, 9):
        naive = max(
            hamming_edge_count(HammingSubset(3, 2, frozenset(c))) for c in itertools.combinations(words, k)
        )
        assert brute_force_max_edges(k, 2, 3)[0] == naive


def test_automorphism_counts():
    assert len(automorphisms(2, 4)) == 2**4 * math.factorial(4)
    assert len(automorphisms(3, 2)) == math.factorial(3) ** 2 * 2


def test_harper_q4():
    rows = harper_table(4)
    assert len(rows) == 16 and all(r["match"] and r["maximisers_cubal"] for r in rows)
    assert all(is_cubal(S) for S in all_maximisers(6, 2, 4))


def test_hamming_bound():
    rows = hamming_bound_table(3, 2)
    assert [r["k"] for r in rows if r["relation"] == "equal"] == [1, 3, 9]
    assert all(r["relation"] != "above" for r in rows)
    assert compare_to_bound(18, 9, 3) == "equal" and compare_to_bound(19, 9, 3) == "above"
    assert abs(edge_bound(9, 3) - 18) < 1e-12


def test_kkt():
    assert kkt_objective([0.5, 0.5], 2) == pytest.approx(0.0, abs=1e-15)
    assert kkt_objective([1, 0, 0], 3) == 0
    assert kkt_objective([0.6, 0.4], 2) < 0
    with pytest.raises(DomainError):
        kkt_objective([0.5, 0.6], 2)
    r = kkt_grid_check(3, 0.02)
    assert r["holds"] and r["open"]["argmax_distance"] <= 0.04


@given(st.lists(st.floats(0.01, 1), min_size=3, max_size=3))
def test_kkt_nonpositive(raw):
    v = np.array(raw) / sum(raw)
    v[-1] = 1 - v[:-1].sum()
    assert kkt_objective(v, 3) <= 1e-12


def test_domain_errors():
    with pytest.raises(DomainError):
        cubal_set(17, 4)
    with pytest.raises(DomainError):
        HammingSubset(2, 2, frozenset({(0, 2)}))
    with pytest.raises(DomainError):
        kkt_grid_check(3, 0.03)
