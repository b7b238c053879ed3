"""Edge isoperimetry in binary hypercubes and d-ary Hamming graphs."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .groups import DomainError

DEFAULT_SUBSET_BUDGET = 1 << 22


@dataclass(frozen=True)
class HammingSubset:
    m: int
    d: int
    words: frozenset

    def __post_init__(self):
        for w in self.words:
            if len(w) != self.m or any(not 0 <= s < self.d for s in w):
                raise DomainError(f"bad word {w!r} for d={self.d}, m={self.m}")

    def __len__(self) -> int:
        return len(self.words)


def all_words(d: int, m: int) -> list[tuple]:
    return list(itertools.product(range(d), repeat=m))


def hamming_edge_count(S: HammingSubset) -> int:
    """Unordered pairs in S differing in exactly one coordinate."""
    words = S.words
    total = 0
    for w in words:
        for i in range(S.m):
            for s in range(w[i] + 1, S.d):
                if w[:i] + (s,) + w[i + 1 :] in words:
                    total += 1
    return total


def cubal_set(k: int, m: int) -> HammingSubset:
    """The first k binary words in counting order (most significant bit first).

    Blocks follow the binary expansion of k: a 2^c-block is a c-subcube, and
    each later (smaller) block differs from the matching part of every earlier
    block in one bit, so it lies in that block's neighbourhood."""
    if not 0 <= k <= 2**m:
        raise DomainError(f"need 0 <= k <= 2^{m}")
    return HammingSubset(m, 2, frozenset(tuple((i >> (m - 1 - j)) & 1 for j in range(m)) for i in range(k)))


def _subcubes(m: int) -> dict:
    """dimension -> list of bitmasks over the 2^m vertices (vertex = int)."""
    out: dict = {c: [] for c in range(m + 1)}
    for pattern in itertools.product((0, 1, None), repeat=m):
        free = [i for i, v in enumerate(pattern) if v is None]
        base = sum(1 << i for i, v in enumerate(pattern) if v == 1)
        mask = 0
        for bits in itertools.product((0, 1), repeat=len(free)):
            mask |= 1 << (base + sum(b << i for b, i in zip(bits, free)))
        out[len(free)].append(mask)
    return out


def _neighbourhood(mask: int, m: int) -> int:
    out = mask
    for v in range(2**m):
        if mask >> v & 1:
            for i in range(m):
                out |= 1 << (v ^ (1 << i))
    return out


def _word_index(w: tuple) -> int:
    return sum(b << i for i, b in enumerate(w))


def is_cubal(S: HammingSubset) -> bool:
    """Whether S splits into subcubes of dimensions given by the binary digits
    of |S|, each smaller one inside the neighbourhood of every larger one."""
    if S.d != 2:
        raise DomainError("cubal sets live in the binary cube")
    m = S.m
    target = 0
    for w in S.words:
        target |= 1 << _word_index(w)
    dims = [c for c in range(m, -1, -1) if len(S) >> c & 1]
    cubes = _subcubes(m)

    def rec(rest: int, j: int, hood: int) -> bool:
        if j == len(dims):
            return rest == 0
        for c in cubes[dims[j]]:
            if c & rest == c and c & hood == c:
                if rec(rest & ~c, j + 1, hood & _neighbourhood(c, m)):
                    return True
        return False

    return rec(target, 0, (1 << 2**m) - 1)


# -- exhaustive maximum ------------------------------------------------------------


def _edges(d: int, m: int) -> list[tuple[int, int]]:
    words = all_words(d, m)
    index = {w: i for i, w in enumerate(words)}
    out = []
    for w in words:
        for i in range(m):
            for s in range(w[i] + 1, d):
                out.append((index[w], index[w[:i] + (s,) + w[i + 1 :]]))
    return out


def automorphisms(d: int, m: int) -> list[tuple]:
    """Vertex permutations from coordinate permutations and per-coordinate
    symbol permutations."""
    words = all_words(d, m)
    index = {w: i for i, w in enumerate(words)}
    out = []
    for cperm in itertools.permutations(range(m)):
        for sperms in itertools.product(list(itertools.permutations(range(d))), repeat=m):
            out.append(tuple(index[tuple(sperms[j][w[cperm[j]]] for j in range(m))] for w in words))
    return out


def _apply(perm: tuple, mask: int) -> int:
    out = 0
    for v, img in enumerate(perm):
        if mask >> v & 1:
            out |= 1 << img
    return out


def edge_counts_all(d: int, m: int, budget: int = DEFAULT_SUBSET_BUDGET) -> tuple[np.ndarray, np.ndarray]:
    """(popcount, induced edge count) for every subset mask of the d^m vertices."""
    n = d**m
    if 2**n > budget:
        raise DomainError(f"2^{n} subsets exceed the budget {budget}")
    masks = np.arange(2**n, dtype=np.int64)
    bits = [(masks >> v) & 1 for v in range(n)]
    pop = np.sum(bits, axis=0)
    edges = np.zeros(2**n, dtype=np.int64)
    for u, v in _edges(d, m):
        edges += bits[u] & bits[v]
    return pop, edges


def brute_force_max_edges(v_count: int, d: int, m: int, budget: int = DEFAULT_SUBSET_BUDGET) -> tuple[int, list]:
    """Maximum induced edge count over all v_count-subsets and every maximiser
    up to Hamming-graph automorphism (as sorted word tuples)."""
    n = d**m
    if not 1 <= v_count <= n:
        raise DomainError(f"need 1 <= V <= {n}")
    pop, edges = edge_counts_all(d, m, budget)
    sel = np.flatnonzero(pop == v_count)
    best = int(edges[sel].max())
    maxers = [int(x) for x in sel[edges[sel] == best]]
    return best, [_mask_words(x, d, m) for x in _orbit_reps(maxers, d, m)]


def all_maximisers(v_count: int, d: int, m: int, budget: int = DEFAULT_SUBSET_BUDGET) -> list[HammingSubset]:
    pop, edges = edge_counts_all(d, m, budget)
    sel = np.flatnonzero(pop == v_count)
    best = edges[sel].max()
    return [HammingSubset(m, d, frozenset(_mask_words(int(x), d, m))) for x in sel[edges[sel] == best]]


def _orbit_reps(masks: list[int], d: int, m: int) -> list[int]:
    perms = automorphisms(d, m)
    return sorted({min(_apply(p, x) for p in perms) for x in masks})


def _mask_words(mask: int, d: int, m: int) -> tuple:
    words = all_words(d, m)
    return tuple(w for i, w in enumerate(words) if mask >> i & 1)


# -- the d-ary bound -----------------------------------------------------------------


def edge_bound(V: int, d: int) -> float:
    """(d - 1)/2 * V * log_d V."""
    if V < 1 or d < 2:
        raise DomainError("need V >= 1 and d >= 2")
    return (d - 1) / 2 * V * math.log(V, d)


def exact_log(V: int, d: int) -> int | None:
    """log_d V when V is a power of d."""
    k, x = 0, 1
    while x < V:
        x *= d
        k += 1
    return k if x == V else None


def compare_to_bound(edges: int, V: int, d: int, slack: float = 1e-9) -> str:
    """'equal', 'below' or 'above'; exact when V is a power of d."""
    k = exact_log(V, d)
    if k is not None:
        b = Fraction((d - 1) * V * k, 2)
        return "equal" if edges == b else ("below" if edges < b else "above")
    b = edge_bound(V, d)
    if edges > b + slack:
        return "above"
    return "below" if edges < b - slack else "equal"


# -- the KKT objective ---------------------------------------------------------------


def kkt_objective(v, d: int) -> float:
    """sum C v_i ln v_i + sum_{i<j} min(v_i, v_j), C = (d - 1)/(2 ln d)."""
    v = np.asarray(v, dtype=float)
    if v.shape != (d,):
        raise DomainError(f"need {d} entries")
    if (v < 0).any() or abs(v.sum() - 1) > 1e-12:
        raise DomainError("entries must be non-negative and sum to 1")
    C = (d - 1) / (2 * math.log(d))
    ent = sum(x * math.log(x) for x in v if x > 0)
    mins = sum(min(a, b) for a, b in itertools.combinations(v, 2))
    return C * ent + mins


def _compositions(N: int, d: int, lo: int) -> np.ndarray:
    """All integer vectors of length d, entries >= lo, summing to N."""
    rows = [c for c in itertools.combinations(range(N - d * lo + d - 1), d - 1)]
    if not rows:
        return np.zeros((0, d), dtype=np.int64)
    bars = np.array(rows, dtype=np.int64).reshape(len(rows), d - 1)
    ext = np.hstack([np.full((len(rows), 1), -1), bars, np.full((len(rows), 1), N - d * lo + d - 1)])
    return np.diff(ext, axis=1) - 1 + lo


def _objective_rows(P: np.ndarray, d: int) -> np.ndarray:
    C = (d - 1) / (2 * math.log(d))
    with np.errstate(divide="ignore", invalid="ignore"):
        ent = np.where(P > 0, P * np.log(np.where(P > 0, P, 1)), 0.0).sum(axis=1)
    srt = np.sort(P, axis=1)
    mins = (srt * (d - 1 - np.arange(d))).sum(axis=1)
    return C * ent + mins


def kkt_grid_check(d: int, step: float) -> dict:
    """Evaluate f on the simplex grid of the given step.

    The open simplex (every v_i >= step) is the domain where the logarithms
    in the argument make sense; there the maximum must sit next to the
    uniform point.  The closed simplex is reported too: its vertices, where
    only one part is non-empty, also give f = 0."""
    if not 2 <= d <= 6 or step < 1e-3:
        raise DomainError("need 2 <= d <= 6 and step >= 1e-3")
    N = round(1 / step)
    if abs(N * step - 1) > 1e-9:
        raise DomainError("1/step must be an integer")
    uniform = np.full(d, 1 / d)

    def scan(lo: int) -> dict:
        grid = _compositions(N, d, lo)
        P = grid / N
        f = _objective_rows(P, d)
        top = f.max()
        # lexicographically least argmax for a schedule-free answer
        idx = int(np.flatnonzero(f == top)[0])
        near = f > -1e-6
        dist = np.abs(P[near] - uniform).max(axis=1) if near.any() else np.zeros(0)
        return {
            "points": len(P),
            "max": float(top),
            "argmax": [float(x) for x in P[idx]],
            "argmax_distance": float(np.abs(P[idx] - uniform).max()),
            "near_zero_points": int(near.sum()),
            "near_zero_max_distance": float(dist.max()) if len(dist) else 0.0,
        }

    inner = scan(1)
    closed = scan(0)
    ok = (
        inner["max"] <= 1e-9
        and inner["argmax_distance"] <= 2 * step + 1e-12
        and inner["near_zero_max_distance"] <= 2 * step + 1e-12
        and closed["max"] <= 1e-9
    )
    return {"d": d, "step": step, "open": inner, "closed": closed, "holds": ok}


# -- cross-check tables ---------------------------------------------------------------


def harper_table(m: int = 4, budget: int = DEFAULT_SUBSET_BUDGET) -> list[dict]:
    pop, edges = edge_counts_all(2, m, budget)
    rows = []
    for k in range(1, 2**m + 1):
        sel = np.flatnonzero(pop == k)
        best = int(edges[sel].max())
        cub = hamming_edge_count(cubal_set(k, m))
        maxers = [int(x) for x in sel[edges[sel] == best]]
        all_cubal = all(is_cubal(HammingSubset(m, 2, frozenset(_mask_words(x, 2, m)))) for x in maxers)
        rows.append(
            {
                "k": k,
                "cubal_edges": cub,
                "max_edges": best,
                "maximisers": len(maxers),
                "match": cub == best,
                "maximisers_cubal": all_cubal,
            }
        )
    return rows


def hamming_bound_table(d: int = 3, m: int = 2, budget: int = DEFAULT_SUBSET_BUDGET) -> list[dict]:
    pop, edges = edge_counts_all(d, m, budget)
    rows = []
    for k in range(1, d**m + 1):
        best = int(edges[pop == k].max())
        rows.append({"k": k, "max_edges": best, "bound": edge_bound(k, d), "relation": compare_to_bound(best, k, d)})
    return rows
