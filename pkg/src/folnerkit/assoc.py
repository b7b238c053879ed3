"""Associated graphs on lamp configurations and on BS(1,p) translations.

For a lamplighter set F each element (k, f) contributes the d - 1 directed
edges f -> f' where f' differs from f exactly at k.  For BS(1,p) an element
(k, f) contributes f -> f + p^k and f -> f - p^k.  Pairs of opposite edges in
the BS graph form the undirected reduction; the remaining one-way edges are
the set L.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .boundary import FiniteSubset, boundaries, outer_boundary
from .groups import (
    DomainError,
    LampConfig,
    PadicRational,
    _DIGITS,
    config_bump,
    padic,
    padic_add,
    padic_neg,
    padic_power,
)


@dataclass
class AssocSubgraph:
    vertices: set
    edges: set  # ordered pairs
    undirected: set = field(default_factory=set)  # frozensets {u, v}
    one_way: set = field(default_factory=set)  # ordered pairs without reverse

    @property
    def reduced_vertices(self) -> set:
        out = set()
        for e in self.undirected:
            out |= e
        return out

    def check(self) -> None:
        for u, v in self.edges:
            if u not in self.vertices or v not in self.vertices:
                raise AssertionError(f"edge endpoint missing: {u!r} -> {v!r}")


def format_config(f: LampConfig) -> str:
    if not f.word:
        return "-"
    return f"{f.offset}:" + "".join(_DIGITS[s] for s in f.word)


def format_vertex(v) -> str:
    if isinstance(v, LampConfig):
        return format_config(v)
    if isinstance(v, PadicRational):
        return str(v.as_fraction())
    return str(v)


def dump_graph(G: AssocSubgraph, undirected: bool = False) -> str:
    """One edge per line, ``u -> v`` (directed) or ``u -- v`` (reduction)."""
    if undirected:
        rows = sorted(tuple(sorted((format_vertex(x) for x in e))) for e in G.undirected)
        return "".join(f"{u} -- {v}\n" for u, v in rows)
    rows = sorted((format_vertex(u), format_vertex(v)) for u, v in G.edges)
    return "".join(f"{u} -> {v}\n" for u, v in rows)


# -- lamplighter -----------------------------------------------------------------


def assoc_subgraph_lamp(F: FiniteSubset) -> AssocSubgraph:
    model = F.model
    if model.kind != "lamp":
        raise DomainError("needs a lamplighter model with the S_D generators")
    d = model.order
    verts, edges = set(), set()
    for x in F.elements:
        verts.add(x.config)
        for i in range(1, d):
            g = config_bump(x.config, x.pos, i, d)
            verts.add(g)
            edges.add((x.config, g))
    return AssocSubgraph(verts, edges)


def leaves(G: AssocSubgraph) -> set:
    """Vertices on exactly one edge, that edge pointing into them."""
    indeg: dict = {}
    outdeg: dict = {}
    for u, v in G.edges:
        outdeg[u] = outdeg.get(u, 0) + 1
        indeg[v] = indeg.get(v, 0) + 1
    return {v for v in G.vertices if indeg.get(v, 0) == 1 and outdeg.get(v, 0) == 0}


def lamp_inequality(F: FiniteSubset) -> dict:
    G = assoc_subgraph_lamp(F)
    outer = len(outer_boundary(F))
    rhs = 2 * len(G.vertices) - len(leaves(G))
    return {"outer": outer, "vertices": len(G.vertices), "leaves": len(leaves(G)), "rhs": rhs, "holds": outer >= rhs}


def check_lamp_inequality(F: FiniteSubset) -> bool:
    """|outer boundary of F| >= 2|V| - |L| for the associated subgraph."""
    return lamp_inequality(F)["holds"]


# -- Baumslag-Solitar ------------------------------------------------------------


def assoc_subgraph_bs(F: FiniteSubset) -> AssocSubgraph:
    if F.model.kind != "bs":
        raise DomainError("needs a BS(1,p) model")
    p = F.model.order
    verts, edges = set(), set()
    for x in F.elements:
        f = x.translation
        step = padic_power(p, x.level)
        up, down = padic_add(f, step), padic_add(f, padic_neg(step))
        verts.update((f, up, down))
        edges.add((f, up))
        edges.add((f, down))
    und, one = set(), set()
    for u, v in edges:
        if (v, u) in edges:
            und.add(frozenset((u, v)))
        else:
            one.add((u, v))
    return AssocSubgraph(verts, edges, und, one)


@dataclass
class OrbitCount:
    per_step: dict  # exponent i -> number of chains of length >= 2 with step p^i
    total: int


def _normalize(values, p: int) -> list[int]:
    """Translate the minimum to 0, clear denominators, divide out common p-powers."""
    values = list(values)
    table = _normalizer(values, p)
    return [table[v] for v in values]


def _normalizer(values, p: int) -> dict:
    """Map each value to its image under the normalisation of _normalize."""
    values = list(values)
    fr = [v.as_fraction() if isinstance(v, PadicRational) else Fraction(v) for v in values]
    if not fr:
        return {}
    lo = min(fr)
    shifted = [x - lo for x in fr]
    den = 1
    for x in shifted:
        while den % x.denominator:
            den *= p
    ints = [int(x * den) for x in shifted]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    while g and g % p == 0:
        ints = [v // p for v in ints]
        g //= p
    return dict(zip(values, ints))


def orbit_count(vertices, p: int = 2) -> OrbitCount:
    """Chains of step p^i (maximal, length >= 2) in the vertex set, all i >= 0."""
    ints = _normalize(vertices, p)
    s = set(ints)
    span = max(ints) - min(ints) if ints else 0
    per = {}
    i, step = 0, 1
    while step <= span:
        c = sum(1 for v in s if v - step not in s and v + step in s)
        if c:
            per[i] = c
        i += 1
        step *= p
    return OrbitCount(per, sum(per.values()))


def graph_orbit_count(edges, p: int = 2) -> OrbitCount:
    """Orbits of a subgraph: for each step p^i, the connected components of
    its step-p^i edges (each a run f, f + p^i, ..., g of edges)."""
    edges = [tuple(e) for e in edges]
    table = _normalizer({v for e in edges for v in e}, p)
    by_step: dict = {}
    for u, v in edges:
        a, b = sorted((table[u], table[v]))
        by_step.setdefault(b - a, []).append(a)
    per = {}
    for step, starts in by_step.items():
        i = 0
        while p**i < step:
            i += 1
        if p**i != step:
            raise DomainError(f"edge step {step} is not a power of {p}")
        s = set(starts)
        # a run starts at an edge start a whose predecessor a - step is not a start
        per[i] = sum(1 for a in s if a - step not in s)
    return OrbitCount(dict(sorted(per.items())), sum(per.values()))


def interval_edges(n: int, p: int = 2) -> int:
    """Pairs in [1, n] whose difference is a power of p (brute force)."""
    total = 0
    step = 1
    while step < n:
        total += n - step
        step *= p
    return total


def e_formula(n: int) -> int:
    """k n - 2^k + 1 with 2^(k-1) < n <= 2^k."""
    if n < 1:
        raise DomainError("n must be >= 1")
    k = (n - 1).bit_length()
    return k * n - 2**k + 1


def induced_edges(vertices, p: int = 2) -> int:
    """Pairs of the vertex set at distance a power of p."""
    ints = _normalize(vertices, p)
    s = set(ints)
    span = max(ints) - min(ints) if ints else 0
    total, step = 0, 1
    while step <= span:
        total += sum(1 for v in s if v + step in s)
        step *= p
    return total


def bs_edge_counts(F: FiniteSubset) -> tuple[int, int]:
    from .standard import bs_edge_split

    return bs_edge_split(F)


def check_bs_bounds(F: FiniteSubset) -> dict:
    """Check the orbit bounds and the a-edge bound on the undirected reduction.

    Orbits are counted two ways: as vertex chains of the reduction's vertex
    set (``orbit_count``; the headline ``holds``) and as runs of same-step
    edges of the reduction (``graph_orbit_count``; ``holds_edge_runs``).
    Only meaningful when the edge ratio is at most 1; otherwise the report
    says the hypothesis is not met.
    """
    rep = boundaries(F)
    ratio = rep.edge_ratio
    out = {"size": len(F), "edge": rep.edge_size, "ratio": ratio, "hypothesis": ratio <= 1}
    if ratio > 1:
        out["holds"] = out["holds_edge_runs"] = None
        return out
    p = F.model.order
    G = assoc_subgraph_bs(F)
    V = len(G.reduced_vertices)
    E = len(G.undirected)
    na, _ = bs_edge_counts(F)

    def bounds(o: int) -> dict:
        rb = ratio >= Fraction(2 * (V + o), E + o) if E + o else True
        return {"orbits": o, "size_bound": len(F) >= E + o, "ratio_bound": rb, "one_way_ge_2o": len(G.one_way) >= 2 * o}

    vert = bounds(orbit_count(G.reduced_vertices, p).total)
    runs = bounds(graph_orbit_count(G.undirected, p).total)
    a_bound = na >= 2 * V
    out.update(
        {
            "reduced_vertices": V,
            "reduced_edges": E,
            "one_way": len(G.one_way),
            "directed_edges": len(G.edges),
            "edge_identity": len(G.edges) == len(G.one_way) + 2 * E and len(G.edges) == 2 * len(F),
            "a_edge_bound": a_bound,
            "vertex_chains": vert,
            "edge_runs": runs,
            "holds": vert["size_bound"] and vert["ratio_bound"] and a_bound,
            "holds_edge_runs": runs["size_bound"] and runs["ratio_bound"] and a_bound,
        }
    )
    return out


def corollary_quotient(n: int) -> tuple[Fraction, bool]:
    """(2n - 1)/(e(n) + n - 1) and a flag set when the denominator vanishes."""
    den = e_formula(n) + n - 1
    if den == 0:
        return Fraction(1), True
    return Fraction(2 * n - 1, den), False


def _step_profiles(edges: list[int], step: int) -> set:
    """Achievable (edge count, run count) over all subsets of the step-class
    edges, each edge given by its smaller endpoint."""
    out = set()
    for mask in range(1 << len(edges)):
        chosen = {a for j, a in enumerate(edges) if mask >> j & 1}
        runs = sum(1 for a in chosen if a - step not in chosen)
        out.add((len(chosen), runs))
    return out


def interval_bound_spot_check(universe: int = 12, max_size: int = 6, p: int = 2) -> dict:
    """Every subgraph G of the power-of-p difference graph whose vertex set is
    a subset of [1, universe] of size <= max_size: is |E(G)| <= e(n) where
    |V(G)| + o(G) is 2n - 1 or 2n?

    ``violations`` counts orbits as vertex chains, so o depends on V only and
    the induced graph is the worst case.  ``edge_run_violations`` counts
    orbits as runs of same-step edges; edge subsets are then handled per step
    class, as edge and orbit counts both add over classes."""
    vertex_sets = profiles_seen = 0
    bad, bad_runs = [], []
    for k in range(1, max_size + 1):
        for V in combinations(range(1, universe + 1), k):
            vs = set(V)
            o = orbit_count(V, p).total
            E = induced_edges(V, p)
            if E > e_formula((k + o + 1) // 2):
                bad.append((V, E, o))
            profiles = {(0, 0)}
            step = 1
            while step < universe:
                cls = [a for a in V if a + step in vs]
                if cls:
                    prof = _step_profiles(cls, step)
                    profiles = {(e1 + e2, o1 + o2) for e1, o1 in profiles for e2, o2 in prof}
                step *= p
            vertex_sets += 1
            profiles_seen += len(profiles)
            for Eg, og in profiles:
                if Eg > e_formula((k + og + 1) // 2):
                    bad_runs.append((V, Eg, og))
    return {"vertex_sets": vertex_sets, "profiles": profiles_seen, "violations": bad, "edge_run_violations": bad_runs}
