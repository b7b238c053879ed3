"""Branch-and-bound oracle for minimal boundary ratios on small sets.

Sets are enumerated up to left translation.  Every set is translated so that
it contains the identity; a set is generated once per identity-containing
translate by an include/exclude scheme over the vertices "linked" to the
current set, and a canonical-form check keeps one representative per class.

Completeness rests on how each boundary splits over pieces of a set:

* edge and inner boundaries are additive over Cayley-connected components;
* outer boundaries are additive over pieces at mutual distance >= 3.

So enumerating sets that are connected in the distance-r graph (r = 1 for
edge/inner, r = 2 for outer) reaches, for every size s, the minimum of the
ratio over all sets of size <= s.  That is the ``exhaustive`` mode.  The
``connected`` mode always uses r = 1, which is only an oracle for the edge
and inner kinds.  The ``ball`` mode scans every subset of an ambient ball and
exists to cross-check the other two on tiny instances.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator

from .boundary import FiniteSubset, boundaries, closure, frac_str
from .groups import DomainError, Element, GroupModel, element_key

KINDS = ("inner", "outer", "edge")
MODES = ("connected", "exhaustive", "ball")
DEFAULT_WORK_BUDGET = 5 * 10**8


class SearchBudgetExceeded(RuntimeError):
    """Raised when a search runs out of node budget; carries partial state."""

    def __init__(self, message: str, progress: dict):
        super().__init__(message)
        self.progress = progress


@dataclass(frozen=True)
class SearchProblem:
    model: GroupModel
    kind: str
    size_limit: int
    mode: str = "connected"
    ball_radius: int = 2
    work_budget: int = DEFAULT_WORK_BUDGET

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"kind must be one of {KINDS}")
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}")
        if self.size_limit < 0:
            raise DomainError("size_limit must be >= 0")

    @property
    def link_radius(self) -> int:
        if self.mode == "exhaustive" and self.kind == "outer":
            return 2
        return 1

    @property
    def is_oracle(self) -> bool:
        """Whether per-size minima are minima over all finite sets (see module doc)."""
        if self.mode == "exhaustive":
            return True
        if self.mode == "connected":
            return self.kind in ("edge", "inner")
        return False

    def describe(self) -> dict:
        d = {"model": self.model.spec, "kind": self.kind, "size_limit": self.size_limit, "mode": self.mode}
        if self.mode == "ball":
            d["ball_radius"] = self.ball_radius
        return d


@dataclass
class OptimalityReport:
    problem: dict
    oracle: bool
    best: dict = field(default_factory=dict)  # size -> Fraction
    witnesses: dict = field(default_factory=dict)  # size -> sorted list of canonical tuples
    nodes: int = 0

    def prefix_min(self, s: int) -> Fraction | None:
        vals = [self.best[t] for t in self.best if t <= s]
        return min(vals) if vals else None

    def optimal_sizes(self) -> list[int]:
        """Sizes s whose minimum is strictly below the minimum at every smaller size."""
        out = []
        for s in sorted(self.best):
            smaller = self.prefix_min(s - 1)
            if smaller is None or self.best[s] < smaller:
                out.append(s)
        return out

    def as_dict(self, model: GroupModel) -> dict:
        return {
            "problem": self.problem,
            "oracle": self.oracle,
            "sizes": [
                {
                    "size": s,
                    "min_ratio": frac_str(self.best[s]),
                    "witness_count": len(self.witnesses[s]),
                    "witnesses": [[model.format(x) for x in w] for w in self.witnesses[s]],
                    "strictly_below_smaller": s in self.optimal_sizes(),
                }
                for s in sorted(self.best)
            ],
        }

    def to_json(self, model: GroupModel) -> str:
        return json.dumps(self.as_dict(model), sort_keys=True, indent=1)


# ---------------------------------------------------------------------------
# canonical forms


def canonical_form(model: GroupModel, elements) -> tuple:
    """Lexicographically least sorted element list among the translates
    x^-1 F, x in F.  Constant on left-translation classes."""
    elems = list(elements)
    mul, inv = model.mul, model.inv
    best = None
    for x in elems:
        xi = inv(x)
        cand = tuple(sorted((mul(xi, y) for y in elems), key=element_key))
        key = [element_key(e) for e in cand]
        if best is None or key < best[0]:
            best = (key, cand)
    return best[1] if best else ()


def canonical(F: FiniteSubset) -> FiniteSubset:
    return FiniteSubset(frozenset(canonical_form(F.model, F.elements)), F.model)


# ---------------------------------------------------------------------------
# interned Cayley graph


class CayleyIndex:
    """Group elements interned to ints, adjacency computed on demand."""

    def __init__(self, model: GroupModel):
        self.model = model
        self.elems: list = []
        self.ids: dict = {}
        self._nbrs: list = []
        self._link2: list = []
        self.degree = len(model.neighbors(model.identity))

    def intern(self, x) -> int:
        i = self.ids.get(x)
        if i is None:
            i = len(self.elems)
            self.ids[x] = i
            self.elems.append(x)
            self._nbrs.append(None)
            self._link2.append(None)
        return i

    def nbrs(self, i: int) -> tuple:
        a = self._nbrs[i]
        if a is None:
            a = tuple(sorted(self.intern(y) for y in self.model.neighbors(self.elems[i])))
            self._nbrs[i] = a
        return a

    def link(self, i: int, radius: int) -> tuple:
        if radius == 1:
            return self.nbrs(i)
        a = self._link2[i]
        if a is None:
            s = set(self.nbrs(i))
            for j in self.nbrs(i):
                s.update(self.nbrs(j))
            s.discard(i)
            a = tuple(sorted(s))
            self._link2[i] = a
        return a


# ---------------------------------------------------------------------------
# the enumerator


class _Search:
    """Include/exclude enumeration of linked sets containing the root with
    incremental boundary bookkeeping for one boundary kind."""

    def __init__(self, problem: SearchProblem, idx: CayleyIndex, track: bool = True):
        self.p = problem
        self.idx = idx
        self.kind = problem.kind
        self.limit = problem.size_limit
        self.radius = problem.link_radius
        self.deg = idx.degree
        self.status: dict = {}  # 1 in set, 2 excluded; absent = undecided
        self.cS: dict = {}  # vertex -> number of neighbours in the set
        self.cX: dict = {}  # member -> excluded neighbours
        self.cU: dict = {}  # member -> undecided neighbours
        self.perm = 0
        self.open = 0
        # hist[c] = undecided vertices with exactly c neighbours in the set
        self.hist = [0] * (self.deg + 1)
        self.S: list = []
        self.best_num: dict = {}
        self.best_den: dict = {}
        self.witnesses: dict = {}
        self.nodes = 0
        self.track = track

    # -- bookkeeping ----------------------------------------------------------
    def add(self, w: int) -> None:
        st, cS = self.status, self.cS
        kind = self.kind
        nb = self.idx.nbrs(w)
        cw = cS.get(w, 0)
        hist = self.hist
        if cw:
            hist[cw] -= 1
        if kind == "edge":
            self.open -= cw
        elif kind == "outer":
            if cw:
                self.open -= 1
        st[w] = 1
        x = u = 0
        for y in nb:
            sy = st.get(y)
            c = cS.get(y, 0)
            cS[y] = c + 1
            if sy == 1:
                if kind == "inner":
                    cu = self.cU[y] - 1
                    self.cU[y] = cu
                    if cu == 0 and self.cX[y] == 0:
                        self.open -= 1
                continue
            if sy == 2:
                x += 1
            else:
                u += 1
                if c:
                    hist[c] -= 1
                hist[c + 1] += 1
            if kind == "edge":
                if sy == 2:
                    self.perm += 1
                else:
                    self.open += 1
            elif kind == "outer" and c == 0:
                if sy == 2:
                    self.perm += 1
                else:
                    self.open += 1
        if kind == "inner":
            self.cX[w] = x
            self.cU[w] = u
            if x:
                self.perm += 1
            elif u:
                self.open += 1
        self.S.append(w)

    def remove(self, w: int) -> None:
        st, cS = self.status, self.cS
        kind = self.kind
        self.S.pop()
        if kind == "inner":
            if self.cX[w]:
                self.perm -= 1
            elif self.cU[w]:
                self.open -= 1
            del self.cX[w], self.cU[w]
        hist = self.hist
        for y in self.idx.nbrs(w):
            sy = st.get(y)
            c = cS[y] - 1
            if c:
                cS[y] = c
            else:
                del cS[y]
            if sy is None:
                hist[c + 1] -= 1
                if c:
                    hist[c] += 1
            if sy == 1:
                if kind == "inner":
                    cu = self.cU[y]
                    if cu == 0 and self.cX[y] == 0:
                        self.open += 1
                    self.cU[y] = cu + 1
                continue
            if kind == "edge":
                if sy == 2:
                    self.perm -= 1
                else:
                    self.open -= 1
            elif kind == "outer" and c == 0:
                if sy == 2:
                    self.perm -= 1
                else:
                    self.open -= 1
        del st[w]
        cw = cS.get(w, 0)
        if cw:
            hist[cw] += 1
        if kind == "edge":
            self.open += cw
        elif kind == "outer" and cw:
            self.open += 1

    def exclude(self, u: int) -> None:
        self.status[u] = 2
        c = self.cS.get(u, 0)
        if not c:
            return
        self.hist[c] -= 1
        if self.kind == "edge":
            self.open -= c
            self.perm += c
        elif self.kind == "outer":
            self.open -= 1
            self.perm += 1
        else:
            st = self.status
            for m in self.idx.nbrs(u):
                if st.get(m) == 1:
                    self.cU[m] -= 1
                    x = self.cX[m]
                    self.cX[m] = x + 1
                    if x == 0:
                        self.open -= 1
                        self.perm += 1

    def unexclude(self, u: int) -> None:
        c = self.cS.get(u, 0)
        if c:
            self.hist[c] += 1
            if self.kind == "edge":
                self.open += c
                self.perm -= c
            elif self.kind == "outer":
                self.open += 1
                self.perm -= 1
            else:
                st = self.status
                for m in self.idx.nbrs(u):
                    if st.get(m) == 1:
                        self.cU[m] += 1
                        x = self.cX[m] - 1
                        self.cX[m] = x
                        if x == 0:
                            self.open += 1
                            self.perm -= 1
        del self.status[u]

    # -- bounds ----------------------------------------------------------------
    def absorb(self, k: int) -> int:
        """Largest total of set-neighbour counts over k undecided vertices.

        Adding a vertex w removes at most cS[w] open boundary edges, and at
        most cS[w] open members can have w as their missing neighbour."""
        total = 0
        hist = self.hist
        for c in range(self.deg, 0, -1):
            take = hist[c] if hist[c] < k else k
            total += take * c
            k -= take
            if not k:
                break
        return total

    def lower_bound(self, k: int) -> int:
        """Lower bound on the boundary of any extension by k more vertices."""
        if self.kind == "outer":
            return self.perm + max(0, self.open - k)
        return self.perm + max(0, self.open - self.absorb(k))

    def hopeless(self) -> bool:
        """True if no extension by >= 1 vertex can tie or beat the incumbents."""
        c = len(self.S)
        bn, bd = self.best_num, self.best_den
        for s in range(c + 1, self.limit + 1):
            if s not in bn:
                return False
            if self.lower_bound(s - c) * bd[s] <= bn[s] * s:
                return False
        return True

    # -- reporting -------------------------------------------------------------
    def record(self) -> None:
        s = len(self.S)
        b = self.perm + self.open
        bn, bd = self.best_num.get(s), self.best_den.get(s)
        if bn is not None and b * bd > bn * s:
            return
        if bn is None or b * bd < bn * s:
            self.best_num[s], self.best_den[s] = b, s
            self.witnesses[s] = set()
        if self.track:
            elems = self.idx.elems
            self.witnesses[s].add(canonical_form(self.idx.model, [elems[i] for i in self.S]))

    def seed(self, s: int, b: int) -> None:
        """Install an upper bound b/s attained by a known set of size s."""
        bn, bd = self.best_num.get(s), self.best_den.get(s)
        if bn is None or b * bd < bn * s:
            self.best_num[s], self.best_den[s] = b, s
            self.witnesses[s] = set()

    # -- recursion -------------------------------------------------------------
    def run_from(self, cands: list, budget: int) -> None:
        self.nodes += 1
        if self.nodes > budget:
            raise SearchBudgetExceeded("node budget exhausted", {})
        self.record()
        if len(self.S) >= self.limit:
            return
        status = self.status
        excluded = []
        inc = set(cands)
        try:
            for i, u in enumerate(cands):
                if self.hopeless():
                    break
                self.add(u)
                ext = list(cands[i + 1 :])
                for v in self.idx.link(u, self.radius):
                    if v not in status and v not in inc:
                        ext.append(v)
                        inc.add(v)
                self.run_from(ext, budget)
                for v in ext[len(cands) - i - 1 :]:
                    inc.discard(v)
                self.remove(u)
                self.exclude(u)
                excluded.append(u)
        finally:
            for u in reversed(excluded):
                self.unexclude(u)


def _root_candidates(idx: CayleyIndex, radius: int) -> list:
    root = idx.intern(idx.model.identity)
    return list(idx.link(root, radius))


def _run_task(problem: SearchProblem, task: int | None, seeds: dict, track: bool = True, budget: int | None = None):
    """task None: the root singleton only; task i: root plus candidate i with
    candidates 0..i-1 excluded.  ``budget`` caps the nodes of this task."""
    idx = CayleyIndex(problem.model)
    srch = _Search(problem, idx, track)
    for s, b in seeds.items():
        srch.seed(s, b)
    root = idx.intern(problem.model.identity)
    cands = _root_candidates(idx, problem.link_radius)
    srch.add(root)
    if task is None:
        srch.nodes += 1
        srch.record()
    elif problem.size_limit >= 2:
        for u in cands[:task]:
            srch.exclude(u)
        if not srch.hopeless():
            u = cands[task]
            srch.add(u)
            ext = list(cands[task + 1 :])
            inc = set(cands)
            for v in idx.link(u, problem.link_radius):
                if v not in srch.status and v not in inc:
                    ext.append(v)
                    inc.add(v)
            srch.run_from(ext, problem.work_budget if budget is None else budget)
    return {
        s: (srch.best_num[s], srch.best_den[s], sorted(srch.witnesses.get(s, ()), key=_wkey))
        for s in srch.best_num
    }, srch.nodes


def _wkey(w: tuple) -> list:
    return [element_key(x) for x in w]


def _merge(parts: list) -> tuple[dict, dict]:
    best: dict = {}
    wit: dict = {}
    for res in parts:
        for s, (num, den, ws) in res.items():
            q = Fraction(num, den)
            if s not in best or q < best[s]:
                best[s] = q
                wit[s] = set(ws)
            elif q == best[s]:
                wit[s].update(ws)
    return best, {s: sorted(wit[s], key=_wkey) for s in wit}


def _task_list(problem: SearchProblem) -> list:
    if problem.size_limit == 0:
        return []
    idx = CayleyIndex(problem.model)
    n = len(_root_candidates(idx, problem.link_radius)) if problem.size_limit >= 2 else 0
    return [None] + list(range(n))


def min_boundary_ratio(
    problem: SearchProblem,
    workers: int = 1,
    seed_sets: list[FiniteSubset] | None = None,
    progress_path: str | None = None,
) -> OptimalityReport:
    """Minimal ratio per cardinality with all canonical witnesses.

    ``seed_sets`` only provide initial incumbents (their ratios); witnesses are
    still collected by the search itself.  With ``progress_path`` completed
    top-level branches are written to a JSON file and skipped on rerun.
    """
    if problem.mode == "ball":
        return _ball_search(problem)
    seeds: dict = {}
    for F in seed_sets or ():
        s = len(F)
        if s <= problem.size_limit:
            b = getattr(boundaries(F), f"{problem.kind}_size")
            if s not in seeds or b < seeds[s]:
                seeds[s] = b
    tasks = _task_list(problem)
    state = _load_progress(progress_path, problem)
    parts, nodes = [], 0
    todo = []
    for t in tasks:
        key = "root" if t is None else str(t)
        if key in state["completed"]:
            parts.append(_decode_part(state["completed"][key], problem.model))
        else:
            todo.append(t)
    try:
        if workers > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=workers) as ex:
                futs = [(t, ex.submit(_run_task, problem, t, seeds)) for t in todo]
                for t, fut in futs:
                    res, n = fut.result()
                    nodes += n
                    parts.append(res)
                    _save_part(state, t, res, problem.model, progress_path)
                    if nodes > problem.work_budget:
                        for _, f in futs:
                            f.cancel()
                        raise SearchBudgetExceeded("node budget exhausted", {})
        else:
            for t in todo:
                res, n = _run_task(problem, t, seeds, budget=problem.work_budget - nodes)
                nodes += n
                parts.append(res)
                _save_part(state, t, res, problem.model, progress_path)
    except SearchBudgetExceeded as exc:
        raise SearchBudgetExceeded(str(exc), state) from None
    best, wit = _merge(parts)
    # seeded sizes are always re-found (ties are never pruned); drop sizes whose
    # witnesses were discarded because a seed undercut them.
    for s in [s for s in best if not wit.get(s)]:
        del best[s]
        wit.pop(s, None)
    return OptimalityReport(problem.describe(), problem.is_oracle, best, wit, nodes)


def _load_progress(path: str | None, problem: SearchProblem) -> dict:
    state = {"problem": problem.describe(), "completed": {}}
    if path and os.path.exists(path):
        with open(path) as fh:
            saved = json.load(fh)
        if saved.get("problem") != state["problem"]:
            raise DomainError("progress file belongs to a different problem")
        state = saved
    return state


def _save_part(state: dict, task, res: dict, model: GroupModel, path: str | None) -> None:
    key = "root" if task is None else str(task)
    state["completed"][key] = {
        str(s): [num, den, [[model.format(x) for x in w] for w in ws]] for s, (num, den, ws) in res.items()
    }
    if path:
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(state, fh, sort_keys=True)
        os.replace(tmp, path)


def _decode_part(data: dict, model: GroupModel) -> dict:
    return {
        int(s): (num, den, [tuple(model.parse(x) for x in w) for w in ws]) for s, (num, den, ws) in data.items()
    }


# ---------------------------------------------------------------------------
# ambient-ball scan (cross-check only)


def _ball_search(problem: SearchProblem) -> OptimalityReport:
    from .boundary import ball

    model = problem.model
    region = ball(model, problem.ball_radius)
    others = sorted(region.elements - {model.identity}, key=element_key)
    work = sum(math.comb(len(others), k - 1) for k in range(1, problem.size_limit + 1))
    if work > problem.work_budget:
        raise SearchBudgetExceeded(f"ball scan needs {work} subsets", {})
    best: dict = {}
    wit: dict = {}
    for k in range(1, problem.size_limit + 1):
        for rest in combinations(others, k - 1):
            F = FiniteSubset(frozenset((model.identity,) + rest), model)
            q = getattr(boundaries(F), f"{problem.kind}_ratio")
            if k not in best or q < best[k]:
                best[k] = q
                wit[k] = set()
            if q == best[k]:
                wit[k].add(canonical_form(model, F.elements))
    return OptimalityReport(
        problem.describe(), False, best, {s: sorted(w, key=_wkey) for s, w in wit.items()}, work
    )


# ---------------------------------------------------------------------------
# plain enumeration


def enumerate_connected_subsets(model: GroupModel, size_limit: int, radius: int = 1) -> Iterator[FiniteSubset]:
    """Each left-translation class of connected sets of size <= size_limit
    exactly once, as its canonical representative."""
    if size_limit < 1:
        return
    idx = CayleyIndex(model)
    root = idx.intern(model.identity)
    S = [root]
    inS = {root}
    banned: set = set()

    def rec(cands):
        elems = [idx.elems[i] for i in S]
        canon = canonical_form(model, elems)
        if set(canon) == set(elems):
            yield FiniteSubset(frozenset(canon), model)
        if len(S) >= size_limit:
            return
        inc = set(cands)
        done = []
        for i, u in enumerate(cands):
            S.append(u)
            inS.add(u)
            ext = list(cands[i + 1 :])
            for v in idx.link(u, radius):
                if v not in inS and v not in banned and v not in inc:
                    ext.append(v)
                    inc.add(v)
            yield from rec(ext)
            for v in ext[len(cands) - i - 1 :]:
                inc.discard(v)
            S.pop()
            inS.discard(u)
            banned.add(u)
            done.append(u)
        for u in done:
            banned.discard(u)

    yield from rec(list(idx.link(root, radius)))


# ---------------------------------------------------------------------------
# closure correspondence


def verify_closure_correspondence(outer: OptimalityReport, inner: OptimalityReport, model: GroupModel) -> dict:
    """Check that closures of outer-optimal sets are exactly the inner-optimal
    sets of the same size, for every outer-optimal size whose closure size is
    covered by the inner report."""
    inner_limit = inner.problem["size_limit"]
    inner_opt = set(inner.optimal_sizes())
    rows = []
    ok = True
    for s in outer.optimal_sizes():
        closures: dict = {}
        for w in outer.witnesses[s]:
            C = closure(FiniteSubset(frozenset(w), model))
            closures.setdefault(len(C), set()).add(canonical_form(model, C.elements))
        for c, cl in sorted(closures.items()):
            if c > inner_limit:
                rows.append({"outer_size": s, "closure_size": c, "checked": False})
                continue
            exists = c in inner_opt and any(x in cl for x in inner.witnesses.get(c, ()))
            covers = c in inner_opt and set(inner.witnesses.get(c, ())) <= cl
            ok &= exists and covers
            rows.append(
                {
                    "outer_size": s,
                    "closure_size": c,
                    "checked": True,
                    "closure_inner_optimal": exists,
                    "all_inner_optimal_are_closures": covers,
                }
            )
    return {"holds": ok, "rows": rows}
