"""Command-line entry point: ``folnerkit <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import assoc, growth, hypercube, search, standard, verify
from .boundary import FiniteSubset, boundaries, frac_str
from .groups import DomainError, parse_model

WORKERS_ENV = "FOLNERKIT_WORKERS"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class CheckFailed(Exception):
    def __init__(self, failures: list):
        super().__init__(f"{len(failures)} check(s) failed")
        self.failures = failures


def int_range(text: str) -> list[int]:
    """``a..b`` (inclusive) or a single integer."""
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            return [int(text)]
        a, b = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from None
    if a > b:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(a, b + 1))


def _plain(x):
    if isinstance(x, Fraction):
        return frac_str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    return x


def emit(data, fmt: str, out, columns: list[str] | None = None) -> None:
    """Write a report (dict or list of row dicts) in the requested format."""
    data = _plain(data)
    if fmt == "json":
        out.write(json.dumps(data, sort_keys=True, indent=1) + "\n")
        return
    rows = data if isinstance(data, list) else [data]
    cols = columns or sorted({k for r in rows for k in r})
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([json.dumps(r.get(c), sort_keys=True) if isinstance(r.get(c), (dict, list)) else r.get(c) for c in cols])
        return
    for r in rows:
        out.write("  ".join(f"{c}={r.get(c)}" for c in cols) + "\n")


def read_set(path: str) -> FiniteSubset:
    """A set file: a ``# model: SPEC`` header, then one element per line."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh]
    model = None
    elems = []
    for ln in lines:
        if not ln:
            continue
        if ln.startswith("#"):
            key, _, val = ln[1:].partition(":")
            if key.strip() == "model":
                model = parse_model(val)
            continue
        if model is None:
            raise DomainError("set file needs a '# model: ...' header before the elements")
        elems.append(model.parse(ln))
    if model is None:
        raise DomainError("set file has no '# model: ...' header")
    return FiniteSubset.of(model, elems)


# -- subcommands ------------------------------------------------------------------


def cmd_folner(a) -> tuple:
    rows = [standard.fol_witness(a.d, n) for n in a.n]
    bad = [r for r in rows if not (r["size_ok"] and r["ratio_ok"])]
    return rows, bad, ["d", "n", "value", "witness_size", "inner_ratio", "size_ok", "ratio_ok", "passes_folner_test"]


def cmd_boundary(a) -> tuple:
    F = read_set(a.set_file)
    return boundaries(F).as_dict(), [], list(boundaries(F).CSV_FIELDS)


def cmd_search(a) -> tuple:
    model = parse_model(a.model)
    prob = search.SearchProblem(model, a.kind, a.max_size, a.mode, a.ball_radius, a.work_budget)
    rep = search.min_boundary_ratio(prob, workers=a.workers, progress_path=a.progress)
    d = rep.as_dict(model)
    if a.format == "json":
        return d, [], None
    rows = [{k: v for k, v in r.items() if k != "witnesses"} for r in d["sizes"]]
    return rows, [], ["size", "min_ratio", "witness_count", "strictly_below_smaller"]


def _set_for(a) -> FiniteSubset:
    if a.set_file:
        return read_set(a.set_file)
    model = parse_model(a.model)
    if model.kind == "lamp":
        return standard.standard_set_lamp(model.order, a.standard)
    if model.kind == "bs":
        return standard.standard_set_bs(model.order, a.standard)
    raise DomainError("standard sets are available for lamp:d and bs:p")


def cmd_assoc(a) -> tuple:
    F = _set_for(a)
    if F.model.kind == "lamp":
        r = assoc.lamp_inequality(F)
        G = assoc.assoc_subgraph_lamp(F)
        r.update({"model": F.model.spec, "size": len(F), "edges": len(G.edges)})
        return r, ([] if r["holds"] else [r]), None
    if F.model.kind == "bs":
        r = assoc.check_bs_bounds(F)
        r["model"] = F.model.spec
        return r, ([r] if r["holds"] is False else []), None
    raise DomainError("associated graphs are defined for lamp:d and bs:p")


def cmd_graph(a) -> tuple:
    F = _set_for(a)
    G = assoc.assoc_subgraph_lamp(F) if F.model.kind == "lamp" else assoc.assoc_subgraph_bs(F)
    return assoc.dump_graph(G, undirected=a.undirected), [], None


def cmd_harper(a) -> tuple:
    if a.d == 2:
        rows = hypercube.harper_table(a.m)
        bad = [r for r in rows if not (r["match"] and r["maximisers_cubal"])]
        return rows, bad, ["k", "cubal_edges", "max_edges", "match", "maximisers", "maximisers_cubal"]
    rows = hypercube.hamming_bound_table(a.d, a.m)
    bad = [r for r in rows if r["relation"] == "above"]
    return rows, bad, ["k", "max_edges", "bound", "relation"]


def cmd_kkt(a) -> tuple:
    r = hypercube.kkt_grid_check(a.d, a.step)
    return r, ([] if r["holds"] else [r]), None


def cmd_growth(a) -> tuple:
    model = parse_model(a.model)
    table = growth.ball_volume(model, a.radius, a.memory_budget)
    lower = None
    if model.kind == "lamp":
        lower = growth.reduced_word_count(model.order, a.radius)[1]
    elif model.kind == "lamp-sws":
        lower = [2**r for r in range(a.radius + 1)]
    rows, bad = [], []
    for r, v in enumerate(table.volumes):
        row = {"r": r, "V": v, "ratio": (v / table[r - 1]) if r else None}
        if lower is not None:
            row["V_lower"] = lower[r]
            row["V_upper"] = 8 * r**3 * lower[r]
            if r and not lower[r] <= v <= row["V_upper"]:
                bad.append(row)
        rows.append(row)
    cols = ["r", "V", "V_lower", "V_upper", "ratio"] if lower is not None else ["r", "V", "ratio"]
    return rows, bad, cols


def cmd_csc(a) -> tuple:
    rows = [dict(growth.csc_constant(d).as_dict()) for d in a.d]
    return rows, [], ["d", "rate", "rate_value", "constant", "folner_exponent"]


def cmd_bs_example(a) -> tuple:
    rows = []
    for p in a.p:
        if p % 3:
            continue
        r = standard.bs_counterexample(p, enumerate_sets=a.enumerate)
        r["strict_inequality"] = "yes" if r["strict"] else "no"
        rows.append(r)
    bad = [r for r in rows if not (r["strict"] and r["ratio_formula_ok"] and r["standard_formula_ok"] and r["size_le_standard"])]
    return rows, bad, ["p", "size", "standard_size", "ratio", "standard_ratio", "strict_inequality"]


def cmd_series(a) -> tuple:
    res = standard.fol_series_check(a.d, a.N, a.small_values)
    return (
        {"d": a.d, "N": a.N, "series": res.series, "rational_part": res.rational_part, "polynomial": res.coefficients, "degree": res.degree},
        [],
        None,
    )


def cmd_verify_all(a) -> tuple:
    rows = verify.run_all(a.budget, a.workers)
    bad = [{"id": r["id"], "name": r["name"]} for r in rows if not r["passed"]]
    if a.format == "json":
        return rows, bad, None
    return [{k: r[k] for k in ("id", "name", "passed", "seconds")} for r in rows], bad, ["id", "name", "passed", "seconds"]


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    default_workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="folnerkit", description="Exact Følner and isoperimetry checks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("folner", parents=[common], help="Følner values and witness sets")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--n", type=int_range, required=True)
    s.set_defaults(func=cmd_folner)

    s = sub.add_parser("boundary", parents=[common], help="boundaries of a set read from a file")
    s.add_argument("set_file")
    s.set_defaults(func=cmd_boundary)

    s = sub.add_parser("search", parents=[common], help="minimal boundary ratios by exhaustive search")
    s.add_argument("--model", required=True)
    s.add_argument("--kind", choices=search.KINDS, required=True)
    s.add_argument("--max-size", type=int, required=True)
    s.add_argument("--mode", choices=search.MODES, default="connected")
    s.add_argument("--ball-radius", type=int, default=2)
    s.add_argument("--work-budget", type=int, default=search.DEFAULT_WORK_BUDGET)
    s.add_argument("--workers", type=int, default=default_workers)
    s.add_argument("--progress", help="resumable progress file")
    s.set_defaults(func=cmd_search)

    for name, func, helptext in (
        ("assoc", cmd_assoc, "associated-graph inequalities for a set"),
        ("graph", cmd_graph, "dump the associated graph, one edge per line"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--set", dest="set_file")
        s.add_argument("--model", default="lamp:2")
        s.add_argument("--standard", type=int, default=2, help="use the standard set F_n")
        if name == "graph":
            s.add_argument("--undirected", action="store_true", help="BS: the undirected reduction")
        s.set_defaults(func=func)

    s = sub.add_parser("harper", parents=[common], help="cubal sets against exhaustive maxima")
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--m", type=int, default=4)
    s.set_defaults(func=cmd_harper, format_default="csv")

    s = sub.add_parser("kkt", parents=[common], help="grid check of the entropy objective")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--step", type=float, default=0.01)
    s.set_defaults(func=cmd_kkt)

    s = sub.add_parser("growth", parents=[common], help="ball volumes by breadth-first search")
    s.add_argument("--model", required=True)
    s.add_argument("--radius", type=int, required=True)
    s.add_argument("--memory-budget", type=int, default=growth.DEFAULT_STATE_BUDGET)
    s.set_defaults(func=cmd_growth, format_default="csv")

    s = sub.add_parser("csc", parents=[common], help="the isoperimetric constant for Z wr Z/d")
    s.add_argument("--d", type=int_range, default=[2])
    s.set_defaults(func=cmd_csc)

    s = sub.add_parser("bs-example", parents=[common], help="the BS(1,p) sets beating F_3")
    s.add_argument("--p", type=int_range, default=int_range("36..60"))
    s.add_argument("--enumerate", action="store_true", help="recount every set element by element")
    s.set_defaults(func=cmd_bs_example)

    s = sub.add_parser("series", parents=[common], help="generating series residual")
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--N", type=int, default=6)
    s.add_argument("--small-values", type=int, nargs="*", default=[], help="Fol(2..d-1)")
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("verify-all", parents=[common], help="run every numbered check")
    s.add_argument("--budget", choices=verify.BUDGETS, default="small")
    s.add_argument("--workers", type=int, default=default_workers)
    s.set_defaults(func=cmd_verify_all)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    raw = sys.argv[1:] if argv is None else argv
    args = parser.parse_args(raw)
    if "--format" not in raw and getattr(args, "format_default", None):
        args.format = args.format_default
    try:
        data, failures, columns = args.func(args)
    except (search.SearchBudgetExceeded, growth.GrowthBudgetExceeded, standard.BudgetExceeded) as exc:
        partial = getattr(exc, "progress", None) or getattr(exc, "table", None)
        json.dump({"error": "budget", "message": str(exc), "partial": _plain(getattr(partial, "volumes", partial))}, sys.stderr)
        sys.stderr.write("\n")
        return EXIT_BUDGET
    except (DomainError, OSError, standard.FormulaViolation) as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        if isinstance(data, str):
            out.write(data)
        else:
            emit(data, args.format, out, columns)
    finally:
        if args.output:
            out.close()
    if failures:
        json.dump({"failures": _plain(failures)}, sys.stderr, sort_keys=True)
        sys.stderr.write("\n")
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
