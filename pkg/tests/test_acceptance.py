"""Acceptance suite: each numbered criterion at full budget, one line each."""

import json
import os

import pytest

from folnerkit import verify

WORKERS = int(os.environ.get("FOLNERKIT_WORKERS", "1") or 1)


def announce(res: dict, capsys) -> None:
    status = "PASS" if res["passed"] else "FAIL"
    limit = f" / {res['limit_seconds']} s" if res["limit_seconds"] else ""
    with capsys.disabled():
        print(f"\n[criterion {res['id']:>2}] {status}  {res['name']}  ({res['seconds']:.1f} s{limit})")


def finish(res: dict, capsys) -> None:
    announce(res, capsys)
    summary = {k: v for k, v in res.items() if k not in ("rows", "harper", "hamming", "volumes")}
    assert res["passed"], json.dumps(summary, default=str, indent=1)[:4000]


@pytest.fixture(scope="module")
def lamp_reports():
    return verify.optimality_reports("full", WORKERS)


def test_c01_folner_witnesses(capsys):
    finish(verify.check_folner_witnesses(), capsys)


def test_c02_optimality_oracle(capsys, lamp_reports):
    finish(verify.check_optimality("full", WORKERS, lamp_reports), capsys)


def test_c03_bs_optimality(capsys):
    finish(verify.check_bs_optimality("full", WORKERS), capsys)


def test_c04_closure_correspondence(capsys, lamp_reports):
    finish(verify.check_closure_correspondence("full", WORKERS, lamp_reports), capsys)


def test_c05_outer_boundary_graph_inequality(capsys):
    finish(verify.check_lamp_inequality("full"), capsys)


def test_c06_bs_graph_formulas(capsys):
    finish(verify.check_bs_graph("full"), capsys)


def test_c07_harper_and_hamming(capsys):
    finish(verify.check_harper(), capsys)


def test_c08_kkt_grid(capsys):
    finish(verify.check_kkt(), capsys)


def test_c09_growth(capsys):
    finish(verify.check_growth("full"), capsys)


def test_c10_bs_counterexample(capsys):
    finish(verify.check_bs_example(), capsys)


def test_c11_generating_series(capsys):
    finish(verify.check_series(), capsys)


def test_c12_isoperimetric_sweep(capsys):
    finish(verify.check_csc_sweep("full"), capsys)
