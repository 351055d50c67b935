"""Acceptance criteria, one test each.

Every test runs the relevant registry identities through the same per-point
task the `verify` command uses, checks that the registered tolerances and
grids are the ones the criterion asks for, enforces the time budget and
prints one PASS/FAIL line.
"""

import time

import pytest

from hyperconical import registry
from hyperconical.cli import _verify_task
from hyperconical.quad import DEFAULT_CONFIG

pytestmark = pytest.mark.slow


@pytest.fixture
def report(capsys):
    def emit(n, title, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance {n:2d}] {'PASS' if ok else 'FAIL'} {title}: {detail}")
    return emit


def run_ids(ids):
    recs = []
    for i in ids:
        ident = registry.REGISTRY[i]
        for k, pt in enumerate(ident.points()):
            recs.append(_verify_task((i, k, pt, None, DEFAULT_CONFIG)))
    return recs


def check(n, title, ids, budget, report, tols, counts=None):
    """tols maps identity -> criterion tolerance (the registered one must not
    be looser); counts maps identity -> required number of points."""
    for i, t in tols.items():
        assert registry.REGISTRY[i].tol <= t, f"{i} registered looser than {t}"
    for i, c in (counts or {}).items():
        assert len(registry.REGISTRY[i].points()) == c, f"{i} grid size"
    t0 = time.perf_counter()
    recs = run_ids(ids)
    dt = time.perf_counter() - t0
    bad = [(r["identity"], r["index"], r["residual"]) for r in recs if r["verdict"] != "pass"]
    worst = {}
    for r in recs:
        if r["residual"] is not None:
            worst[r["identity"]] = max(worst.get(r["identity"], 0.0), r["residual"])
    ok = not bad and dt < budget
    detail = f"{len(recs)} points, {dt:.1f} s (budget {budget:.0f} s), worst " + \
        ", ".join(f"{k}={v:.1e}" for k, v in worst.items())
    report(n, title, ok, detail)
    assert not bad, bad[:10]
    assert dt < budget
    return recs


def test_criterion_01_hyperbolic_gamma(report):
    ids = [i.id for i in registry.suite_identities("gamma")]
    check(1, "hyperbolic gamma suite", ids, 30, report,
          {i: 1e-9 for i in ids}, {i: 200 for i in ids})


def test_criterion_02_kernel_identities(report):
    ids = ["idd", "id2", "id3"]
    check(2, "kernel identities", ids, 10, report, {i: 1e-10 for i in ids}, {i: 50 for i in ids})


def test_criterion_03_fourier_transform(report):
    ids = ["FFt", "FFt-elem", "FFt-elemq", "corC2"]
    check(3, "Fourier transform closed form", ids, 120, report,
          {i: 1e-7 for i in ids}, {"FFt": 64})


def test_criterion_04_minimal_representations(report):
    recs = check(4, "minimal representations of R", ["Rreps", "cRnorm", "ER0"], 300, report,
                 {"Rreps": 1e-7, "cRnorm": 1e-8, "ER0": 1e-3}, {"Rreps": 54})
    assert all(r["residual"] < 1e-3 for r in recs if r["identity"] == "ER0")


def test_criterion_05_joint_eigenvalue_equations(report):
    recs = check(5, "joint eigenvalue equations", ["Cades"], 120, report, {"Cades": 1e-6}, {"Cades": 20})
    ops = {r["params"]["op"] for r in recs}
    assert len(ops) == 4
    for r in recs:
        p = r["params"]
        assert 0 < p["b"] < min(p["a_plus"], p["a_minus"]) / 2


def test_criterion_06_shift_relations(report):
    op_ids = ["ush", "dsh", "SA1", "SA2", "udrel"]
    fn_ids = ["cRu", "cRd"]
    ids = [i.id for i in registry.suite_identities("shifts")]
    assert set(op_ids + fn_ids) <= set(ids)
    tols = {i: 1e-11 for i in op_ids}
    tols.update({i: 1e-6 for i in fn_ids})
    check(6, "shift relations", ids, 120, report, tols)


def test_criterion_07_elementary_cases(report):
    check(7, "elementary cases", ["RN", "csym"], 60, report, {"RN": 1e-7, "csym": 1e-10})


def test_criterion_08_nonrelativistic(report):
    recs = check(8, "nonrelativistic suite", ["Fq", "psi12", "nrreps", "Enr1", "nrlimit"], 300, report,
                 {"Fq": 1e-10, "psi12": 1e-10, "nrreps": 1e-6, "Enr1": 1e-8, "nrlimit": 1e-2},
                 {"psi12": 8, "nrreps": 32})
    lim = [r for r in recs if r["identity"] == "nrlimit"][0]
    assert lim["params"]["betas"][-1] == 0.03 and lim["extra"]["decreasing"]


def test_criterion_09_toda(report):
    ids = [i.id for i in registry.suite_identities("toda")]
    recs = check(9, "Toda suite", ids, 600, report,
                 {"Treps": 1e-7, "Treal": 1e-9, "xade": 1e-6, "ATM": 1e-6, "Kid1": 1e-10, "Kdid": 1e-10,
                  "Hcross": 1e-6, "Hlattice": 1e-7, "todalimit": 1e-2})
    lim = [r for r in recs if r["identity"] == "todalimit"][0]
    assert lim["params"]["Lambdas"][-1] == 3.0 and lim["extra"]["decreasing"]


def test_criterion_10_nonrelativistic_toda(report):
    recs = check(10, "nonrelativistic Toda", ["FnrT12", "K0", "nrTasym", "nrTkernel"], 120, report,
                 {"FnrT12": 1e-8, "K0": 1e-8, "nrTasym": 1e-3, "nrTkernel": 1e-10})
    assert all(r["params"]["r"] == 10.0 for r in recs if r["identity"] == "nrTasym")
    assert [r["params"]["x"] for r in recs if r["identity"] == "K0"] == [2.0]


def test_criterion_11_small_a_minus_probe(report):
    recs = check(11, "small a_- probe", ["appB", "appB2"], 60, report, {"appB": 0.05, "appB2": 1e-3})
    assert all(r["params"]["a_minus"] == 1e-3 for r in recs)
    assert [r["params"]["lam"] for r in recs] == [1.0, 2.0]
