"""Acceptance criteria, one test each; every test records a PASS/FAIL line.

The lines are printed in the terminal summary (see conftest.py) and also
written immediately to stdout, so ``pytest -s`` shows them inline.
"""
import time
from fractions import Fraction as F
from itertools import product

import numpy as np
import pytest

from lcplab import classes as C
from lcplab.generate import random_structured_instance
from lcplab.ipm import IpmParams, merit_gradients, merit_psi, solve_ipm
from lcplab.lcp import LcpInstance, LcpSolution, solve_enumerate, solve_lemke
from lcplab.lp import game_value
from lcplab.ppt import enumerate_legitimate, ppt_transform
from lcplab.rational import fmt_vec, identity, rmat, rvec
from oracles import e0_violation_2, star_violation_2

RESULTS = {}

IPM_A = rmat([[0, 1, 1], [2, 0, 2], [-2, -5, 0]])
IPM_Q = rvec([-4, -7, 10])
LIMIT = (F(15, 14), F(11, 7), F(17, 7))


def record(num, ok, detail):
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[num] = line
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def structured_instances():
    return [random_structured_instance(2 + s % 4, 1000 + s) for s in range(100)]


def test_criterion_1_ipm_reproduction():
    inst = LcpInstance(IPM_A, IPM_Q)
    w0 = IPM_Q + IPM_A @ rvec([1, 1, 5])
    t0 = time.perf_counter()
    sol, trace = solve_ipm(inst, IpmParams(beta=0.5, sigma=0.2, eps=1e-5, z0=[1, 1, 5]))
    elapsed = time.perf_counter() - t0
    err = max(abs(float(a) - float(b)) for a, b in zip(sol.z, LIMIT))
    iters = len(trace) - 1
    ztw = trace.steps[-1].ztw
    ok = list(w0) == [2, 5, 3] and ztw <= 1e-5 and err <= 1e-3 and iters <= 500 and elapsed < 1
    record(1, ok, f"w0={list(map(int, w0))} z'w={ztw:.2e} |z-z*|={err:.1e} iters={iters} t={elapsed:.3f}s")


def test_criterion_2_exact_solve():
    inst = LcpInstance(IPM_A, IPM_Q)
    sols, _ = solve_enumerate(inst)
    enum_zs = {tuple(s.z) for s in sols}
    lemke = solve_lemke(inst)
    lemke_z = tuple(lemke.z) if isinstance(lemke, LcpSolution) else None
    shown = fmt_vec(lemke_z) if lemke_z else "ray"

    rng = np.random.default_rng(20240)
    agree, solved = True, 0
    for _ in range(500):
        n = int(rng.integers(1, 6))
        rand = LcpInstance(rmat(rng.integers(-3, 4, size=(n, n))), rvec(rng.integers(-3, 4, size=n)))
        out = solve_lemke(rand)
        if isinstance(out, LcpSolution):
            solved += 1
            agree &= tuple(out.z) in {tuple(s.z) for s in solve_enumerate(rand)[0]}

    enum_ok = LIMIT in enum_zs
    lemke_ok = lemke_z == LIMIT
    detail = (f"enumeration contains z*: {enum_ok} ({len(enum_zs)} solutions); "
              f"Lemke z = {shown} (equals z*: {lemke_ok}); "
              f"random agreement {agree} on {solved}/500 solved")
    record(2, enum_ok and lemke_ok and agree, detail)


def test_criterion_3_class_table():
    t0 = time.perf_counter()
    bordered = rmat([[0, 1, 1], [2, 0, 2], [-4, -5, 0]])
    perm = rmat([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    star_base = rmat([[0, 1, 1], [2, 0, 1], [-1, -1, 0]])
    row_bordered = rmat([[0, 1, 1], [2, 0, 1], [-4, -5, 0]])
    tilde_case = rmat([[0, 1, 1], [2, 0, 2], [-2, -4, 0]])
    p0_case = rmat([[1, -1, -2], [-1, 1, 0], [0, 0, 1]])
    positive_value = rmat([[0, 2, 1], [1, 0, 1], [-2, -2, 1]])
    star_base_inv = ppt_transform(star_base, (0, 1, 2)).M
    m = lambda name, a: C.DETECTORS[name](a).member  # noqa: E731
    rep_pos = C.classify_full(positive_value)
    table = {
        "skew 2x2 in E0s": m("E0s", rmat([[0, -5], [2, 0]])),
        "bordered in E0s": m("E0s", bordered),
        "permuted bordered in E0s": m("E0s", perm @ bordered @ perm.T),
        "symmetrized star base not E0s": not m("E0s", star_base + star_base.T),
        "star base inverse not E0s": not m("E0s", star_base_inv),
        "transposed case not E0s": not m("E0s", rmat([[0, 2, -1], [1, 0, -1], [1, 1, 0]])),
        "row bordered in E0s": m("E0s", row_bordered),
        "its leading 2x2 block not E0s": not m("E0s", row_bordered[:2, :2]),
        "row bordered not completely E0s": not m("completely_E0s", row_bordered),
        "[[0,3],[-1,0]] in E0s": m("E0s", rmat([[0, 3], [-1, 0]])),
        "tilde case in tilde-E0s": m("E0s_tilde", tilde_case),
        "tilde case not C0*": not m("C0star", tilde_case),
        "P0 case in E0s and P0": m("E0s", p0_case) and m("P0", p0_case),
        "P0 case not tilde-E0s": not m("E0s_tilde", p0_case),
        "positive value case tilde and R0": rep_pos.member("E0s_tilde") and rep_pos.member("R0"),
        "positive value case v>0, Qb derived": rep_pos.game.value > 0 and rep_pos.derived["Qb"].holds,
    }
    elapsed = time.perf_counter() - t0
    failed = [k for k, v in table.items() if not v]
    record(3, not failed and elapsed < 5, f"{len(table) - len(failed)}/{len(table)} verdicts "
           f"in {elapsed:.2f}s; failed {failed}")


def test_criterion_4_ppt():
    star_base = rmat([[0, 1, 1], [2, 0, 1], [-1, -1, 0]])
    exact = (ppt_transform(star_base, (0, 1, 2)).M == rmat([[-1, 1, -1], [1, -1, -2], [2, 1, 2]]) / 3).all()
    rng = np.random.default_rng(404)
    done = bad = 0
    while done < 1000:
        num = rng.integers(-4, 5, size=(4, 4))
        den = rng.integers(1, 4, size=(4, 4))
        a = rmat([[F(int(p), int(q)) for p, q in zip(r1, r2)] for r1, r2 in zip(num, den)])
        legit = enumerate_legitimate(a)[1:]
        if not legit:
            continue
        alpha = legit[int(rng.integers(len(legit)))]
        m = ppt_transform(a, alpha).M
        bad += not (ppt_transform(m, alpha).M == a).all()
        if len(alpha) == 4:
            bad += not (m @ a == identity(4)).all()
        elif (0, 1, 2, 3) in legit:
            bad += not (ppt_transform(a, (0, 1, 2, 3)).M @ a == identity(4)).all()
        done += 1
    record(4, bool(exact) and bad == 0, f"exact inverse {bool(exact)}; {bad} failures over {done} pivots")


def test_criterion_5_ipm_structure(structured_instances):
    tilde = sum(C.is_E0s_tilde(inst.A).member for inst, _ in structured_instances)
    worst = {"armijo": 0, "decrease": 0, "slope": 0.0, "ellipse": 0.0, "grad": 0.0}
    steps = 0
    for inst, z0 in structured_instances:
        p = IpmParams(z0=[float(v) for v in z0])
        _, trace = solve_ipm(inst, p)
        b2 = p.beta ** 2
        for s in trace.steps:
            if s.psi is None:
                continue
            steps += 1
            worst["armijo"] += not (s.psi_next - s.psi <= p.sigma * s.step * s.slope)
            worst["decrease"] += not (s.psi_next < s.psi)
            worst["slope"] = max(worst["slope"], abs(s.slope + s.tau * b2) / (s.tau * b2))
            worst["ellipse"] = max(worst["ellipse"], abs(s.ellipse - b2) / b2)
            gz, gw = merit_gradients(s.z, s.w, s.kappa)
            fz, fw = np.zeros_like(gz), np.zeros_like(gw)
            for i in range(len(s.z)):
                hz, hw = 1e-6 * s.z[i], 1e-6 * s.w[i]
                e = np.zeros(len(s.z))
                e[i] = hz
                fz[i] = (merit_psi(s.z + e, s.w, s.kappa) - merit_psi(s.z - e, s.w, s.kappa)) / (2 * hz)
                e[i] = hw
                fw[i] = (merit_psi(s.z, s.w + e, s.kappa) - merit_psi(s.z, s.w - e, s.kappa)) / (2 * hw)
            g, f = np.concatenate([gz, gw]), np.concatenate([fz, fw])
            worst["grad"] = max(worst["grad"], np.linalg.norm(f - g) / np.linalg.norm(g))
    ok = (tilde == 100 and worst["armijo"] == 0 and worst["decrease"] == 0 and worst["slope"] <= 1e-8
          and worst["ellipse"] <= 1e-8 and worst["grad"] <= 1e-6)
    record(5, ok, f"{tilde}/100 tilde, {steps} steps; Armijo misses {worst['armijo']}, "
           f"non-decreases {worst['decrease']}, slope rel {worst['slope']:.1e}, "
           f"ellipse rel {worst['ellipse']:.1e}, gradient rel {worst['grad']:.1e}")


def test_criterion_6_oracle_exhaustion():
    disagree = []
    for entries in product(range(-2, 3), repeat=4):
        rows = [list(entries[:2]), list(entries[2:])]
        a = rmat(rows)
        if C.is_semimonotone(a).member != (e0_violation_2(rows) is None):
            disagree.append(("E0", rows))
        if C.star_property(a).member != (star_violation_2(rows) is None):
            disagree.append(("star", rows))
    record(6, not disagree, f"625 matrices, {len(disagree)} disagreements {disagree[:3]}")


def test_criterion_7_certificates(structured_instances):
    rng = np.random.default_rng(77)
    matrices = [inst.A for inst, _ in structured_instances]
    matrices += [rmat(rng.integers(-3, 4, size=(n, n))) for n in rng.integers(1, 5, size=100)]
    tilde_examples = [
        rmat([[0, 1, 1], [2, 0, 2], [-2, -4, 0]]),
        rmat([[0, 1, 1], [2, 0, 2], [-2, -5, 0]]),
        rmat([[0, 2, 1], [1, 0, 1], [-2, -2, 1]]),
    ]
    negatives = bad_witness = 0
    for a in matrices:
        for name in C.CLASS_NAMES:
            v = C.DETECTORS[name](a)
            if not v.member:
                negatives += 1
                bad_witness += not C.verify_witness(name, a, v)
    certs = bad_cert = 0
    for a in tilde_examples + [inst.A for inst, _ in structured_instances]:
        for _, x in C.sol0_representatives(a):
            d1, d2 = C.l2_certificate(a, x)
            certs += 1
            n = len(x)
            ok = all(d1[i, i] >= 0 for i in range(n)) and not any((d1 @ a + a.T) @ x)
            bad_cert += not ok
    record(7, bad_witness == 0 and bad_cert == 0,
           f"{negatives} negative verdicts, {bad_witness} bad witnesses; "
           f"{certs} L2 certificates, {bad_cert} invalid")


def test_criterion_8_game_kernel():
    rng = np.random.default_rng(8)
    gap = skew = shift = 0
    for _ in range(500):
        n = int(rng.integers(1, 7))
        a = rmat(rng.integers(-5, 6, size=(n, n)))
        g = game_value(a)
        # zero duality gap: the two strategies certify the same value exactly
        gap += not (min(a @ g.col_strategy) == g.value == max(a.T @ g.row_strategy))
        k = rng.integers(-4, 5, size=(n, n))
        skew += game_value(rmat(k - k.T)).value != 0
        c = F(int(rng.integers(-9, 10)), int(rng.integers(1, 6)))
        shift += game_value(a + c).value != g.value + c
    record(8, gap == skew == shift == 0, f"500 games: gap failures {gap}, skew {skew}, shift {shift}")
