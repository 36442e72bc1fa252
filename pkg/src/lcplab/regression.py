"""Named reproduction checks for known numeric results.

Each check returns (ok, detail). ``CHECKS`` keeps registration order; the
names must match ``tests/reproduction_checklist.txt`` exactly.
"""
from dataclasses import dataclass
from fractions import Fraction as F

import numpy as np

from . import classes as C
from .ipm import IpmParams, merit_gradients, select_kappa, ipm_direction, solve_ipm
from .lcp import LcpInstance, check_solution, solve_enumerate, solve_lemke, strict_feasible_point
from .lp import game_value
from .ppt import ppt_transform
from .rational import fmt_vec, principal_submatrix, rmat, rvec

BORDERED_A = rmat([[0, 1, 1], [2, 0, 2], [-4, -5, 0]])
BORDERED_PERMUTED = rmat([[0, -4, -5], [1, 0, 1], [2, 2, 0]])
CYCLE_PERM = rmat([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
SMALL_2X2 = rmat([[0, -5], [2, 0]])
STAR_BASE = rmat([[0, 1, 1], [2, 0, 1], [-1, -1, 0]])
STAR_BASE_INV = rmat([[F(-1, 3), F(1, 3), F(-1, 3)], [F(1, 3), F(-1, 3), F(-2, 3)],
                      [F(2, 3), F(1, 3), F(2, 3)]])
TRANSPOSE_CASE = rmat([[0, 2, -1], [1, 0, -1], [1, 1, 0]])
BLOCK_FAIL = rmat([[0, 1, 1], [2, 0, 1], [-4, -5, 0]])
ANTI_2X2 = rmat([[0, 3], [-1, 0]])
TILDE_NOT_COPOS = rmat([[0, 1, 1], [2, 0, 2], [-2, -4, 0]])
P0_NOT_TILDE = rmat([[1, -1, -2], [-1, 1, 0], [0, 0, 1]])
POSITIVE_VALUE = rmat([[0, 2, 1], [1, 0, 1], [-2, -2, 1]])
IPM_A = rmat([[0, 1, 1], [2, 0, 2], [-2, -5, 0]])
IPM_Q = rvec([-4, -7, 10])
IPM_Z0 = rvec([1, 1, 5])
IPM_LIMIT = (F(15, 14), F(11, 7), F(17, 7))

# (row, z, w, dz, dw, psi) as printed; dz, dw, psi are from the step into that row
REFERENCE_TRACE = [
    (1, (1.05, 1.09, 4.76), (1.85, 4.62, 2.42), (0.106, 0.189, -0.487),
     (-0.298, -0.761, -1.155), 29.3308),
    (2, (1.1, 1.17, 4.53), (1.7, 4.25, 1.94), (0.0853, 0.1607, -0.4551),
     (-0.294, -0.74, -0.974), 23.2919),
    (50, (1.07, 1.57, 2.43), (0.00608, 0.00389, 0.00281), (0.00047, -0.00017, -0.00154),
     (-0.00171, -0.00215, -0.00009), 2.4617),
    (96, None, None, None, None, 1.1684),
    (100, None, None, None, None, 1.0565),
]


@dataclass
class Check:
    name: str
    summary: str
    run: object


CHECKS = []


def check(name, summary):
    def register(fn):
        CHECKS.append(Check(name, summary, fn))
        return fn
    return register


def _verdict(name, a, member):
    v = C.DETECTORS[name](a)
    detail = f"{name}: {v.describe()}"
    if not v.member and not C.verify_witness(name, a, v):
        return False, detail + " (witness does not verify)"
    return v.member == member, detail


def _all(*results):
    return all(ok for ok, _ in results), "; ".join(d for _, d in results)


@check("bordered_matrix_is_E0s", "3x3 bordered matrix with a single LCP(0,A) ray is E0s")
def _():
    return _verdict("E0s", BORDERED_A, True)


@check("bordered_matrix_sol0_support", "its nonzero LCP(0,A) solutions all have support {3}")
def _():
    reps = C.sol0_representatives(BORDERED_A)
    ok = [alpha for alpha, _ in reps] == [(2,)] and list(reps[0][1]) == [0, 0, 1]
    return ok, "supports " + str([tuple(i + 1 for i in s) for s, _ in reps])


@check("bordered_matrix_star_cone", "star cone on support {3} is feasible at e3")
def _():
    x = rvec([0, 0, 1])
    return C.in_sol0(BORDERED_A, x) and C.star_property(BORDERED_A).member, "x = e3"


@check("bordered_matrix_not_R0", "e3 solves LCP(0,A), so not R0")
def _():
    v = C.is_R0(BORDERED_A)
    return (not v.member and list(v.witness) == [0, 0, 1]), v.describe()


@check("permuted_bordered_matrix_is_E0s", "cyclic permutation of the bordered matrix stays E0s")
def _():
    same = (CYCLE_PERM @ BORDERED_A @ CYCLE_PERM.T == BORDERED_PERMUTED).all()
    ok, d = _verdict("E0s", BORDERED_PERMUTED, True)
    return bool(same) and ok, d


@check("skew_2x2_is_E0s", "[[0,-5],[2,0]] is E0 and E0s")
def _():
    return _all(_verdict("E0", SMALL_2X2, True), _verdict("E0s", SMALL_2X2, True))


@check("star_base_is_E0s", "[[0,1,1],[2,0,1],[-1,-1,0]] has the star property and is E0s")
def _():
    return _all(_verdict("star", STAR_BASE, True), _verdict("E0s", STAR_BASE, True))


@check("symmetrized_star_base_fails_star", "A + A' of that matrix is not E0s")
def _():
    s = STAR_BASE + STAR_BASE.T
    return _all(_verdict("star", s, False), _verdict("E0s", s, False))


@check("full_pivot_equals_inverse", "full PPT of the star base is its exact inverse")
def _():
    m = ppt_transform(STAR_BASE, (0, 1, 2)).M
    return bool((m == STAR_BASE_INV).all()), "M = " + str([fmt_vec(r) for r in m])


@check("inverse_not_E0", "that inverse has a negative diagonal, so every star class fails")
def _():
    v = C.classify_full(STAR_BASE_INV).verdicts
    downstream = ("E0", "E0s", "E0s_tilde", "completely_E0s", "C0star", "C0", "P0", "PSD")
    bad = [k for k in downstream if v[k].member]
    w = v["E0"].witness
    return not bad and list(w) == [1, 0, 0], f"E0 witness {fmt_vec(w)}; unexpected members {bad}"


@check("transposed_case_not_E0s", "[[0,2,-1],[1,0,-1],[1,1,0]] is not E0s although its transpose is")
def _():
    return _all(_verdict("E0s", TRANSPOSE_CASE, False), _verdict("E0s", TRANSPOSE_CASE.T, True))


@check("block_12_of_row_bordered_matrix", "leading 2x2 block of [[0,1,1],[2,0,1],[-4,-5,0]] is [[0,1],[2,0]]")
def _():
    b = principal_submatrix(BLOCK_FAIL, (0, 1))
    return bool((b == rmat([[0, 1], [2, 0]])).all()), "block " + str(b.tolist())


@check("block_12_fails_star_at_e1", "[[0,1],[2,0]] fails the star property with witness e1")
def _():
    v = C.star_property(rmat([[0, 1], [2, 0]]))
    return (not v.member and list(v.witness) == [1, 0]), v.describe()


@check("row_bordered_matrix_not_completely_E0s", "that matrix is E0s but not completely E0s")
def _():
    v = C.is_completely_E0s(BLOCK_FAIL)
    ok, d = _verdict("E0s", BLOCK_FAIL, True)
    return ok and not v.member and v.block == (0, 1), d + "; completely: " + v.describe()


@check("anti_2x2_is_E0s", "[[0,3],[-1,0]] is E0s")
def _():
    return _verdict("E0s", ANTI_2X2, True)


@check("tilde_member_not_copositive_star", "[[0,1,1],[2,0,2],[-2,-4,0]] is tilde-E0s but not C0*")
def _():
    return _all(_verdict("E0s_tilde", TILDE_NOT_COPOS, True),
                _verdict("C0star", TILDE_NOT_COPOS, False))


@check("l2_certificate_at_e3", "L2 certificate at e3: Ax = (1,2,0), A'x = (-2,-4,0), D1 = diag(2,2,0)")
def _():
    x = rvec([0, 0, 1])
    a = TILDE_NOT_COPOS
    d1, d2 = C.l2_certificate(a, x)
    ok = (list(a @ x) == [1, 2, 0] and list(a.T @ x) == [-2, -4, 0]
          and [d1[i, i] for i in range(3)] == [2, 2, 0] and not any((d1 @ a + a.T) @ x))
    return ok, "D1 diagonal " + fmt_vec([d1[i, i] for i in range(3)])


@check("p0_matrix_fails_tilde", "[[1,-1,-2],[-1,1,0],[0,0,1]] is E0s and P0 but not tilde-E0s")
def _():
    v = C.is_E0s_tilde(P0_NOT_TILDE)
    x = v.witness
    ok = (not v.member and list(x) == [F(1, 2), F(1, 2), 0]
          and (P0_NOT_TILDE.T @ x)[2] != 0 and (P0_NOT_TILDE @ x)[2] == 0)
    return _all((ok, "tilde: " + v.describe()), _verdict("E0s", P0_NOT_TILDE, True),
                _verdict("P0", P0_NOT_TILDE, True))


@check("positive_value_matrix_is_R0_and_Qb", "[[0,2,1],[1,0,1],[-2,-2,1]]: tilde-E0s, R0, v(A) > 0, Qb")
def _():
    rep = C.classify_full(POSITIVE_VALUE)
    x = rvec([1, 1, 5])
    ok = (rep.member("E0s_tilde") and rep.member("R0") and rep.game.value > 0
          and rep.derived["Qb"].holds and all(v > 0 for v in POSITIVE_VALUE @ x))
    return ok, f"v(A) = {rep.game.value}; Qb via {rep.derived['Qb'].route}"


@check("positive_diagonal_2x2_sufficient", "[[1,2],[0,1]] is sufficient")
def _():
    return _verdict("sufficient", rmat([[1, 2], [0, 1]]), True)


@check("ipm_matrix_is_tilde", "[[0,1,1],[2,0,2],[-2,-5,0]] is tilde-E0s")
def _():
    return _verdict("E0s_tilde", IPM_A, True)


@check("ipm_start_strictly_feasible", "z0 = (1,1,5) gives w0 = (2,5,3); a strict start exists")
def _():
    w0 = IPM_Q + IPM_A @ IPM_Z0
    return list(w0) == [2, 5, 3] and strict_feasible_point(LcpInstance(IPM_A, IPM_Q)) is not None, \
        "w0 = " + fmt_vec(w0)


@check("ipm_first_direction_slope", "first direction has slope -tau beta^2")
def _():
    z = np.array([1.0, 1.0, 5.0])
    w = np.array([2.0, 5.0, 3.0])
    a = IPM_A.astype(float)
    kappa, _ = select_kappa(z, w, 0.1)
    dz, dw, tau, _ = ipm_direction(z, w, a, kappa, 0.5)
    gz, gw = merit_gradients(z, w, kappa)
    slope = gz @ dz + gw @ dw
    return abs(slope + tau * 0.25) <= 1e-8 * tau * 0.25, f"slope {slope:.10g}, -tau beta^2 {-tau * 0.25:.10g}"


@check("ipm_converges", "IPM from z0 = (1,1,5) reaches z'w <= 1e-5 near (15/14, 11/7, 17/7)")
def _():
    sol, trace = solve_ipm(LcpInstance(IPM_A, IPM_Q), IpmParams(z0=[1, 1, 5]))
    err = max(abs(float(a) - float(b)) for a, b in zip(sol.z, IPM_LIMIT))
    ok = trace.steps[-1].ztw <= 1e-5 and err <= 1e-3
    return ok, f"{len(trace) - 1} iterations, |z - z*| = {err:.2e}"


def _close(printed, value):
    # printed values are truncated or rounded; allow one unit in the last place
    s = repr(printed)
    digits = len(s.split(".")[1]) if "." in s else 0
    return abs(value - printed) <= 10.0 ** -digits


@check("ipm_reference_trace", "IPM with kappa margin 0.01 and first step 0.5 matches the reference iterates")
def _():
    params = IpmParams(kappa_slack=0.01, gamma=0.5, z0=[1, 1, 5])
    _, trace = solve_ipm(LcpInstance(IPM_A, IPM_Q), params)
    s = trace.steps
    bad = []
    for row, z, w, dz, dw, psi in REFERENCE_TRACE:
        got = [(s[row].z, z), (s[row].w, w), (s[row - 1].dz, dz), (s[row - 1].dw, dw)]
        for vec, want in got:
            if want is not None and not all(_close(p, v) for p, v in zip(want, vec)):
                bad.append(row)
        if not _close(psi, s[row - 1].psi):
            bad.append(row)
    return not bad, f"{len(s) - 1} iterations; mismatched rows {sorted(set(bad))}"


@check("ipm_instance_has_three_solutions", "enumeration finds (15/14,11/7,17/7), (5,0,4), (0,2,7/2)")
def _():
    sols, _ = solve_enumerate(LcpInstance(IPM_A, IPM_Q))
    zs = {tuple(s.z) for s in sols}
    want = {IPM_LIMIT, (5, 0, 4), (0, 2, F(7, 2))}
    return zs == want, "solutions " + ", ".join(fmt_vec(z) for z in sorted(zs))


@check("lemke_solves_ipm_instance", "Lemke returns an exact solution of the same instance")
def _():
    inst = LcpInstance(IPM_A, IPM_Q)
    sol = solve_lemke(inst)
    ok = hasattr(sol, "support") and check_solution(inst, sol.z)[0]
    return ok, "z = " + fmt_vec(sol.z)


@check("positive_value_game", "value of [[0,2,1],[1,0,1],[-2,-2,1]] is positive")
def _():
    g = game_value(POSITIVE_VALUE)
    return g.value > 0, f"v = {g.value}"


def names():
    return [c.name for c in CHECKS]


def run_all(selected=None):
    """Run checks in order; returns a list of (name, ok, detail)."""
    out = []
    for c in CHECKS:
        if selected and c.name not in selected:
            continue
        try:
            ok, detail = c.run()
        except Exception as exc:  # a crash is a failed check, reported by name
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((c.name, bool(ok), detail))
    return out
