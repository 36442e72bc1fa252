"""LCP instances, the exact solvers (basis enumeration, Lemke) and checks.

LCP(q, A): find z >= 0 with w = q + A z >= 0 and z'w = 0.
"""
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DimensionTooLarge, InputError
from .lp import GE, LE, Constraint, LpProblem, lp_solve
from .rational import is_exact, linear_solve, rvec, subsets, to_fraction

ENUMERATION_CAP = 20


@dataclass
class LcpInstance:
    A: np.ndarray
    q: np.ndarray

    def __post_init__(self):
        self.A = np.asarray(self.A, dtype=object)
        self.q = rvec(self.q) if is_exact(self.q) else np.asarray(self.q, dtype=float)
        if self.A.shape != (len(self.q), len(self.q)):
            raise InputError(f"A is {self.A.shape} but q has length {len(self.q)}")

    @property
    def n(self):
        return len(self.q)


@dataclass
class LcpSolution:
    z: np.ndarray
    w: np.ndarray
    support: tuple = ()
    residuals: dict = field(default_factory=dict)

    @classmethod
    def from_z(cls, inst, z):
        if is_exact(z):
            z = np.array([to_fraction(v) for v in z], dtype=object)
            w = inst.q + inst.A @ z
        else:
            z = np.asarray(z, dtype=float)
            w = np.asarray(inst.q, dtype=float) + inst.A.astype(float) @ z
        support = tuple(i for i in range(len(z)) if z[i] > 0)
        res = {"min_z": min(z), "min_w": min(w), "ztw": sum(a * b for a, b in zip(z, w))}
        return cls(z, w, support, res)


@dataclass
class RayTermination:
    """Lemke stopped on a secondary ray: (z, w, z0) moves along ``direction``."""

    z: np.ndarray
    w: np.ndarray
    z0: Fraction
    direction_z: np.ndarray
    direction_w: np.ndarray
    direction_z0: Fraction
    pivots: int = 0
    basis_history: list = field(default_factory=list)


def solve_enumerate(inst):
    """All basic solutions by trying every complementary basis.

    Returns (solutions, solvable) with solutions deduplicated on z and listed
    in lexicographic support order.
    """
    n = inst.n
    if n > ENUMERATION_CAP:
        raise DimensionTooLarge(f"enumeration capped at n = {ENUMERATION_CAP}, got {n}")
    a, q = inst.A, inst.q
    seen, sols = set(), []
    for alpha in subsets(n, include_empty=True):
        z = np.array([Fraction(0)] * n, dtype=object)
        if alpha:
            idx = list(alpha)
            za = linear_solve(a[np.ix_(idx, idx)], -q[idx])
            if za is None or any(v < 0 for v in za):
                continue
            z[idx] = za
        w = q + a @ z
        if any(v < 0 for v in w):
            continue
        key = tuple(z)
        if key not in seen:
            seen.add(key)
            sols.append(LcpSolution.from_z(inst, z))
    return sols, bool(sols)


def _lex_less(u, v):
    for a, b in zip(u, v):
        if a != b:
            return a < b
    return False


def solve_lemke(inst, covering=None, max_pivots=None):
    """Lemke's complementary pivoting with a lexicographic ratio test.

    Tableau rows hold [I, -A, -d | q] for the system w - A z - d z0 = q.
    Returns an LcpSolution or a RayTermination. ``basis_history`` (on the
    solution's residuals or the ray) records each basis for cycling checks.
    """
    n = inst.n
    a, q = inst.A, inst.q
    d = rvec(covering) if covering is not None else rvec([1] * n)
    if any(v <= 0 for v in d):
        raise InputError("covering vector must be positive")
    if all(v >= 0 for v in q):
        sol = LcpSolution.from_z(inst, [Fraction(0)] * n)
        sol.residuals["pivots"] = 0
        sol.residuals["basis_history"] = [frozenset(range(n))]
        return sol
    if max_pivots is None:
        max_pivots = 50 * 2 ** min(n, 16)

    # columns: w_0..w_{n-1}, z_0..z_{n-1}, z0 (index 2n); rhs last
    z0 = 2 * n
    rows = []
    for i in range(n):
        row = [Fraction(int(i == j)) for j in range(n)]
        row += [-a[i, j] for j in range(n)]
        row += [-d[i], q[i]]
        rows.append(row)
    basis = list(range(n))

    def pivot(r, c):
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        pr = rows[r]
        for i in range(n):
            f = rows[i][c]
            if i != r and f:
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        basis[r] = c

    def lex_key(i, col):
        # (rhs, B^-1 row) / pivot entry; the w-columns hold B^-1
        p = rows[i][col]
        return [rows[i][-1] / p] + [rows[i][j] / p for j in range(n)]

    # initial pivot: z0 enters, the row that is most negative leaves
    best = None
    for i in range(n):
        # entry in z0 column is -d_i < 0; ratio on the negated row
        key = [-(rows[i][-1]) / d[i]] + [-(rows[i][j]) / d[i] for j in range(n)]
        if best is None or _lex_less(best[0], key):
            best = (key, i)
    r = best[1]
    leaving = basis[r]
    pivot(r, z0)
    history = [frozenset(basis)]
    entering = leaving + n  # complement of w_i is z_i
    pivots = 1
    while pivots < max_pivots:
        cands = [i for i in range(n) if rows[i][entering] > 0]
        if not cands:
            return _ray(inst, rows, basis, entering, pivots, history)
        best = None
        for i in cands:
            key = lex_key(i, entering)
            if best is None or _lex_less(key, best[0]):
                best = (key, i)
        r = best[1]
        leaving = basis[r]
        pivot(r, entering)
        pivots += 1
        history.append(frozenset(basis))
        if leaving == z0:
            z = [Fraction(0)] * n
            for i, b in enumerate(basis):
                if n <= b < 2 * n:
                    z[b - n] = rows[i][-1]
            sol = LcpSolution.from_z(inst, z)
            sol.residuals["pivots"] = pivots
            sol.residuals["basis_history"] = history
            return sol
        entering = leaving + n if leaving < n else leaving - n
    raise RuntimeError(f"Lemke exceeded {max_pivots} pivots")


def _ray(inst, rows, basis, entering, pivots, history):
    n = inst.n
    val = [Fraction(0)] * (2 * n + 1)
    dirn = [Fraction(0)] * (2 * n + 1)
    for i, b in enumerate(basis):
        val[b] = rows[i][-1]
        dirn[b] = -rows[i][entering]
    dirn[entering] = Fraction(1)
    arr = lambda v: np.array(v, dtype=object)  # noqa: E731
    return RayTermination(
        z=arr(val[n:2 * n]), w=arr(val[:n]), z0=val[2 * n],
        direction_z=arr(dirn[n:2 * n]), direction_w=arr(dirn[:n]), direction_z0=dirn[2 * n],
        pivots=pivots, basis_history=history,
    )


def strict_feasible_point(inst):
    """Exact z with z > 0 and q + A z > 0, or None if no such point exists.

    Maximizes t subject to z >= t e, q + A z >= t e, t <= 1 over free z.
    """
    n = inst.n
    a, q = inst.A, inst.q
    cons = []
    for i in range(n):
        row = [Fraction(int(i == j)) for j in range(n)] + [-1]
        cons.append(Constraint(row, GE, 0))
        cons.append(Constraint(list(a[i, :]) + [-1], GE, -q[i]))
    cons.append(Constraint([0] * n + [1], LE, 1))
    out = lp_solve(LpProblem([0] * n + [1], cons, "max", lower=[None] * (n + 1)))
    if out.status != "optimal" or out.value <= 0:
        return None
    return out.witness[:n]


def check_solution(inst, z, tol=0):
    """Verdict (bool) and residuals for a candidate z.

    Exact arithmetic when z is rational and tol == 0, else a tolerance test:
    z >= -tol, q + A z >= -tol, |z'(q + A z)| <= tol.
    """
    if tol == 0 and is_exact(z) and is_exact(inst.q):
        sol = LcpSolution.from_z(inst, z)
        r = sol.residuals
        ok = r["min_z"] >= 0 and r["min_w"] >= 0 and r["ztw"] == 0
        return ok, r
    z = np.asarray(z, dtype=float)
    w = np.asarray(inst.q, dtype=float) + inst.A.astype(float) @ z
    r = {"min_z": float(z.min()), "min_w": float(w.min()), "ztw": float(z @ w)}
    ok = r["min_z"] >= -tol and r["min_w"] >= -tol and abs(r["ztw"]) <= tol
    return ok, r
