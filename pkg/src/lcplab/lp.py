"""Exact rational linear programming and matrix game values.

Two-phase dense tableau simplex over ``Fraction`` with Bland's rule, so it
always terminates and never needs a tolerance.
"""
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InternalInconsistency
from .rational import rvec, to_fraction

LE, EQ, GE = "<=", "=", ">="


@dataclass
class Constraint:
    coeffs: np.ndarray
    rel: str
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in (LE, EQ, GE):
            raise ValueError(f"bad relation {self.rel!r}")
        self.coeffs = rvec(self.coeffs)
        self.rhs = to_fraction(self.rhs)


@dataclass
class LpProblem:
    """``sense`` the objective subject to constraints and per-variable lower bounds.

    ``lower[j]`` is a rational lower bound or None for a free variable; when
    ``lower`` itself is None every variable is nonnegative.
    """

    objective: np.ndarray
    constraints: list
    sense: str = "max"
    lower: list = None

    def __post_init__(self):
        self.objective = rvec(self.objective)
        n = len(self.objective)
        if self.lower is None:
            self.lower = [Fraction(0)] * n
        else:
            self.lower = [None if b is None else to_fraction(b) for b in self.lower]
        if len(self.lower) != n:
            raise ValueError("lower bounds do not match objective length")
        for c in self.constraints:
            if len(c.coeffs) != n:
                raise ValueError("constraint width does not match objective length")
        if self.sense not in ("max", "min"):
            raise ValueError(f"bad sense {self.sense!r}")

    @property
    def nvars(self):
        return len(self.objective)


@dataclass
class LpOutcome:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction = None
    witness: np.ndarray = None  # optimal point, or improving ray when unbounded
    point: np.ndarray = None  # a feasible point (set for optimal and unbounded)


@dataclass
class GameValue:
    """Value of the zero-sum game max_x min_i (Ax)_i over mixed strategies.

    ``col_strategy`` is the maximizing mix over columns (the x of ``Ax``),
    ``row_strategy`` the minimizing mix over rows.
    """

    value: Fraction
    row_strategy: np.ndarray
    col_strategy: np.ndarray
    shift: Fraction = field(default=Fraction(0), repr=False)


class _Tableau:
    def __init__(self, rows, basis, ncols):
        self.rows = rows  # each row: ncols coefficients followed by rhs
        self.basis = basis
        self.ncols = ncols
        self.obj = None

    def set_cost(self, cost):
        obj = list(cost) + [Fraction(0)]
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                obj = [o - cb * r for o, r in zip(obj, row)]
        self.obj = obj

    def pivot(self, r, c):
        prow = self.rows[r]
        p = prow[c]
        prow = [x / p for x in prow]
        self.rows[r] = prow
        for i, row in enumerate(self.rows):
            f = row[c]
            if i != r and f:
                self.rows[i] = [x - f * y for x, y in zip(row, prow)]
        f = self.obj[c]
        if f:
            self.obj = [x - f * y for x, y in zip(self.obj, prow)]
        self.basis[r] = c

    def run(self, allowed):
        """Maximize; returns None at optimum or the entering column of a ray."""
        while True:
            entering = next((j for j in range(self.ncols) if allowed[j] and self.obj[j] > 0), None)
            if entering is None:
                return None
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return entering
            self.pivot(best[1], entering)

    def primal(self):
        y = [Fraction(0)] * self.ncols
        for i, b in enumerate(self.basis):
            y[b] = self.rows[i][-1]
        return y


def lp_solve(p):
    """Solve an LpProblem exactly. Never raises for infeasible/unbounded input."""
    n = p.nvars
    # column map: original var -> list of (column, sign)
    cols, shift = [], []
    ncol = 0
    for lb in p.lower:
        if lb is None:
            cols.append([(ncol, 1), (ncol + 1, -1)])
            ncol += 2
            shift.append(Fraction(0))
        else:
            cols.append([(ncol, 1)])
            ncol += 1
            shift.append(lb)
    nstruct = ncol

    raw = []
    for con in p.constraints:
        coeff = [Fraction(0)] * nstruct
        for j in range(n):
            a = con.coeffs[j]
            if a:
                for c, s in cols[j]:
                    coeff[c] += s * a
        rhs = con.rhs - sum(con.coeffs[j] * shift[j] for j in range(n))
        rel = con.rel
        if rhs < 0:
            coeff = [-x for x in coeff]
            rhs = -rhs
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        raw.append((coeff, rel, rhs))

    m = len(raw)
    nslack = sum(1 for _, rel, _ in raw if rel != EQ)
    nart = sum(1 for _, rel, _ in raw if rel != LE)
    ncols = nstruct + nslack + nart
    rows, basis = [], []
    s_at, a_at = nstruct, nstruct + nslack
    artificial = []
    for coeff, rel, rhs in raw:
        row = coeff + [Fraction(0)] * (nslack + nart) + [rhs]
        if rel == LE:
            row[s_at] = Fraction(1)
            basis.append(s_at)
            s_at += 1
        else:
            if rel == GE:
                row[s_at] = Fraction(-1)
                s_at += 1
            row[a_at] = Fraction(1)
            basis.append(a_at)
            artificial.append(a_at)
            a_at += 1
        rows.append(row)

    tab = _Tableau(rows, basis, ncols)
    if artificial:
        cost = [Fraction(0)] * ncols
        for a in artificial:
            cost[a] = Fraction(-1)
        tab.set_cost(cost)
        tab.run([True] * ncols)
        if tab.obj[-1] != 0:  # obj[-1] = -(phase-1 objective) = sum of artificials
            return LpOutcome("infeasible")
        art = set(artificial)
        for i in range(len(tab.rows) - 1, -1, -1):
            if tab.basis[i] in art:
                j = next((j for j in range(nstruct + nslack) if tab.rows[i][j] != 0), None)
                if j is None:
                    del tab.rows[i]
                    del tab.basis[i]
                else:
                    tab.pivot(i, j)
    allowed = [j < nstruct + nslack for j in range(ncols)]

    sign = 1 if p.sense == "max" else -1
    cost = [Fraction(0)] * ncols
    for j in range(n):
        for c, s in cols[j]:
            cost[c] += sign * s * p.objective[j]
    tab.set_cost(cost)
    ray_col = tab.run(allowed)

    def to_x(y, with_shift=True):
        x = []
        for j in range(n):
            v = sum(s * y[c] for c, s in cols[j])
            x.append(v + shift[j] if with_shift else v)
        return np.array(x, dtype=object)

    point = to_x(tab.primal())
    if ray_col is not None:
        d = [Fraction(0)] * ncols
        d[ray_col] = Fraction(1)
        for i, b in enumerate(tab.basis):
            d[b] = -tab.rows[i][ray_col]
        return LpOutcome("unbounded", witness=to_x(d, with_shift=False), point=point)
    value = sum((c * x for c, x in zip(p.objective, point)), Fraction(0))
    return LpOutcome("optimal", value=value, witness=point, point=point)


def satisfies(constraints, x, lower=None, homogeneous=False):
    """Exact check of ``x`` against constraints (rhs taken as 0 if homogeneous)."""
    for c in constraints:
        lhs = sum((a * v for a, v in zip(c.coeffs, x)), Fraction(0))
        rhs = Fraction(0) if homogeneous else c.rhs
        if c.rel == LE and lhs > rhs or c.rel == GE and lhs < rhs or c.rel == EQ and lhs != rhs:
            return False
    if lower is not None:
        for lb, v in zip(lower, x):
            if lb is not None and v < (0 if homogeneous else lb):
                return False
    return True


def verify_outcome(p, out):
    """Re-check an outcome against the raw problem; True when it holds up."""
    if out.status == "infeasible":
        return out.witness is None
    if not satisfies(p.constraints, out.point, p.lower):
        return False
    if out.status == "optimal":
        return sum((c * x for c, x in zip(p.objective, out.witness)), Fraction(0)) == out.value
    d = out.witness
    gain = sum((c * x for c, x in zip(p.objective, d)), Fraction(0))
    improving = gain > 0 if p.sense == "max" else gain < 0
    return improving and satisfies(p.constraints, d, p.lower, homogeneous=True)


def lp_feasible(constraints, nvars, lower=None):
    """Return a feasible point of the constraint system, or None."""
    out = lp_solve(LpProblem([0] * nvars, constraints, "max", lower))
    return out.point if out.status == "optimal" else None


def game_value(a):
    """Exact value and optimal strategies of the matrix game with payoff ``a``.

    Both players' LPs are solved independently on the shifted payoff
    ``a + s`` (all entries >= 1); their values must agree exactly.
    """
    a = np.asarray(a, dtype=object)
    n, m = a.shape
    s = max(Fraction(1), 1 - min(a.ravel()))
    b = a + s
    ones_m = [1] * m
    ones_n = [1] * n
    # column player: min sum(u) s.t. b u >= 1, u >= 0; value = 1/sum(u)
    col = lp_solve(LpProblem(ones_m, [Constraint(b[i, :], GE, 1) for i in range(n)], "min"))
    # row player: max sum(y) s.t. b^T y <= 1, y >= 0
    row = lp_solve(LpProblem(ones_n, [Constraint(b[:, j], LE, 1) for j in range(m)], "max"))
    if col.status != "optimal" or row.status != "optimal" or col.value != row.value:
        raise InternalInconsistency(f"game LPs disagree: {col.value} vs {row.value}")
    vb = 1 / col.value
    return GameValue(vb - s, row.witness * vb, col.witness * vb, s)
