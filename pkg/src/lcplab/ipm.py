"""Potential-reduction interior point method for LCP(q, A).

Minimizes psi(z, w) = kappa log(z'w) - sum log(z_i w_i) over the strictly
feasible region with w = q + A z. Each iteration takes the steepest descent
direction of psi inside the ellipse ||Z^-1 dz||^2 + ||W^-1 dw||^2 <= beta^2
(dw = A dz), then an Armijo backtracking step: trial steps gamma 2^-m for
m = 0, 1, 2, ... With kappa_slack = 0.01 and gamma = 0.5 the iterates on
``data/ipm_example.json`` match the reference trace in ``lcplab.regression``.
"""
import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InfeasibleStart, InternalInconsistency, IpmStall
from .lcp import LcpSolution, strict_feasible_point
from .rational import spd_solve


@dataclass
class IpmParams:
    beta: float = 0.5
    sigma: float = 0.2
    eps: float = 1e-5
    kappa_slack: float = 0.1
    max_iter: int = 10000
    max_halvings: int = 60
    gamma: float = 1.0  # first trial step of the line search
    z0: object = None  # positive vector, or None to compute one by LP

    def __post_init__(self):
        if not 0 < self.beta < 1:
            raise ValueError("beta must lie in (0, 1)")
        if not 0 < self.sigma < 0.5:
            raise ValueError("sigma must lie in (0, 1/2)")
        if self.eps <= 0 or self.kappa_slack < 0:
            raise ValueError("eps must be positive and kappa_slack nonnegative")
        if not 0 < self.gamma <= 1:
            raise ValueError("gamma must lie in (0, 1]")


@dataclass
class IpmStep:
    k: int
    z: np.ndarray
    w: np.ndarray
    ztw: float
    kappa: float = None
    rho: float = None
    psi: float = None
    dz: np.ndarray = None
    dw: np.ndarray = None
    tau: float = None
    r_norm: float = None
    slope: float = None  # grad_z'dz + grad_w'dw
    ellipse: float = None  # ||Z^-1 dz||^2 + ||W^-1 dw||^2
    m: int = None
    step: float = None  # gamma 2^-m
    psi_next: float = None  # psi at the accepted point, same kappa


@dataclass
class IpmTrace:
    steps: list = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def write_csv(self, path_or_file):
        if hasattr(path_or_file, "write"):
            _write_rows(path_or_file, self)
        else:
            with open(path_or_file, "w", newline="") as fh:
                _write_rows(fh, self)


def trace_header(n):
    return (["k"] + [f"z{i}" for i in range(1, n + 1)] + [f"w{i}" for i in range(1, n + 1)]
            + ["kappa", "tau", "m", "psi", "ztw"])


def _write_rows(fh, trace):
    writer = csv.writer(fh, lineterminator="\n")
    n = len(trace.steps[0].z) if trace.steps else 0
    writer.writerow(trace_header(n))
    opt = lambda v: "" if v is None else repr(float(v)) if not isinstance(v, int) else str(v)  # noqa: E731
    for s in trace.steps:
        writer.writerow([s.k] + [repr(float(v)) for v in s.z] + [repr(float(v)) for v in s.w]
                        + [opt(s.kappa), opt(s.tau), opt(s.m), opt(s.psi), repr(float(s.ztw))])


def merit_psi(z, w, kappa):
    """kappa log(z'w) - sum log(z_i w_i); +inf outside the positive orthant."""
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    if np.any(z <= 0) or np.any(w <= 0):
        return math.inf
    return kappa * math.log(float(z @ w)) - float(np.sum(np.log(z * w)))


def merit_gradients(z, w, kappa):
    ztw = float(z @ w)
    common = kappa / ztw - 1.0 / (z * w)
    return w * common, z * common


def select_kappa(z, w, slack):
    """kappa = (1 + slack) max(n, z'w / min_i z_i w_i); also returns rho."""
    rho = float(np.min(z * w))
    return (1.0 + slack) * max(len(z), float(z @ w) / rho), rho


def ipm_direction(z, w, a, kappa, beta):
    """Descent direction minimizing the linearized merit inside the ellipse.

    Returns (dz, dw, tau, r) with dz = -H^-1 r / tau, H = Z^-2 + A'W^-2 A,
    r = grad_z + A' grad_w and tau = sqrt(r'H^-1 r) / beta.
    """
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    a = np.asarray(a, dtype=float)
    gz, gw = merit_gradients(z, w, kappa)
    r = gz + a.T @ gw
    if not np.any(r):
        raise InternalInconsistency("merit gradient projection vanished (matrix not semimonotone?)")
    # H^-1 r = Z (I + B'B)^-1 Z r with B = W^-1 A Z (eigenvalues >= 1)
    b = (a * z) / w[:, None]
    scaled = np.eye(len(z)) + b.T @ b
    u = z * spd_solve(scaled, z * r)
    for _ in range(REFINE_STEPS):
        u = u + z * spd_solve(scaled, z * _exact_residual(z, w, a, r, u))
    tau = math.sqrt(float(r @ u)) / beta
    dz = -u / tau
    dw = a @ dz
    return dz, dw, tau, r


# H is ill conditioned near the solution (cond ~ 1e10 once z_i w_i ~ 1e-6);
# one refinement against an exact residual keeps the ellipse identity near 1e-12
REFINE_STEPS = 1


def _exact_residual(z, w, a, r, u):
    """r - H u with H = Z^-2 + A'W^-2 A, evaluated exactly on the float data."""
    fz = [Fraction(v) for v in z]
    fw = [Fraction(v) for v in w]
    fu = [Fraction(v) for v in u]
    n = len(fz)
    fa = [[Fraction(v) for v in row] for row in a]
    t = [sum(fa[i][j] * fu[j] for j in range(n)) / fw[i] ** 2 for i in range(n)]
    hu = [fu[j] / fz[j] ** 2 + sum(fa[i][j] * t[i] for i in range(n)) for j in range(n)]
    return np.array([float(Fraction(r[j]) - hu[j]) for j in range(n)])


def solve_ipm(inst, params=None):
    """Run the interior point method; returns (LcpSolution, IpmTrace).

    Raises InfeasibleStart when no strictly feasible start exists (or the
    given z0 is not one) and IpmStall when the iteration or halving budget
    runs out; the stall carries the trace.
    """
    p = params or IpmParams()
    a = np.asarray(inst.A, dtype=float)
    q = np.asarray(inst.q, dtype=float)
    if p.z0 is None:
        z0 = strict_feasible_point(inst)
        if z0 is None:
            raise InfeasibleStart("LCP has no strictly feasible point")
        z = np.array([float(v) for v in z0])
    else:
        z = np.asarray(p.z0, dtype=float).copy()
    w = q + a @ z
    if np.any(z <= 0) or np.any(w <= 0):
        raise InfeasibleStart(f"start z0 = {z} is not strictly feasible (w0 = {w})")

    trace = IpmTrace()
    k = 0
    while True:
        ztw = float(z @ w)
        step = IpmStep(k, z.copy(), w.copy(), ztw)
        trace.steps.append(step)
        if ztw <= p.eps:
            return LcpSolution.from_z(inst, z), trace
        if k >= p.max_iter:
            raise IpmStall(f"no convergence in {p.max_iter} iterations (z'w = {ztw:g})", trace)
        kappa, rho = select_kappa(z, w, p.kappa_slack)
        psi = merit_psi(z, w, kappa)
        dz, dw, tau, r = ipm_direction(z, w, a, kappa, p.beta)
        gz, gw = merit_gradients(z, w, kappa)
        slope = float(gz @ dz + gw @ dw)
        step.kappa, step.rho, step.psi = kappa, rho, psi
        step.dz, step.dw, step.tau, step.r_norm = dz, dw, tau, float(np.linalg.norm(r))
        step.slope = slope
        step.ellipse = float(np.sum((dz / z) ** 2) + np.sum((dw / w) ** 2))
        for m in range(p.max_halvings + 1):
            t = p.gamma * 2.0 ** -m
            z_new, w_new = z + t * dz, w + t * dw
            psi_new = merit_psi(z_new, w_new, kappa)
            if psi_new - psi <= p.sigma * t * slope:
                break
        else:
            raise IpmStall(f"line search exceeded {p.max_halvings} halvings at k = {k}", trace)
        step.m, step.step, step.psi_next = m, t, psi_new
        # w is recomputed from z so it never drifts from q + A z
        z, w = z_new, q + a @ z_new
        k += 1
