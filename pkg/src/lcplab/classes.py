"""Certificate-producing matrix class membership tests.

Every detector enumerates supports (index sets) in lexicographic order and
decides a closed-form LP on each, so verdicts are exact and the first
violating support determines the witness.

Two reductions carry the whole module:

* Open systems. ``x_a > 0, A_aa x_a < 0`` is solvable iff ``x_a >= 1,
  A_aa x_a <= -1`` is, since any strict solution scales up to the closed one
  and the closed one is itself strict (homogeneity). Strict semimonotonicity
  uses ``A_aa x_a <= 0`` instead.

* Solutions of LCP(0, A). For a support ``a`` let

      C_a = {x >= 0, x = 0 off a, sum(x_a) = 1, A_aa x_a = 0, A_ba x_a >= 0}

  (``b`` the complement). Every point of C_a solves LCP(0, A): x >= 0,
  Ax >= 0 and x'Ax = x_a'(Ax)_a = 0. Conversely every nonzero solution,
  normalized, lies in C_a for its own support. C_a is closed, and its
  boundary points are solutions too, so optimizing a linear function over
  the union of the C_a is the same as over the normalized solution set.
"""
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InternalInconsistency, PreconditionError
from .lp import EQ, GE, LE, Constraint, LpProblem, game_value, lp_feasible, lp_solve
from .ppt import enumerate_legitimate, ppt_transform
from .rational import determinant, fmt_vec, subsets, to_fraction

CLASS_NAMES = (
    "E0", "E", "star", "E0s", "E0s_tilde", "completely_E0s", "P0", "P",
    "PSD", "Z", "C0", "C0star", "R0", "sufficient",
)


@dataclass
class ClassVerdict:
    member: bool
    witness: np.ndarray = None
    support: tuple = None
    block: tuple = None  # principal submatrix the witness refers to
    note: str = ""

    def describe(self):
        if self.member:
            return "yes"
        parts = ["no"]
        if self.note:
            parts.append(self.note)
        if self.block is not None:
            parts.append("block " + str(tuple(i + 1 for i in self.block)))
        if self.support is not None:
            parts.append("support " + str(tuple(i + 1 for i in self.support)))
        if self.witness is not None:
            parts.append("x = " + fmt_vec(self.witness))
        return ", ".join(parts)


def _asmat(a):
    a = np.asarray(a, dtype=object)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("square matrix required")
    return a


def _extend(xa, alpha, n):
    x = np.array([Fraction(0)] * n, dtype=object)
    x[list(alpha)] = xa
    return x


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


# ---------------------------------------------------------------- semimonotone

def _sign_system(a, alpha, bound):
    sub = a[np.ix_(alpha, alpha)]
    cons = [Constraint(sub[i, :], LE, bound) for i in range(len(alpha))]
    return lp_feasible(cons, len(alpha), lower=[1] * len(alpha))


def is_semimonotone(a):
    a = _asmat(a)
    n = a.shape[0]
    for alpha in subsets(n):
        xa = _sign_system(a, alpha, -1)
        if xa is not None:
            return ClassVerdict(False, _extend(xa / sum(xa), alpha, n), alpha)
    return ClassVerdict(True)


def is_strictly_semimonotone(a):
    a = _asmat(a)
    n = a.shape[0]
    for alpha in subsets(n):
        xa = _sign_system(a, alpha, 0)
        if xa is not None:
            return ClassVerdict(False, _extend(xa / sum(xa), alpha, n), alpha)
    return ClassVerdict(True)


# ------------------------------------------------------------ LCP(0, A) cones

def _cone(a, alpha):
    n = a.shape[0]
    beta = [i for i in range(n) if i not in alpha]
    k = len(alpha)
    cons = [Constraint([1] * k, EQ, 1)]
    cons += [Constraint(a[i, list(alpha)], EQ, 0) for i in alpha]
    cons += [Constraint(a[i, list(alpha)], GE, 0) for i in beta]
    return cons


def sol0_representatives(a):
    """One normalized point of LCP(0, A) per support whose cone is nonempty."""
    a = _asmat(a)
    n = a.shape[0]
    reps = []
    for alpha in subsets(n):
        xa = lp_feasible(_cone(a, alpha), len(alpha))
        if xa is not None:
            reps.append((alpha, _extend(xa, alpha, n)))
    return reps


def _optimize_over_cone(a, alpha, cons, coeffs, sense):
    out = lp_solve(LpProblem(coeffs, cons, sense))
    return out.value, _extend(out.witness, alpha, a.shape[0])


def star_property(a):
    """max_i (A'x)_i <= 0 for every x solving LCP(0, A)."""
    a = _asmat(a)
    n = a.shape[0]
    for alpha, _ in sol0_representatives(a):
        cons = _cone(a, alpha)
        for i in range(n):
            # (A'x)_i restricted to the support
            val, x = _optimize_over_cone(a, alpha, cons, a[list(alpha), i], "max")
            if val > 0:
                return ClassVerdict(False, x, alpha, note=f"(A'x)_{i + 1} = {val} > 0")
    return ClassVerdict(True)


def is_R0(a):
    a = _asmat(a)
    reps = sol0_representatives(a)
    if reps:
        alpha, x = reps[0]
        return ClassVerdict(False, x, alpha)
    return ClassVerdict(True)


def is_E0s(a):
    e0 = is_semimonotone(a)
    if not e0.member:
        e0.note = "not semimonotone"
        return e0
    st = star_property(a)
    if not st.member:
        st.note = "star fails: " + st.note
    return st


def _tilde_condition(a):
    """(Ax)_i = 0 forces (A'x)_i = 0 on LCP(0, A) solutions."""
    n = a.shape[0]
    for alpha, _ in sol0_representatives(a):
        base = _cone(a, alpha)
        for i in range(n):
            cons = base if i in alpha else base + [Constraint(a[i, list(alpha)], EQ, 0)]
            if i not in alpha and lp_feasible(cons, len(alpha)) is None:
                continue
            for sense in ("max", "min"):
                val, x = _optimize_over_cone(a, alpha, cons, a[list(alpha), i], sense)
                if val != 0:
                    return ClassVerdict(False, x, alpha, note=f"(A'x)_{i + 1} = {val} but (Ax)_{i + 1} = 0")
    return ClassVerdict(True)


def is_E0s_tilde(a):
    a = _asmat(a)
    base = is_E0s(a)
    if not base.member:
        return base
    return _tilde_condition(a)


def is_completely_E0s(a):
    a = _asmat(a)
    for beta in subsets(a.shape[0]):
        v = is_E0s(a[np.ix_(beta, beta)])
        if not v.member:
            return ClassVerdict(False, v.witness, v.support, block=beta, note=v.note)
    return ClassVerdict(True)


# ------------------------------------------------------------ minors, PSD, Z

def principal_minors(a):
    a = _asmat(a)
    return {alpha: determinant(a[np.ix_(alpha, alpha)]) for alpha in subsets(a.shape[0])}


def principal_minor_class(a):
    """Most specific of P, P0, almost-P0, N, N0 (else "none"), plus the minor table."""
    table = principal_minors(a)
    n = _asmat(a).shape[0]
    full = tuple(range(n))
    proper = [v for k, v in table.items() if k != full]
    det = table[full]
    if all(v > 0 for v in table.values()):
        label = "P"
    elif all(v >= 0 for v in table.values()):
        label = "P0"
    elif all(v >= 0 for v in proper) and det < 0:
        label = "almost-P0"
    elif all(v < 0 for v in table.values()):
        label = "N"
    elif all(v <= 0 for v in table.values()):
        label = "N0"
    else:
        label = "none"
    return label, table


def _minor_verdict(a, strict):
    for alpha, d in principal_minors(a).items():
        if d < 0 or (strict and d == 0):
            return ClassVerdict(False, support=alpha, note=f"minor {d}")
    return ClassVerdict(True)


def is_P0(a):
    return _minor_verdict(a, strict=False)


def is_P(a):
    return _minor_verdict(a, strict=True)


def _negative_direction(s):
    """x with x'Sx < 0 for symmetric exact S, or None when S is PSD."""
    n = s.shape[0]
    if n == 0:
        return None
    diag = [s[i, i] for i in range(n)]
    for i in range(n):
        if diag[i] < 0:
            return _extend([1], (i,), n)
    for i in range(n):
        if diag[i] == 0:
            for j in range(n):
                if j != i and s[i, j] != 0:
                    # x = t e_i + e_j gives 2 t s_ij + s_jj = -1
                    x = _extend([Fraction(0)], (i,), n)
                    x[i] = -(s[j, j] + 1) / (2 * s[i, j])
                    x[j] = Fraction(1)
                    return x
    piv = next((i for i in range(n) if diag[i] > 0), None)
    if piv is None:
        return None  # zero matrix
    rest = [j for j in range(n) if j != piv]
    col = s[rest, piv]
    schur = s[np.ix_(rest, rest)] - np.outer(col, col) / s[piv, piv]
    y = _negative_direction(schur)
    if y is None:
        return None
    x = _extend(y, rest, n)
    x[piv] = -_dot(col, y) / s[piv, piv]
    return x


def is_psd(a):
    """Positive semidefiniteness of the symmetric part."""
    a = _asmat(a)
    x = _negative_direction((a + a.T) / 2)
    if x is None:
        return ClassVerdict(True)
    return ClassVerdict(False, x, note=f"x'Ax = {_dot(x, a @ x)}")


def is_Z(a):
    a = _asmat(a)
    n = a.shape[0]
    for i in range(n):
        for j in range(n):
            if i != j and a[i, j] > 0:
                return ClassVerdict(False, support=(i, j), note=f"a_{i + 1}{j + 1} = {a[i, j]}")
    return ClassVerdict(True)


# ----------------------------------------------------------------- copositive

def is_copositive(a):
    """Face-wise stationarity LPs on the standard simplex for S = (A + A')/2.

    On face ``f``: minimize l s.t. 2 S_ff x = l e, sum(x) = 1, x >= 0. Any
    feasible point has x'Sx = l/2, so l < 0 refutes copositivity; and a
    minimizer of x'Sx over the simplex satisfies the face's KKT system, so
    some face reaches a negative l whenever the minimum is negative.
    """
    a = _asmat(a)
    n = a.shape[0]
    s2 = a + a.T
    for face in subsets(n):
        k = len(face)
        sub = s2[np.ix_(face, face)]
        # variables: x_face (>= 0), l (free)
        cons = [Constraint(list(sub[i, :]) + [-1], EQ, 0) for i in range(k)]
        cons.append(Constraint([1] * k + [0], EQ, 1))
        out = lp_solve(LpProblem([0] * k + [1], cons, "min", lower=[0] * k + [None]))
        if out.status == "optimal" and out.value < 0:
            x = _extend(out.witness[:k], face, n)
            return ClassVerdict(False, x, face, note=f"x'Ax = {_dot(x, a @ x)}")
    return ClassVerdict(True)


def is_copositive_star(a):
    c = is_copositive(a)
    if not c.member:
        return c
    st = star_property(a)
    if not st.member:
        st.note = "star fails: " + st.note
    return st


# ----------------------------------------------------------------- sufficient

def _col_violation(m):
    """u with u_i (m u)_i <= 0 for all i, not all zero; order 1 or 2 only."""
    if m.shape[0] == 1:
        return [Fraction(1)] if m[0, 0] < 0 else None
    (a, b), (c, d) = m
    if a < 0:
        return [Fraction(1), Fraction(0)]
    if d < 0:
        return [Fraction(0), Fraction(1)]
    # With a, d >= 0 a violation needs both coordinates nonzero; scale to
    # u = (t, 1), t != 0: f1 = t (a t + b), f2 = c t + d. Sign patterns of
    # (f1, f2) are constant between their roots, so roots, midpoints and one
    # point beyond each end decide the question exactly.
    roots = {Fraction(0)}
    if a != 0:
        roots.add(-Fraction(b) / a)
    if c != 0:
        roots.add(-Fraction(d) / c)
    pts = sorted(roots)
    cand = pts + [(p + q) / 2 for p, q in zip(pts, pts[1:])] + [pts[0] - 1, pts[-1] + 1]
    for t in sorted(cand):
        if t == 0:
            continue
        f1, f2 = t * (a * t + b), c * t + d
        if f1 <= 0 and f2 <= 0 and (f1 < 0 or f2 < 0):
            return [t, Fraction(1)]
    return None


def _pullback(m, u_full, alpha):
    """Map a column-sufficiency violation of the pivot M = ppt(A, alpha) back to A."""
    v = m @ u_full
    x = u_full.copy()
    x[list(alpha)] = v[list(alpha)]
    return x


def violates_column_sufficiency(a, x):
    p = x * (np.asarray(a, dtype=object) @ x)
    return all(v <= 0 for v in p) and any(v < 0 for v in p)


def is_sufficient(a):
    """Column and row sufficiency via pivots: A is sufficient iff every
    legitimate principal pivot transform is sufficient of order 2.

    Witnesses are pulled back to A (or A' for row violations); the products
    x_i (Ax)_i are invariant under the pivot's exchange of z_alpha and w_alpha.
    """
    a = _asmat(a)
    n = a.shape[0]
    if n == 1:
        if a[0, 0] < 0:
            return ClassVerdict(False, np.array([Fraction(1)], dtype=object), note="column")
        return ClassVerdict(True)
    small = [s for s in subsets(n) if len(s) <= 2]
    for alpha in enumerate_legitimate(a):
        m = ppt_transform(a, alpha).M
        for beta in small:
            blk = m[np.ix_(beta, beta)]
            u = _col_violation(blk)
            if u is not None:
                x = _pullback(m, _extend(u, beta, n), alpha)
                return ClassVerdict(False, x, block=alpha, note="column")
            u = _col_violation(blk.T)
            if u is not None:
                # M' = D N D with N = ppt(A', alpha), D = +1 on alpha, -1 off it
                d = np.array([1 if i in alpha else -1 for i in range(n)], dtype=object)
                nmat = ppt_transform(a.T, alpha).M
                x = _pullback(nmat, d * _extend(u, beta, n), alpha)
                return ClassVerdict(False, x, block=alpha, note="row")
    return ClassVerdict(True)


# ----------------------------------------------------------- L2 certificates

def in_sol0(a, x):
    a = _asmat(a)
    ax = a @ x
    return all(v >= 0 for v in x) and all(v >= 0 for v in ax) and _dot(x, ax) == 0


def l2_certificate(a, x):
    """Diagonal D1 >= 0, D2 = I with (D1 A + A' D2) x = 0 for x in SOL(0, A).

    (D1)_ii = -(A'x)_i / (Ax)_i where (Ax)_i != 0, else 0. Valid whenever A
    has the tilde property; a failed check means the caller's class verdict
    was wrong.
    """
    a = _asmat(a)
    x = np.array([to_fraction(v) for v in x], dtype=object)
    if not in_sol0(a, x):
        raise PreconditionError(f"{fmt_vec(x)} does not solve LCP(0, A)")
    n = a.shape[0]
    ax, atx = a @ x, a.T @ x
    d1 = np.array([[Fraction(0)] * n for _ in range(n)], dtype=object)
    for i in range(n):
        if ax[i] != 0:
            d1[i, i] = -atx[i] / ax[i]
    d2 = np.array([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], dtype=object)
    resid = (d1 @ a + a.T @ d2) @ x
    if any(d1[i, i] < 0 for i in range(n)) or any(v != 0 for v in resid):
        raise InternalInconsistency(f"L2 certificate fails at x = {fmt_vec(x)}")
    return d1, d2


# ------------------------------------------------------- witness verification

def _is_e0_witness(a, x):
    ax = a @ x
    return all(v >= 0 for v in x) and any(v > 0 for v in x) and all(ax[i] < 0 for i in range(len(x)) if x[i] > 0)


def _is_e_witness(a, x):
    ax = a @ x
    return all(v >= 0 for v in x) and any(v > 0 for v in x) and all(ax[i] <= 0 for i in range(len(x)) if x[i] > 0)


def _is_star_witness(a, x):
    return in_sol0(a, x) and any(v > 0 for v in a.T @ x)


def _is_tilde_witness(a, x):
    ax, atx = a @ x, a.T @ x
    return in_sol0(a, x) and any(ax[i] == 0 and atx[i] != 0 for i in range(len(x)))


def _is_c0_witness(a, x):
    return all(v >= 0 for v in x) and _dot(x, a @ x) < 0


def _is_e0s_witness(a, x):
    return _is_e0_witness(a, x) or _is_star_witness(a, x)


def verify_witness(name, a, v):
    """Exact re-check that a negative verdict's certificate shows a violation."""
    if v.member:
        return True
    a = _asmat(a)
    x = v.witness
    if name in ("P0", "P"):
        d = determinant(a[np.ix_(v.support, v.support)])
        return d < 0 if name == "P0" else d <= 0
    if name == "Z":
        i, j = v.support
        return i != j and a[i, j] > 0
    if x is None:
        return False
    checks = {
        "E0": _is_e0_witness,
        "E": _is_e_witness,
        "star": _is_star_witness,
        "R0": lambda m, y: in_sol0(m, y) and any(t != 0 for t in y),
        "E0s": _is_e0s_witness,
        "E0s_tilde": lambda m, y: _is_e0s_witness(m, y) or _is_tilde_witness(m, y),
        "PSD": lambda m, y: _dot(y, m @ y) < 0,
        "C0": _is_c0_witness,
        "C0star": lambda m, y: _is_c0_witness(m, y) or _is_star_witness(m, y),
        "sufficient": lambda m, y: violates_column_sufficiency(m, y) or violates_column_sufficiency(m.T, y),
    }
    if name == "completely_E0s":
        return _is_e0s_witness(a[np.ix_(v.block, v.block)], x)
    return checks[name](a, x)


# --------------------------------------------------------------------- report

DETECTORS = {
    "E0": is_semimonotone,
    "E": is_strictly_semimonotone,
    "star": star_property,
    "E0s": is_E0s,
    "E0s_tilde": is_E0s_tilde,
    "completely_E0s": is_completely_E0s,
    "P0": is_P0,
    "P": is_P,
    "PSD": is_psd,
    "Z": is_Z,
    "C0": is_copositive,
    "C0star": is_copositive_star,
    "R0": is_R0,
    "sufficient": is_sufficient,
}


@dataclass
class DerivedFlag:
    holds: bool
    route: str
    premises: dict = field(default_factory=dict)


@dataclass
class ClassReport:
    matrix: np.ndarray
    verdicts: dict
    minor_class: str
    game: object
    derived: dict
    certificates: list  # (support, x, D1) per LCP(0, A) cone when tilde holds

    def member(self, name):
        return self.verdicts[name].member


def _check_lattice(v):
    implications = [
        ("E0s", "E0"), ("E0s_tilde", "E0s"), ("C0star", "C0"), ("C0star", "star"),
        ("C0star", "E0s"), ("E0s", "star"), ("P", "P0"), ("E", "E0"),
        ("completely_E0s", "E0s"), ("PSD", "C0"), ("PSD", "P0"),
    ]
    for lhs, rhs in implications:
        if v[lhs].member and not v[rhs].member:
            raise InternalInconsistency(f"{lhs} holds but {rhs} does not")


def classify_full(a):
    a = _asmat(a)
    verdicts = {name: fn(a) for name, fn in DETECTORS.items()}
    _check_lattice(verdicts)
    label, _ = principal_minor_class(a)
    game = game_value(a)
    m = {k: v.member for k, v in verdicts.items()}
    v_pos = game.value > 0

    q_flag = DerivedFlag(m["E0"] and m["R0"], "E0 and R0 imply Q", {"E0": m["E0"], "R0": m["R0"]})
    via_q = q_flag.holds and m["R0"]
    via_game = m["E0s_tilde"] and v_pos
    qb_route = []
    if via_q:
        qb_route.append("Q and R0 imply Qb")
    if via_game:
        qb_route.append("tilde-E0s with v(A) > 0 implies Qb")
    qb_flag = DerivedFlag(
        via_q or via_game,
        "; ".join(qb_route) or "no route: needs Q and R0, or tilde-E0s with v(A) > 0",
        {"Q": q_flag.holds, "R0": m["R0"], "E0s_tilde": m["E0s_tilde"], "v(A)>0": v_pos},
    )

    certs = []
    if m["E0s_tilde"]:
        for alpha, x in sol0_representatives(a):
            d1, _ = l2_certificate(a, x)
            certs.append((alpha, x, d1))
    q0_flag = DerivedFlag(
        m["E0s_tilde"],
        "partial: tilde-E0s gives E0s and L2 (D2 = I), so A is an L-matrix, hence Q0",
        {"E0s_tilde": m["E0s_tilde"], "L2 certificates": len(certs)},
    )
    derived = {"Q": q_flag, "Qb": qb_flag, "Q0_via_L": q0_flag}
    return ClassReport(a, verdicts, label, game, derived, certs)
