"""Principal pivot transforms of matrices and LCP right-hand sides."""
from dataclasses import dataclass

import numpy as np

from .errors import IllegitimatePivot
from .rational import complement, determinant, index_set, linear_solve, subsets


@dataclass
class PptResult:
    M: np.ndarray
    alpha: tuple
    legitimate: bool = True


def _blocks(a, alpha):
    n = a.shape[0]
    alpha = index_set(alpha, n)
    beta = complement(alpha, n)
    a_aa = a[np.ix_(alpha, alpha)]
    # inv(A_aa) @ [I | A_ab] in one exact solve
    rhs = np.concatenate([np.eye(len(alpha), dtype=int).astype(object), a[np.ix_(alpha, beta)]], axis=1)
    sol = linear_solve(a_aa, rhs)
    if sol is None:
        raise IllegitimatePivot(alpha)
    inv = sol[:, : len(alpha)]
    inv_a_ab = sol[:, len(alpha):]
    return alpha, beta, inv, inv_a_ab


def ppt_transform(a, alpha):
    """Pivot ``a`` on the principal block ``alpha``; blocks keep their positions."""
    a = np.asarray(a, dtype=object)
    if not alpha:
        return PptResult(a.copy(), ())
    alpha, beta, inv, inv_a_ab = _blocks(a, alpha)
    m = a.copy()
    a_ba = a[np.ix_(beta, alpha)]
    m[np.ix_(alpha, alpha)] = inv
    if beta:
        m[np.ix_(alpha, beta)] = -inv_a_ab
        m[np.ix_(beta, alpha)] = a_ba @ inv
        m[np.ix_(beta, beta)] = a[np.ix_(beta, beta)] - a_ba @ inv_a_ab
    return PptResult(m, alpha)


def ppt_rhs(q, a, alpha):
    """Transformed right-hand side q' of LCP(q, a) for the pivot on ``alpha``."""
    q = np.asarray(q, dtype=object)
    if not alpha:
        return q.copy()
    alpha, beta, inv, _ = _blocks(np.asarray(a, dtype=object), alpha)
    inv_q = inv @ q[list(alpha)]
    out = q.copy()
    out[list(alpha)] = -inv_q
    if beta:
        out[list(beta)] = q[list(beta)] - a[np.ix_(beta, alpha)] @ inv_q
    return out


def swap_pair(z, w, alpha):
    """Exchange z_alpha and w_alpha: maps LCP(q, A) solutions to LCP(q', M) ones."""
    z2, w2 = np.array(z, dtype=object), np.array(w, dtype=object)
    idx = list(alpha)
    z2[idx], w2[idx] = w2[idx], z2[idx].copy()
    return z2, w2


def is_legitimate(a, alpha):
    return not alpha or determinant(a[np.ix_(alpha, alpha)]) != 0


def enumerate_legitimate(a):
    """All alpha (empty set first, then lexicographic) with a nonsingular block."""
    a = np.asarray(a, dtype=object)
    return [alpha for alpha in subsets(a.shape[0], include_empty=True) if is_legitimate(a, alpha)]
