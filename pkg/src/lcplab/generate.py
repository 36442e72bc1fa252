"""Instance generators: the bordered P0 construction and rejection sampling.

All randomness goes through ``numpy.random.default_rng(seed)``, so a seed
fixes the output exactly.
"""
import numpy as np

from .classes import CLASS_NAMES, DETECTORS, is_E0s_tilde, principal_minor_class
from .errors import GenerationExhausted, InputError, InternalInconsistency, PreconditionError
from .lcp import LcpInstance
from .rational import rmat, rvec


def bordered(block, col, row):
    """[[B, col], [row, 0]] as an exact (n+1)x(n+1) matrix."""
    b = rmat(block)
    col, row = rvec(col), rvec(row)
    n = b.shape[0]
    if len(col) != n or len(row) != n:
        raise InputError(f"border vectors must have length {n}")
    out = rmat(np.zeros((n + 1, n + 1), dtype=int))
    out[:n, :n] = b
    out[:n, n] = col
    out[n, :n] = row
    return out


def generate_structured(block, col=None, row=None, seed=0, high=3):
    """Border a P0 block with a positive column and a negative row.

    Missing border vectors are drawn from ``seed`` with entries in 1..high.
    The result is checked to be tilde-E0s before it is returned.
    """
    b = rmat(block)
    label, _ = principal_minor_class(b)
    if label not in ("P", "P0"):
        raise PreconditionError(f"block is not P0 (minor class {label})")
    rng = np.random.default_rng(seed)
    n = b.shape[0]
    if col is None:
        col = rng.integers(1, high + 1, size=n).tolist()
    if row is None:
        row = (-rng.integers(1, high + 1, size=n)).tolist()
    if any(v <= 0 for v in rvec(col)) or any(v >= 0 for v in rvec(row)):
        raise PreconditionError("need col > 0 and row < 0")
    a = bordered(b, col, row)
    verdict = is_E0s_tilde(a)
    if not verdict.member:
        raise InternalInconsistency(f"bordered P0 matrix failed tilde-E0s: {verdict.describe()}")
    return a


def random_p0_block(n, rng, high=2):
    """C'C + K - K' with small integer C, K: PSD plus skew, hence P0."""
    c = rng.integers(-high, high + 1, size=(n, n))
    k = rng.integers(-high, high + 1, size=(n, n))
    return rmat(c.T @ c + k - k.T)


def random_structured_instance(n, seed, high=3):
    """A size-n bordered matrix with a q that admits a strictly feasible start.

    q = w0 - A z0 for positive integer z0, w0, so z0 is strictly feasible.
    Returns (LcpInstance, z0).
    """
    rng = np.random.default_rng(seed)
    a = generate_structured(random_p0_block(n - 1, rng), seed=int(rng.integers(2**32)), high=high)
    z0 = rng.integers(1, high + 1, size=n)
    w0 = rng.integers(1, high + 1, size=n)
    q = rvec(w0) - a @ rvec(z0)
    return LcpInstance(a, q), rvec(z0)


def random_matrix(n, rng, low=-3, high=3):
    return rmat(rng.integers(low, high + 1, size=(n, n)))


def generate_random(classfilter, n, seed, budget=10000, low=-3, high=3):
    """First integer matrix (entries low..high) passing ``classfilter``.

    ``classfilter`` is a detector name or "none". Raises GenerationExhausted
    after ``budget`` draws.
    """
    if classfilter not in CLASS_NAMES and classfilter != "none":
        raise InputError(f"unknown class {classfilter!r}; choose from none, {', '.join(CLASS_NAMES)}")
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        a = random_matrix(n, rng, low, high)
        if classfilter == "none" or DETECTORS[classfilter](a).member:
            return a
    raise GenerationExhausted(budget, classfilter)
