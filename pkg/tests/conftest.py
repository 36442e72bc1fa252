import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lcplab.rational import rmat

settings.register_profile(
    "default", deadline=None, max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def int_matrices(n_min=1, n_max=4, low=-3, high=3):
    """Hypothesis strategy for exact integer square matrices."""
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(low, high), min_size=n, max_size=n), min_size=n, max_size=n
        ).map(rmat)
    )


def rng_matrix(rng, n, low=-3, high=3):
    return rmat(rng.integers(low, high + 1, size=(n, n)))


def permutation_matrix(perm):
    n = len(perm)
    p = np.zeros((n, n), dtype=int)
    for i, j in enumerate(perm):
        p[i, j] = 1
    return rmat(p)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[num])
