import numpy as np
import pytest

from lcplab.classes import is_E0s_tilde, is_P0
from lcplab.errors import GenerationExhausted, InputError, PreconditionError
from lcplab.generate import (
    bordered, generate_random, generate_structured, random_p0_block, random_structured_instance,
)
from lcplab.io import MatrixDocument, dumps
from lcplab.rational import identity, rmat


def test_identity_block():
    a = generate_structured(identity(2), [1, 1], [-1, -1])
    assert a.tolist() == [[1, 0, 1], [0, 1, 1], [-1, -1, 0]]


@pytest.mark.parametrize("a11", [0, 1, 3])
def test_one_by_one_block(a11):
    a = generate_structured([[a11]], [2], [-1])
    assert a.shape == (2, 2) and is_E0s_tilde(a).member


def test_block_must_be_p0():
    with pytest.raises(PreconditionError):
        generate_structured([[-1]], [1], [-1])


def test_border_signs_checked():
    with pytest.raises(PreconditionError):
        generate_structured(identity(2), [1, 0], [-1, -1])
    with pytest.raises(PreconditionError):
        generate_structured(identity(2), [1, 1], [-1, 1])


def test_border_length_checked():
    with pytest.raises(InputError):
        bordered(identity(2), [1], [-1, -1])


def test_random_blocks_are_p0():
    rng = np.random.default_rng(0)
    for n in range(1, 5):
        for _ in range(10):
            assert is_P0(random_p0_block(n, rng)).member


def test_structured_instance_start_is_strict():
    inst, z0 = random_structured_instance(4, 3)
    assert all(v > 0 for v in z0) and all(v > 0 for v in inst.q + inst.A @ z0)


def test_random_p0_deterministic():
    a = generate_random("P0", 3, 7)
    assert is_P0(a).member
    assert dumps(MatrixDocument(a)) == dumps(MatrixDocument(generate_random("P0", 3, 7)))


def test_random_unfiltered_is_raw_draw():
    a = generate_random("none", 3, 1)
    rng = np.random.default_rng(1)
    assert a.tolist() == rmat(rng.integers(-3, 4, size=(3, 3))).tolist()


def test_exhausted_budget_reports_count():
    with pytest.raises(GenerationExhausted) as exc:
        generate_random("P", 3, 0, budget=5, low=-3, high=-1)
    assert exc.value.attempts == 5 and "5 draws" in str(exc.value)


def test_unknown_filter():
    with pytest.raises(InputError):
        generate_random("Q", 3, 0)


def test_same_seed_same_structured_matrix():
    a1, _ = random_structured_instance(4, 11)
    a2, _ = random_structured_instance(4, 11)
    assert a1.A.tolist() == a2.A.tolist() and list(a1.q) == list(a2.q)
