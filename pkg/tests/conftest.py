import pytest

from kernelchain import new_map, new_space


@pytest.fixture
def space_e1():
    """Four unit atoms; the running example space."""
    return new_space(["1", "2", "3", "4"], [1, 1, 1, 1])


@pytest.fixture
def tau_e1(space_e1):
    """1->2, 2->3, 3->3, 4->3: one 3-step tail into the fixed point 3."""
    return new_map(space_e1, {"1": "2", "2": "3", "3": "3", "4": "3"})


@pytest.fixture
def space_e2():
    return new_space(["1", "2", "3"], [1, 1, 1])


@pytest.fixture
def tau_e2(space_e2):
    """The 3-cycle 1->2->3->1 (a measure-preserving permutation)."""
    return new_map(space_e2, {"1": "2", "2": "3", "3": "1"})
