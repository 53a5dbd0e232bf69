import pytest

from boxq import (
    RatFunc,
    chevalley_to_equitable,
    evaluation_box_module,
    evaluation_module,
    pullback_psi,
    tensor,
)

Q = RatFunc.gen()


@pytest.fixture(scope="session")
def q():
    return Q


@pytest.fixture(scope="session")
def loop_q3():
    return evaluation_module(Q**3, "chevalley")


@pytest.fixture(scope="session")
def equi_q3():
    return evaluation_module(Q**3, "equitable")


@pytest.fixture(scope="session")
def box_q3():
    return evaluation_box_module(Q**3)


@pytest.fixture(scope="session")
def loop_d2():
    """Irreducible diameter-2 tensor module V(1,q^3) (x) V(1,q^-3)."""
    return tensor(
        evaluation_module(Q**3, "chevalley"), evaluation_module(Q**-3, "chevalley")
    )


@pytest.fixture(scope="session")
def box_d2(loop_d2):
    return pullback_psi(chevalley_to_equitable(loop_d2))
