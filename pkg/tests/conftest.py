import pytest

from linsusp.gog import DehnTwist, Splitting
from linsusp.suspension import suspend


@pytest.fixture(scope="session")
def ex1():
    """Running example: fiber F(a, b, q) split over a path graph.

    Whites: 0 = <a, b>, 1 = <p, q> with p identified to a across the
    black vertex 2; edges 0: x -> a and 1: x -> p.  The twist puts p on
    edge 1, inducing a -> a, b -> b, q -> a^-1 q a (global letters a, b,
    c with c the image of q).
    """
    return Splitting({0: 2, 1: 2}, [2], [(2, 0, (1,)), (2, 1, (1,))], base=0)


@pytest.fixture(scope="session")
def ex1_twist(ex1):
    return DehnTwist(ex1, {1: 1})


@pytest.fixture(scope="session")
def ex1_susp(ex1, ex1_twist):
    return suspend(ex1, ex1_twist)


@pytest.fixture(scope="session")
def ex2():
    """HNN-shaped splitting: one white <a, b>, one black, two edges with
    images a and b; the second edge is not in the spanning tree, so the
    fiber is F(a, s) with b = s^-1 a s."""
    return Splitting({0: 2}, [1], [(1, 0, (1,)), (1, 0, (2,))], base=0)


@pytest.fixture(scope="session")
def ex1_reps(ex1_susp):
    from linsusp.mwp import delta1_coset_reps
    return delta1_coset_reps(ex1_susp)
