import random
from fractions import Fraction

import pytest

from hermlie import algebra as al
from hermlie.hermitian import ComplexStructure, Metric
from hermlie.salamon import parse_salamon

Q = Fraction


@pytest.fixture(scope="session")
def aff():
    return parse_salamon("(0,21)")


@pytest.fixture(scope="session")
def h3():
    return parse_salamon("(0,0,21)")


@pytest.fixture(scope="session")
def cx_type_I():
    """aff + heis3 + R: [e1,e2] = e2, [e3,e4] = e5."""
    return parse_salamon("(0,21,0,0,43,0)")


@pytest.fixture(scope="session")
def cx_type_III():
    return parse_salamon("(-15+16,-25+26,2.(35+46),2.(36+45),0,0)")


@pytest.fixture(scope="session")
def j_std6():
    return ComplexStructure.standard(6)


@pytest.fixture(scope="session")
def j_type_III():
    return ComplexStructure.from_pairs(6, [(1, 2), (3, 5), (4, 6)])


@pytest.fixture(scope="session")
def g_identity6():
    return Metric.identity(6)


@pytest.fixture(scope="session")
def ghat_type_I():
    frame = [
        (1, 0, 0, 0, 0, -1),
        (0, 1, 0, 0, 1, 0),
        (0, 0, 0, 0, 0, 1),
        (0, 0, 0, 0, -1, 0),
        (0, 0, 1, 0, 0, 0),
        (0, 0, 0, 1, 0, 0),
    ]
    return Metric.from_orthonormal_frame(frame)


@pytest.fixture(scope="session")
def ghat_type_III():
    frame = [
        (1, 0, 0, 0, 0, 0),
        (0, 1, 0, 0, 0, 0),
        (0, 0, 1, 0, 0, 0),
        (0, 0, 0, 0, 1, 0),
        (0, 0, 1, 1, 0, 0),
        (0, 0, 0, 0, 1, 1),
    ]
    return Metric.from_orthonormal_frame(frame)


def random_table(rng: random.Random, dim: int, entries: int):
    """A random (usually Jacobi-violating) sparse bracket table."""
    seen = set()
    constants = []
    for _ in range(entries):
        i = rng.randint(1, dim - 1)
        j = rng.randint(i + 1, dim)
        k = rng.randint(1, dim)
        if (i, j, k) in seen:
            continue
        seen.add((i, j, k))
        constants.append((i, j, k, Q(rng.randint(-2, 2), rng.randint(1, 2))))
    return al.make_algebra(dim, constants)
