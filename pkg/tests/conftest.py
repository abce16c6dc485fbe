import random

import pytest

from pqsurf.covers import SphericalSystem, enumerate_signature, hurwitz_move, validate_system
from pqsurf.permgroup import Permutation, group_from_generators, psl2_group

TRIPLE = ([[5, 3], [0, 8]], [[12, 3], [4, 0]], [[0, 2], [6, 6]])

D6_ROTATION = [[2, 0], [0, 7]]
A4_KLEIN = ([[0, 1], [12, 0]], [[1, 0], [0, 12]])


def dihedral(n: int):
    """D_n of order 2n on n points: rotation x -> x + 1 and reflection x -> -x."""
    r = Permutation([(x + 1) % n for x in range(n)])
    s = Permutation([(-x) % n for x in range(n)])
    return group_from_generators(n, [r, s], name=f"D{n}"), r, s


def reflection(n: int, k: int) -> Permutation:
    return Permutation([(k - x) % n for x in range(n)])


@pytest.fixture(scope="session")
def psl13():
    return psl2_group(13)


@pytest.fixture(scope="session")
def G(psl13):
    return psl13.group


@pytest.fixture(scope="session")
def triple(psl13):
    return [psl13.element(m) for m in TRIPLE]


@pytest.fixture(scope="session")
def system(G, triple):
    return validate_system(G, triple)


@pytest.fixture(scope="session")
def D7(G, psl13):
    return G.normalizer(G.subgroup_generated([psl13.element(TRIPLE[2])]))


@pytest.fixture(scope="session")
def D6(G, psl13):
    return G.normalizer(G.subgroup_generated([psl13.element(D6_ROTATION)]))


@pytest.fixture(scope="session")
def A4(G, psl13):
    return G.normalizer(G.subgroup_generated([psl13.element(m) for m in A4_KLEIN]))


@pytest.fixture(scope="session")
def d7_perms():
    return dihedral(7)


@pytest.fixture(scope="session")
def s3():
    return group_from_generators(3, [[1, 2, 0], [0, 2, 1]], name="S3")


@pytest.fixture(scope="session")
def s4():
    return group_from_generators(4, [[1, 2, 3, 0], [1, 0, 2, 3]], name="S4")


def scrambled(sys: SphericalSystem, rng: random.Random, moves: int = 5) -> SphericalSystem:
    """A random conjugate of `sys` followed by random Hurwitz moves in both directions."""
    result = sys.conjugate(rng.choice(sys.group.elements))
    for _ in range(moves):
        result = hurwitz_move(result, rng.randrange(1, len(result)), inverse=rng.random() < 0.5)
    return result


@pytest.fixture(scope="session")
def small_families():
    """Systems over small dihedral and symmetric groups, all of total genus >= 2."""
    d5, _, _ = dihedral(5)
    d6, _, _ = dihedral(6)
    symmetric = group_from_generators(4, [[1, 2, 3, 0], [1, 0, 2, 3]], name="S4")
    families = [
        enumerate_signature(d5, (2, 2, 2, 2, 5)),
        enumerate_signature(d6, (2, 2, 2, 2, 6)),
        enumerate_signature(symmetric, (2, 2, 3, 3)),
    ]
    assert all(families)
    return families


@pytest.fixture(scope="session")
def d7_pair(d7_perms):
    """Six reflections and a rotation: (s0^5, s6, r) and (s0^5, s5, r^2)."""
    group, r, _ = d7_perms
    s0, s5, s6 = reflection(7, 0), reflection(7, 5), reflection(7, 6)
    first = validate_system(group, [s0] * 5 + [s6, r])
    second = validate_system(group, [s0] * 5 + [s5, r**2])
    return first, second
