from collections import Counter

import pytest
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup

from pqsurf.errors import ResourceCapError, ValidationError
from pqsurf.permgroup import (Permutation, Subgroup, group_from_generators, psl2_group, structure_label,
                               subgroup_classes)

from conftest import TRIPLE, dihedral


def test_composition_applies_left_factor_first():
    g = Permutation([1, 2, 0])
    h = Permutation([0, 2, 1])
    assert (g * h).images == tuple(h(g(x)) for x in range(3))
    assert (g * h) != (h * g)


def test_inverse_power_and_order():
    g = Permutation.from_cycles(7, (0, 1, 2), (3, 4))
    assert g.order == 6
    assert (g * ~g).is_identity()
    assert g**-1 == ~g
    assert g**6 == Permutation.identity(7)
    assert g**7 == g
    assert g.cycles() == [(0, 1, 2), (3, 4)]


def test_order_agrees_with_sympy():
    for images in ([1, 2, 0, 4, 3], [4, 3, 2, 1, 0], [1, 0, 3, 4, 2]):
        assert Permutation(images).order == SympyPermutation(images).order()


def test_rejects_non_bijection():
    with pytest.raises(ValidationError):
        Permutation([0, 0, 1])


def test_group_order_matches_sympy():
    gens = [[1, 2, 3, 4, 0], [1, 0, 2, 3, 4]]
    G = group_from_generators(5, gens)
    assert G.order == PermutationGroup([SympyPermutation(g) for g in gens]).order() == 120


def test_order_cap():
    with pytest.raises(ResourceCapError):
        group_from_generators(5, [[1, 2, 3, 4, 0], [1, 0, 2, 3, 4]], order_cap=50)


def test_s3_classes(s3):
    assert [(c.element_order, c.size) for c in s3.classes] == [(1, 1), (2, 3), (3, 2)]
    assert sum(c.size for c in s3.classes) == 6


def test_psl13_order_and_degree(psl13):
    assert psl13.group.order == 1092
    assert psl13.group.degree == 14


def test_psl13_rejects_bad_q():
    for q in (2, 12, 15):
        with pytest.raises(ValidationError):
            psl2_group(q)


def test_matrix_elements(psl13):
    assert psl13.element([[5, 3], [0, 8]]).order == 2
    assert psl13.element([[12, 3], [4, 0]]).order == 3
    assert psl13.element([[0, 2], [6, 6]]).order == 7
    assert psl13.element([[1, 0], [0, 1]]).is_identity()
    # scalar matrices act trivially
    assert psl13.element([[2, 0], [0, 2]]).is_identity()


def test_matrix_rejections(psl13):
    with pytest.raises(ValidationError):
        psl13.element([[1, 2], [2, 4]])
    # determinant 2 is not a square mod 13
    with pytest.raises(ValidationError):
        psl13.element([[2, 0], [0, 1]])
    with pytest.raises(ValidationError):
        psl13.element([[1, 2, 3], [4, 5, 6]])


def test_matrix_map_is_homomorphism(psl13):
    A, B = [[5, 3], [0, 8]], [[0, 2], [6, 6]]
    AB = [[sum(A[i][k] * B[k][j] for k in range(2)) % 13 for j in range(2)] for i in range(2)]
    assert psl13.element(A) * psl13.element(B) == psl13.element(AB)


def test_triple_product_and_generation(G, triple):
    g1, g2, g3 = triple
    assert (g1 * g2 * g3).is_identity()
    assert G.generates(triple)
    assert not G.generates([g3])


def test_psl13_classes(G):
    assert len(G.classes) == 9
    assert sum(c.size for c in G.classes) == 1092
    histogram = Counter(g.order for g in G.elements)
    assert histogram == {1: 1, 2: 91, 3: 182, 6: 182, 7: 468, 13: 168}
    assert sorted(c.size for c in G.classes if c.element_order == 7) == [156, 156, 156]


def test_are_conjugate_returns_conjugator(G, psl13):
    g = psl13.element([[0, 2], [6, 6]])
    cls = G.class_of(g)
    for h in cls.elements[:10]:
        ok, x = G.are_conjugate(g, h)
        assert ok and x * g * ~x == h
    ok, x = G.are_conjugate(g, g**2)
    assert not ok and x is None


def test_outer_automorphism_swaps_unipotent_classes(G, psl13):
    g = psl13.element([[1, 1], [0, 1]])
    image = psl13.outer_automorphism(g)
    assert image in G
    assert image.order == 13
    assert G.class_index(image) != G.class_index(g)
    # order-7 classes are stable
    r = psl13.element([[0, 2], [6, 6]])
    assert G.class_index(psl13.outer_automorphism(r)) == G.class_index(r)


def test_coset_action_is_right_action(G, D7, triple):
    space = G.coset_action(D7)
    assert space.index == 78
    g1, g2, _ = triple
    for c in range(space.index):
        assert space.act(g1 * g2, c) == space.act(g2, space.act(g1, c))
    assert sum(len(cycle) for cycle in space.cycles(g1)) == 78


def test_double_coset_sizes_sum_to_product_of_indices(G, triple):
    g1, _, g3 = triple
    A = G.subgroup_generated([g1])
    B = G.subgroup_generated([g3])
    orbits = G.double_coset_orbits(A, B)
    assert sum(o.size for o in orbits) == A.index * B.index == 546 * 156
    for o in orbits:
        assert G.order % o.size == 0
        stabilizer = [a for a in A.elements if o.representative * a * ~o.representative in B]
        assert o.size == G.order // len(stabilizer)


def test_double_coset_small_cases(s3):
    D5, _, _ = dihedral(5)
    assert len(D5.double_coset_orbits(D5.whole, D5.whole)) == 1
    trivial = D5.trivial_subgroup
    orbits = D5.double_coset_orbits(trivial, trivial)
    assert len(orbits) == D5.order
    assert all(o.size == D5.order for o in orbits)
    transposition, three_cycle = s3.classes[1].representative, s3.classes[2].representative
    A = s3.subgroup_generated([transposition])
    B = s3.subgroup_generated([three_cycle])
    assert [o.size for o in s3.double_coset_orbits(A, B)] == [6]


def test_normalizer_subgroups(D7, D6, A4):
    assert (D7.order, D7.label) == (14, "D7")
    assert (D6.order, D6.label) == (12, "D6")
    assert (A4.order, A4.label) == (12, "A4")


def test_subgroup_order_must_divide():
    G, _, _ = dihedral(5)
    with pytest.raises(ValidationError):
        Subgroup(G, G.elements[:3])


def test_structure_labels_small():
    G, r, s = dihedral(6)
    assert structure_label(G.subgroup_generated([r])) == "C6"
    assert structure_label(G.subgroup_generated([r**3, s])) == "C2^2"
    assert structure_label(G.subgroup_generated([r**2, s])) == "S3"


def test_as_group_classes(D7):
    H = D7.as_group()
    assert H.order == 14
    assert [c.size for c in H.classes] == [1, 7, 2, 2, 2]


@pytest.mark.slow
def test_psl13_subgroup_lattice(G):
    classes = subgroup_classes(G, 2)
    assert len(classes) == 16
    by_label = {}
    for cls in classes:
        by_label.setdefault(cls.label, []).append(cls)
    assert by_label["D7"][0].conjugates == 78
    assert by_label["D6"][0].conjugates == 91
    assert by_label["A4"][0].conjugates == 91
    assert len(by_label["S3"]) == 2
    assert {"D13", "C13:C3", "C13:C6", "PSL(2,13)"} <= set(by_label)


def test_psl13_from_matrices_matches_job_triple(psl13):
    assert [psl13.element(m).order for m in TRIPLE] == [2, 3, 7]
