import pytest

from pqsurf.covers import enumerate_systems, push_to_subgroup
from pqsurf.errors import DecompositionError, ResourceCapError, ValidationError
from pqsurf.fundgroup import (CertificateBounds, GoodPresentationWitness, Presentation, ShapeCertificate,
                              check_relator_shapes, cyclic_equal, evaluate, find_condition2_data, format_word,
                              free_reduce, pi1_trivial_certificate, power_word, shortest_words, todd_coxeter,
                              verify_presentation)
from pqsurf.params import Pi1Status, Shape

from conftest import dihedral


def dihedral_presentation(n: int) -> Presentation:
    return Presentation(2, [power_word(0, n), power_word(1, 2), (1, 2, 1, -2)], ["r", "s"])


def test_free_and_cyclic_reduction():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert cyclic_equal((1, 2, -1), (2,))
    assert cyclic_equal((1, 2, 3), (3, 1, 2))
    assert not cyclic_equal((1, 2), (1, -2))


def test_format_word():
    assert format_word((2,) * 7, ["s", "r"]) == "r^7"
    assert format_word(()) == "1"
    assert format_word((1, -2, -2)) == "a1 a2^-2"


def test_presentation_normalizes_relators():
    pres = Presentation(2, [(1, 1), (1, -2, 2, 1), (2, 1, 2, -1)], ["s", "r"])
    assert pres.relators == ((1, 1), (2, 1, 2, -1))
    assert repr(pres) == "<s, r | s^2, r s r s^-1>"
    with pytest.raises(ValidationError):
        Presentation(1, [(2,)])


def test_todd_coxeter_dihedral_seven():
    table = todd_coxeter(dihedral_presentation(7))
    assert table.index == 14
    for relator in dihedral_presentation(7).relators:
        assert all(table.act(c, relator) == c for c in range(table.index))


def test_todd_coxeter_small_families():
    for n in range(1, 51):
        assert todd_coxeter(Presentation(1, [power_word(0, n)])).index == n
    for n in range(2, 51):
        assert todd_coxeter(dihedral_presentation(n)).index == 2 * n


def test_todd_coxeter_subgroup_and_coxeter():
    assert todd_coxeter(Presentation(1, [power_word(0, 5)]), [(1,)]).index == 1
    coxeter = Presentation(2, [(1, 1), (2, 2), (1, 2) * 6])
    assert todd_coxeter(coxeter).index == 12
    assert todd_coxeter(Presentation(2, [(1, 1), (2, 2, 2), (1, 2) * 5])).index == 60
    assert todd_coxeter(Presentation(2, [(1,), (2,)])).index == 1


def test_todd_coxeter_cap():
    with pytest.raises(ResourceCapError):
        todd_coxeter(Presentation(2, [(1, 1), (2, 2, 2), (1, 2) * 7]), coset_cap=2000)


def test_verify_presentation():
    group, r, s = dihedral(7)
    assert verify_presentation(dihedral_presentation(7), group, [r, s]) is True
    # relators die and the images generate, but the presented group has order 28
    assert verify_presentation(dihedral_presentation(14), group, [r, s]) is False
    assert verify_presentation(dihedral_presentation(7).with_relator((2,)), group, [r, s]) is False
    assert verify_presentation(Presentation(2, [power_word(0, 7), power_word(1, 2)]), group, [r, s], 500) is None
    with pytest.raises(ValidationError):
        verify_presentation(dihedral_presentation(7), group, [r])


def test_shortest_words_are_shortlex():
    group, r, s = dihedral(7)
    words = shortest_words([r, s], 7)
    assert len(words) == group.order
    assert words[r**2] == (1, 1)
    assert words[~r] == (-1,)
    for element, word in words.items():
        assert evaluate(word, [r, s]) == element


def test_condition2_data(d7_pair):
    first, _ = d7_pair
    data = find_condition2_data(first, (0, 6))
    images = [first[0], first[6]]
    assert len(data) == len(first)
    for g, d in zip(first, data):
        assert d.conjugator * images[d.j] ** d.exponent * ~d.conjugator == g
    assert (data[6].j, data[6].exponent) == (1, 1)


def test_condition2_fails_without_rotation(d7_pair):
    first, _ = d7_pair
    with pytest.raises(DecompositionError) as info:
        find_condition2_data(first, (0, 5))
    assert info.value.index == 6


def test_relator_shapes_of_dihedral_presentation(d7_pair):
    first, _ = d7_pair
    pres = Presentation(2, [power_word(1, 7), power_word(0, 2), (2, 1, 2, -1)], ["s", "r"])
    data = find_condition2_data(first, (0, 6))
    certificates = check_relator_shapes(pres, data, first, (0, 6))
    assert [c.shape for c in certificates] == [Shape.POWER, Shape.POWER, Shape.CONJUGATE_PAIR]
    assert certificates[2].conjugator == (1,)


def test_shape_certificate_checks_the_word(d7_pair):
    first, _ = d7_pair
    data = find_condition2_data(first, (0, 6))
    wrong = ShapeCertificate((1, 2), Shape.POWER, first=(0, 2))
    assert not wrong.verify(data, [first[0], first[6]])


def test_pi1_certificate_for_dihedral_system(d7_pair):
    first, _ = d7_pair
    result = pi1_trivial_certificate(first)
    assert result.status == Pi1Status.VERIFIED
    witness = result.witness
    assert witness.moves == ()
    assert witness.assignment == (0, 6)
    assert witness.verify()
    assert repr(witness.presentation) == "<s, r | r^7, s^2, r s r s^-1>"


def test_witness_survives_conjugation(d7_pair):
    first, _ = d7_pair
    witness = pi1_trivial_certificate(first).witness
    for x in first.group.elements[::3]:
        assert witness.conjugate(x).verify()


def test_tampered_witness_fails(d7_pair):
    first, _ = d7_pair
    w = pi1_trivial_certificate(first).witness
    swapped = GoodPresentationWitness(
        w.original, w.moves, w.system, tuple(reversed(w.assignment)), w.presentation, w.condition2, w.certificates
    )
    assert not swapped.verify()
    dropped = GoodPresentationWitness(
        w.original, w.moves, w.system, w.assignment, w.presentation, w.condition2, w.certificates[:-1]
    )
    assert not dropped.verify()


def test_pi1_threads_pick_the_same_witness(d7_pair):
    _, second = d7_pair
    one = pi1_trivial_certificate(second)
    many = pi1_trivial_certificate(second, threads=3)
    assert one.status == many.status == Pi1Status.VERIFIED
    assert one.witness.assignment == many.witness.assignment


def test_pi1_refuted_when_no_assignment_generates(d7_pair):
    first, _ = d7_pair
    result = pi1_trivial_certificate(first, CertificateBounds(max_generators=1))
    assert result.status == Pi1Status.REFUTED_AT_BOUND
    assert result.witness is None


def test_pi1_inconclusive_at_tiny_coset_cap(d7_pair):
    first, _ = d7_pair
    result = pi1_trivial_certificate(first, CertificateBounds(coset_cap=1))
    assert result.status == Pi1Status.INCONCLUSIVE
    assert result.assignments_tried > 0


def test_pi1_for_pushed_d7_system(system, D7):
    local = push_to_subgroup(system, D7)
    result = pi1_trivial_certificate(local)
    assert result.status == Pi1Status.VERIFIED
    assert result.witness.verify()


@pytest.mark.slow
@pytest.mark.parametrize("name", ["D6", "A4"])
def test_pi1_for_pushed_systems(system, request, name):
    local = push_to_subgroup(system, request.getfixturevalue(name))
    result = pi1_trivial_certificate(local, threads=2)
    assert result.status == Pi1Status.VERIFIED
    assert result.witness.verify()


@pytest.mark.slow
@pytest.mark.parametrize("name", ["D6", "A4"])
def test_pi1_for_every_local_system(system, request, name):
    local = push_to_subgroup(system, request.getfixturevalue(name))
    systems = enumerate_systems(local.group, list(local.elements))
    assert len(systems) > 1
    statuses = [pi1_trivial_certificate(s).status for s in systems]
    assert statuses == [Pi1Status.VERIFIED] * len(systems)
