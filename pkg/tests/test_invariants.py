import random
from fractions import Fraction

import pytest

from pqsurf.covers import enumerate_signature, push_to_subgroup
from pqsurf.errors import InconsistencyError, ValidationError
from pqsurf.invariants import (SurfaceInvariants, chern_numbers, hodge_diamond, irregularity, surface_invariants,
                               twist_report)
from pqsurf.singularities import Basket

D6_CLASS_ORDER = ([[8, 0], [0, 5]],) + ([[0, 1], [12, 0]],) * 3 + ([[0, 2], [6, 0]],) * 3 + ([[4, 0], [0, 10]],)


def _row(inv: SurfaceInvariants):
    return inv.KX2, inv.c2, inv.chi, inv.pg, inv.h11, inv.KminusE2, inv.singular_points


def _noether(inv: SurfaceInvariants):
    assert inv.KX2 + inv.c2 == 12 * inv.chi
    assert inv.pg == inv.chi - 1 + inv.q
    assert inv.h11 == inv.c2 - 2 + 4 * inv.q - 2 * inv.pg


def _general_type_bounds(inv: SurfaceInvariants):
    assert inv.KX2 > 0 and inv.c2 > 0
    assert 0 < inv.KminusE2 < inv.KX2


def test_d7_diagonal(system, D7):
    local = push_to_subgroup(system, D7)
    inv = surface_invariants(local, local)
    assert _row(inv) == (93, 111, 17, 16, 77, 2, 38)
    assert repr(inv.basket) == "{36 x A1, 1 x 1/7(1,1), 1 x A6}"
    assert inv.criterion_satisfied
    _noether(inv)
    _general_type_bounds(inv)


def test_d6_diagonal(system, D6, psl13):
    local = push_to_subgroup(system, D6, class_order=[psl13.element(m) for m in D6_CLASS_ORDER])
    inv = surface_invariants(local, local)
    assert _row(inv) == (112, 128, 20, 19, 88, 14, 46)
    assert repr(inv.basket) == "{42 x A1, 2 x 1/3(1,1), 2 x A2}"
    _noether(inv)
    _general_type_bounds(inv)


def test_a4_diagonal(system, A4):
    local = push_to_subgroup(system, A4)
    inv = surface_invariants(local, local)
    assert _row(inv) == (110, 118, 19, 18, 80, 18, 34)
    assert repr(inv.basket) == "{18 x A1, 8 x 1/3(1,1), 8 x A2}"
    _noether(inv)
    _general_type_bounds(inv)


def test_twisted_dihedral(d7_pair):
    inv = surface_invariants(*d7_pair)
    assert inv.basket_invariants.k == Fraction(11, 7)
    assert (inv.KX2, inv.c2, inv.pg, inv.h11, inv.KminusE2) == (95, 109, 16, 75, 10)
    _noether(inv)
    _general_type_bounds(inv)


def test_irregularity_shifts_hodge_numbers(d7_pair):
    inv = SurfaceInvariants(14, 14, 14, surface_invariants(*d7_pair).basket, q=1)
    assert (inv.pg, inv.h11) == (17, 75 + 4 - 2)
    _noether(inv)


def test_chern_numbers_reject_inconsistent_basket():
    with pytest.raises(InconsistencyError):
        chern_numbers(14, 14, 14, Basket.from_pairs([(7, 1, 1)]))


def test_noether_failure_is_reported():
    class Fake:
        KX2, c2, q = 95, 110, 0

    with pytest.raises(InconsistencyError):
        hodge_diamond(Fake)


def test_diamond_rows(d7_pair):
    rows = surface_invariants(*d7_pair).diamond.rows
    assert rows == ((1,), (0, 0), (16, 75, 16), (0, 0), (1,))


def test_irregularity_of_covers_of_the_line(d7_pair, system):
    assert irregularity(*d7_pair) == 0
    assert irregularity(system, system) == 0
    assert surface_invariants(*d7_pair).q == 0
    assert surface_invariants(*d7_pair, q=1).pg == 17


def test_noether_on_random_pairs(small_families):
    rng = random.Random(2024)
    for systems in small_families:
        for _ in range(6):
            inv = surface_invariants(rng.choice(systems), rng.choice(systems))
            assert (inv.KX2 + inv.c2) % 12 == 0
            assert min(inv.pg, inv.h11) >= 0
            assert inv.KminusE2 <= inv.KX2
            _noether(inv)


def test_twist_report_is_symmetric(small_families):
    rng = random.Random(13)
    for systems in small_families:
        chosen = [rng.choice(systems) for _ in range(3)]
        report = twist_report(chosen, chosen)
        for i in range(3):
            for j in range(3):
                assert report.entries[i][j].numerics() == report.entries[j][i].numerics()
                assert report.entries[i][j].basket == report.entries[j][i].basket


def test_twist_report_needs_systems():
    with pytest.raises(ValidationError):
        twist_report([], [])


def test_twist_report_on_dihedral_pairs(d7_pair):
    first, second = d7_pair
    report = twist_report([first, second], [first, second])
    assert report.all_positive
    assert not report.numerically_constant
    assert report.min_KminusE2 == 2
    assert len(report.entries) == 2 and len(report.entries[0]) == 2
    assert report.entries[0][1].numerics() == (95, 109, 16, 75, 10)


@pytest.mark.slow
def test_d7_twists_not_constant(G, D7):
    systems = enumerate_signature(G, (2, 3, 7))
    assert len(systems) == 6
    report = twist_report(systems, systems, subgroup=D7)
    assert report.all_positive
    assert not report.numerically_constant
    numerics = report.distinct_numerics()
    assert (93, 111, 16, 77, 2) in numerics
    assert (95, 109, 16, 75, 10) in numerics
    baskets = {repr(e.basket) for row in report.entries for e in row}
    assert "{36 x A1, 1 x 1/7(1,2), 1 x 1/7(1,3)}" in baskets


@pytest.mark.slow
@pytest.mark.parametrize("name, expected", [("A4", 18), ("D6", 14)])
def test_twists_constant(G, request, name, expected):
    H = request.getfixturevalue(name)
    systems = enumerate_signature(G, (2, 3, 7))
    report = twist_report(systems, systems, subgroup=H, threads=2)
    assert report.numerically_constant
    assert report.min_KminusE2 == expected
