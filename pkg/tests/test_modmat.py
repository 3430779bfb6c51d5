import itertools

import pytest

from bianchi_cls.modmat import (
    GroupTooLarge,
    ResidueRing,
    TrivialLevel,
    brute_force_psl2_order,
    build_group,
    cusp_count,
    is_congruent_to_pm_identity,
    psl2_order,
    sl2_order,
    torsion_in_gamma,
)
from bianchi_cls.quadint import make_int, parse_element, parse_ideal, principal, unit_ideal


def level(d, text):
    return parse_ideal(d, text)


def test_ring_tables_consistent():
    R = ResidueRing(level(7, "sqrt-7"))
    assert R.size == 7 and len(R.units()) == 6
    for u in R.units():
        assert R.mul_table[u][R.inverse(u)] == R.one
    with pytest.raises(ZeroDivisionError):
        R.inverse(R.zero)


@pytest.mark.parametrize("d,gen,order", [
    (2, "1+2*sqrt-2", 324), (2, "3+sqrt-2", 660), (7, "sqrt-7", 168), (7, "(5+sqrt-7)/2", 192),
    (7, "2+sqrt-7", 660), (7, "(7+sqrt-7)/2", 1008), (7, "(1+3*sqrt-7)/2", 1536),
    (11, "(5+sqrt-11)/2", 324), (2, "1+3*sqrt-2", 3420),
])
def test_order_formula(d, gen, order):
    assert psl2_order(level(d, gen)) == order


@pytest.mark.parametrize("d,gen", [
    (1, "2"), (1, "1+i"), (1, "3"), (2, "sqrt-2"), (2, "2"), (3, "2"), (7, "2"), (7, "sqrt-7"),
    (5, "2, 1+sqrt-5"), (15, "2, (1+sqrt-15)/2"), (19, "(1+sqrt-19)/2"), (2, "1+2*sqrt-2"),
])
def test_formula_matches_det_count_and_closure(d, gen):
    I = level(d, gen)
    n = psl2_order(I)
    assert brute_force_psl2_order(I) == n
    assert build_group(I).order() == n


def test_sl_vs_psl_when_two_in_ideal():
    I = level(1, "1+i")
    assert sl2_order(I) == psl2_order(I) == 6
    J = level(2, "1+sqrt-2")
    assert sl2_order(J) == 2 * psl2_order(J)


def test_trivial_level_and_bound():
    with pytest.raises(TrivialLevel):
        psl2_order(unit_ideal(2))
    with pytest.raises(GroupTooLarge):
        build_group(level(2, "1+3*sqrt-2"), bound=1000)


@pytest.mark.parametrize("d,gen,cusps", [
    (2, "1+2*sqrt-2", 36), (2, "3+sqrt-2", 60), (7, "sqrt-7", 24), (7, "(5+sqrt-7)/2", 24),
    (7, "2+sqrt-7", 60), (7, "(7+sqrt-7)/2", 72), (7, "(1+3*sqrt-7)/2", 96), (11, "(5+sqrt-11)/2", 36),
])
def test_cusp_counts(d, gen, cusps):
    assert cusp_count(d, level(d, gen)) == cusps


def test_cusp_count_rejects_higher_class_number():
    with pytest.raises(ValueError):
        cusp_count(5, level(5, "3, 1+sqrt-5"))


def _check_witness(I, m):
    (a, b), (c, e) = m
    assert a * e - b * c == make_int(I.field.d, 1)
    assert (a + e).trace() // 2 in (0, 1, -1) and (a + e).conj() == a + e
    assert is_congruent_to_pm_identity(I, m)


@pytest.mark.parametrize("d,gen", [(1, "1+i"), (2, "sqrt-2"), (3, "sqrt-3"), (5, "2, 1+sqrt-5"),
                                   (6, "2, sqrt-6"), (39, "3, (3+sqrt-39)/2")])
def test_torsion_levels_have_witness(d, gen):
    I = level(d, gen)
    w = torsion_in_gamma(d, I)
    assert w is not None
    _check_witness(I, w)


def _brute_torsion(d, I, h=2):
    F = I.field
    box = [F(x, y) for x in range(-h, h + 1) for y in range(-h, h + 1)]
    for a, b, c in itertools.product(box, box, box):
        for tr in (0, 1, -1):
            e = F(tr) - a
            if a * e - b * c == F(1) and is_congruent_to_pm_identity(I, ((a, b), (c, e))):
                return True
    return False


@pytest.mark.parametrize("d,gen", [(1, "2"), (3, "2"), (2, "2"), (2, "1+sqrt-2"), (7, "2"), (1, "1+i")])
def test_torsion_search_agrees_with_brute_box(d, gen):
    I = level(d, gen)
    assert (torsion_in_gamma(d, I) is not None) == _brute_torsion(d, I)


def test_no_torsion_without_two_or_three():
    assert torsion_in_gamma(2, level(2, "1+3*sqrt-2")) is None
    assert torsion_in_gamma(7, level(7, "sqrt-7")) is None
