import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from bianchi_cls.quadint import (
    FieldLabel,
    QIdeal,
    canonical_up_to_conjugation,
    class_number,
    conj_ideal,
    divisors,
    elements_of_norm,
    factor_ideal,
    ideal_from_gens,
    is_principal,
    is_squarefree,
    make_int,
    norm,
    parse_element,
    parse_ideal,
    primes_above,
    principal,
    reduced_forms,
    splitting_type,
    two_generators,
    valuation,
)

ADMISSIBLE = [1, 2, 3, 5, 6, 7, 11, 15, 19, 23, 31, 39, 47, 71]
FIELDS = [1, 2, 3, 5, 6, 7, 11, 19, 23]


def brute_class_number(d):
    # count reduced forms of discriminant D by a second, naive loop
    D = -4 * d if d % 4 in (1, 2) else -d
    h = 0
    for a in range(1, math.isqrt(-D // 3) + 2):
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or math.gcd(math.gcd(a, abs(b)), c) != 1:
                continue
            if b < 0 and (a == c):
                continue
            h += 1
    return h


def test_field_label_validation():
    with pytest.raises(ValueError):
        FieldLabel(4)
    with pytest.raises(ValueError):
        FieldLabel(0)
    assert FieldLabel(7).half_integral and not FieldLabel(2).half_integral


def test_norm_of_final_case_element():
    z = parse_element(2, "1+3*w")
    assert norm(z) == 19
    assert principal(z).basis == ((19, 0), (13, 1))


def test_parse_sqrt_forms():
    assert parse_element(7, "(1+3*sqrt-7)/2") == make_int(7, -1, 3)
    assert parse_element(1, "2+i") == make_int(1, 2, 1)
    assert parse_element(2, "3+sqrt-2") == make_int(2, 3, 1)
    with pytest.raises(ValueError):
        parse_element(7, "(1+2*sqrt-7)/2")


def test_conjugate_norms_agree():
    z = parse_element(7, "(1+3*sqrt-7)/2")
    assert norm(z) == norm(z.conj()) == 16


@pytest.mark.parametrize("d", ADMISSIBLE)
def test_class_number_matches_naive_count(d):
    assert class_number(d) == brute_class_number(d) == len(reduced_forms(-4 * d if d % 4 in (1, 2) else -d))


def test_class_numbers_of_admissible_fields():
    got = [class_number(d) for d in ADMISSIBLE]
    assert got == [1, 1, 1, 2, 2, 1, 1, 2, 1, 3, 3, 4, 5, 7]


def test_non_principal_ideal_d5():
    I = ideal_from_gens(5, [3, parse_element(5, "1+sqrt-5")])
    assert I.norm() == 3
    assert is_principal(I) is None
    assert is_principal(I * I.conj()) is not None


def test_zero_ideal_rejected():
    with pytest.raises(ValueError):
        ideal_from_gens(2, [0])


def test_ideal_membership_and_conjugation():
    I = parse_ideal(2, "1+3*w")
    assert I.contains(parse_element(2, "1+3*w"))
    assert not I.contains(make_int(2, 1))
    assert conj_ideal(conj_ideal(I)) == I
    assert canonical_up_to_conjugation(I) == canonical_up_to_conjugation(conj_ideal(I))


@pytest.mark.parametrize("d", FIELDS)
def test_splitting_types(d):
    for p in (2, 3, 5, 7, 11, 13):
        primes = primes_above(d, p)
        kind = splitting_type(d, p)
        assert len(primes) == (2 if kind == "split" else 1)
        prod = QIdeal(FieldLabel(d), ((1, 0), (0, 1)))
        for P in primes:
            prod = prod * P
        if kind == "ramified":
            prod = prod * primes[0]
        assert prod == principal(make_int(d, p))


@pytest.mark.parametrize("d", FIELDS)
def test_factorization_round_trip(d):
    rnd = random.Random(d)
    for _ in range(25):
        z = make_int(d, rnd.randint(-12, 12), rnd.randint(-6, 6))
        if norm(z) <= 1:
            continue
        I = principal(z)
        fac = factor_ideal(I)
        assert fac.product() == I
        assert math.prod(P.norm() ** e for P, e in fac.factors) == I.norm()
        for P, e in fac.factors:
            assert valuation(I, P) == e


def test_divisors_of_two_d15():
    I = principal(make_int(15, 2))
    divs = divisors(I)
    assert sorted(J.norm() for J in divs) == [1, 2, 2, 4]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(-20, 20), st.integers(-20, 20),
       st.integers(-20, 20), st.integers(-20, 20))
def test_norm_is_multiplicative(d, a, b, c, e):
    x, y = make_int(d, a, b), make_int(d, c, e)
    assert norm(x * y) == norm(x) * norm(y)
    assert (x * y).conj() == x.conj() * y.conj()


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(-9, 9), st.integers(-9, 9),
       st.integers(-9, 9), st.integers(-9, 9))
def test_ideal_product_norm(d, a, b, c, e):
    x, y = make_int(d, a, b), make_int(d, c, e)
    if not x or not y:
        return
    I, J = principal(x), principal(y)
    assert (I * J).norm() == I.norm() * J.norm()
    assert (I * J) == principal(x * y)
    g1, g2 = two_generators(I)
    assert ideal_from_gens(d, [g1, g2]) == I


@pytest.mark.parametrize("d", [2, 7, 19])
def test_elements_of_norm_are_complete(d):
    for n in range(1, 30):
        found = set(elements_of_norm(d, n))
        brute = {make_int(d, a, b) for a in range(-12, 13) for b in range(-12, 13)
                 if norm(make_int(d, a, b)) == n}
        assert found == brute


def test_squarefree():
    assert is_squarefree(15) and not is_squarefree(18)
