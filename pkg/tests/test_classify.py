"""Tests for conductor, module index and integral basis discovery"""

from fractions import Fraction

import pytest

from simplest_cubic.classify import (
    EXCEPTIONAL_MONOGENIC,
    BasisDescriptor,
    BasisKind,
    UnsupportedFieldError,
    basis_is_integral,
    classify,
    closed_form_kl,
    conductor,
    cubefree_split,
    family_parameters,
    find_all_kl,
    find_kl,
    h_polynomials,
    hensel_roots,
    in_p3_family,
    integrality_coefficients,
    is_monogenic,
    module_index,
    require_p3_family,
    require_supported,
    smallest_valid_representative,
    table1,
    to_canovas_form,
)
from simplest_cubic.field_core import FieldElement

TABLE_ROWS = [
    (7, 5, 2, 6), (7, 41, 4, 3),
    (13, 66, 3, 8), (13, 100, 9, 7),
    (19, 154, 11, 5), (19, 204, 7, 16),
    (31, 356, 25, 21), (31, 602, 5, 12),
    (37, 374, 10, 22), (37, 992, 26, 17),
    (43, 577, 36, 31), (43, 1269, 6, 14),
    (61, 1259, 47, 35), (61, 2459, 13, 28),
    (67, 2097, 37, 9), (67, 2389, 29, 60),
    (73, 1265, 64, 57), (73, 4061, 8, 18),
    (79, 1096, 55, 33), (79, 5142, 23, 48),
    (97, 4451, 35, 72), (97, 4955, 61, 27),
    (103, 271, 46, 94), (103, 10335, 56, 11),
]


@pytest.mark.parametrize("a", [21, 48, 75, 102, 129, 156])
def test_family_members_have_basis_b3(a):
    result = classify(a)
    assert result.in_p3_family
    assert result.module_index == 3
    assert result.basis == BasisDescriptor.bp(3, 1, 1)
    assert not result.monogenic
    assert result.conductor * 3 == result.delta_disc


def test_a21_invariants():
    result = classify(21)
    assert result.delta_disc == 513
    assert result.conductor == 171
    assert (result.b, result.c) == (19, 3)
    assert result.basis.label == "B3(1,1)"


def test_a41_has_basis_b7():
    result = classify(41)
    assert result.module_index == 7
    assert result.delta_disc == 1813 == 49 * 37
    assert result.conductor == 259
    assert result.basis == BasisDescriptor.bp(7, 4, 3)
    assert not result.in_p3_family


def test_a90_conductor_and_basis():
    result = classify(90)
    assert result.delta_disc == 9 * 49 * 19
    assert result.conductor == 9 * 7 * 19
    assert result.module_index == 7
    assert result.basis == BasisDescriptor.bp(7, 4, 3)


@pytest.mark.parametrize("a", sorted(EXCEPTIONAL_MONOGENIC))
def test_exceptional_parameters_are_monogenic(a):
    result = classify(a)
    assert result.monogenic and result.in_exceptional_list


def test_generic_monogenic_field():
    result = classify(4)
    assert result.delta_disc == 37 and result.conductor == 37
    assert result.basis.kind == BasisKind.POWER and result.basis.label == "Z[rho]"


def test_cubefree_split():
    assert cubefree_split(513) == (19, 3)
    assert cubefree_split(8379) == (8379, 1)
    with pytest.raises(ValueError):
        cubefree_split(0)


def test_conductor_ramification_at_three():
    # a = 12 (mod 27) leaves 3 unramified
    assert conductor(12) == 7
    assert conductor(30) == 9 * 37
    assert module_index(21) == 3 and module_index(30) == 3


def test_find_kl_for_p3_family():
    assert find_kl(21, 3) == (1, 1)
    assert find_all_kl(21, 3) == [(1, 1)]


def test_find_kl_table_representative():
    assert find_kl(66 + 169, 13) == (3, 8)


@pytest.mark.parametrize("p,residue,k,l", TABLE_ROWS)
def test_closed_form_kl_matches_table(p, residue, k, l):
    assert closed_form_kl(residue, p) == (k, l)
    assert (2 * k - l + 2) % p == 0


def test_find_kl_rejects_bad_prime():
    with pytest.raises(ValueError):
        find_all_kl(21, 9)


def test_find_kl_is_unique_for_discovered_bases():
    for a in (41, 90, 235, 154 + 361):
        basis = classify(a).basis
        if basis.kind != BasisKind.BP:
            continue
        assert find_all_kl(a, basis.p) == [(basis.k, basis.l)]
        assert (2 * basis.k - basis.l + 2) % basis.p == 0


def test_hensel_roots_are_roots_mod_p_squared():
    for p in (7, 13, 19, 31):
        for x in hensel_roots(p):
            assert (x * x + 3 * x + 9) % (p * p) == 0


def test_family_parameters():
    assert family_parameters(7) == [(5, (2, 6)), (41, (4, 3))]
    assert family_parameters(103) == [(271, (46, 94)), (10335, (56, 11))]
    assert family_parameters(11) is None
    with pytest.raises(ValueError):
        family_parameters(3)


def test_table1_reproduces_all_rows():
    rows = table1(103)
    assert [(r["p"], r["a_mod_p2"], r["k"], r["l"]) for r in rows] == TABLE_ROWS


def test_family_roots_are_swapped_by_the_involution():
    for p, residue, _, _ in TABLE_ROWS:
        roots = {r for r, _ in family_parameters(p)}
        assert (residue * residue + 2 * residue + 6) % (p * p) in roots


def test_in_p3_family():
    assert in_p3_family(21) and in_p3_family(30) and in_p3_family(57)
    assert not in_p3_family(3)
    assert not in_p3_family(66)
    assert not in_p3_family(41)


def test_require_p3_family_carries_classification():
    with pytest.raises(UnsupportedFieldError) as excinfo:
        require_p3_family(41)
    assert excinfo.value.classification is not None
    assert excinfo.value.classification.module_index == 7


def test_basis_integrality():
    assert basis_is_integral(21, BasisDescriptor.bp(3, 1, 1))
    assert not basis_is_integral(21, BasisDescriptor.bp(3, 1, 2))
    coefficients = integrality_coefficients(21, 3, 1, 1)
    assert all(c.denominator == 1 for c in coefficients)
    assert coefficients[0] == 171


def test_basis_coordinates():
    basis = BasisDescriptor.bp(3, 1, 1)
    a = 21
    g3 = basis.g3(a)
    assert basis.to_int_coords(g3) == (0, 0, 1)
    rho2 = FieldElement.from_ints(a, 0, 0, 1)
    assert basis.to_int_coords(rho2) == (-1, -1, 3)
    assert basis.from_basis_coords(a, (-1, -1, 3)) == rho2
    assert basis.basis_matrix()[2] == (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
    assert BasisDescriptor.power().basis_matrix()[2] == (0, 0, 1)
    with pytest.raises(UnsupportedFieldError):
        BasisDescriptor.unsupported().basis_matrix()
    with pytest.raises(ValueError):
        basis.to_int_coords(FieldElement.from_ints(a, Fraction(1, 3), 0, 0))


def test_smallest_valid_representative():
    assert smallest_valid_representative(13, 66) == 235
    assert smallest_valid_representative(7, 5) == 103


def test_canovas_form():
    form = to_canovas_form(21)
    assert (form.p, form.q) == (171, 5)
    assert 4 * form.p - 27 * form.q * form.q == 9
    with pytest.raises(ValueError):
        to_canovas_form(22)


def test_classify_rejects_small_a():
    with pytest.raises(ValueError):
        classify(-2)


def test_h_polynomials_for_the_p3_basis():
    h1, h2, h3 = h_polynomials(21, 1, 1)
    assert h1 == 513
    assert h2 % 9 == 0
    assert h3 % 27 == 0
    g1, g2, g3 = h_polynomials(21, 1, 2)
    assert (g1 % 3, g2 % 9, g3 % 27) != (0, 0, 0)


def test_is_monogenic():
    assert is_monogenic(4)
    assert is_monogenic(12)
    assert not is_monogenic(21)


def test_a678_has_composite_index_and_is_unsupported():
    result = classify(678)
    assert result.delta_disc == 461727 == 27 * 49 * 349
    assert result.conductor == 21987
    assert result.module_index == 21
    assert not result.in_p3_family
    assert result.basis.kind == BasisKind.UNSUPPORTED
    assert not result.monogenic
    with pytest.raises(UnsupportedFieldError):
        require_supported(678)


def test_a48_invariants():
    result = classify(48)
    assert result.delta_disc == 2457 == 27 * 7 * 13
    assert result.conductor == 819
    assert (result.b, result.c) == (91, 3)
    assert result.module_index == 3
    assert result.basis == BasisDescriptor.bp(3, 1, 1)
