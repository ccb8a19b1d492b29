"""Tests for the closed-form indecomposables, the oracle and the verification reports"""

from collections import Counter

import pytest

from simplest_cubic.classify import BasisDescriptor, UnsupportedFieldError, classify
from simplest_cubic.field_core import (
    FieldElement,
    NotTotallyPositiveError,
    is_algebraic_integer,
    is_totally_positive,
    is_totally_positive_int,
    make_context,
    norm,
    unit_power,
)
from simplest_cubic.indecomposables import (
    IndecFamily,
    _oracle_setup,
    a41_expected,
    canonical_representative,
    check_witness,
    decomposition_witness_closed_form,
    expected_count,
    expected_norm_extremes,
    family_vi_norm,
    first_par_indec_table,
    first_par_table_expected,
    generate_theorem_list,
    is_indecomposable_bruteforce,
    norm_extremes,
    verify_a41,
    verify_classification,
)
from simplest_cubic.lattice import second_parallelepiped_points_p3


def test_expected_count():
    assert expected_count(21) == 72
    assert expected_count(30) == 117


def test_theorem_list_a21(ctx21, b3):
    records = generate_theorem_list(ctx21)
    assert len(records) == 72
    assert len({r.elem for r in records}) == 72
    assert records[0].elem == FieldElement.rational(21, 1)
    assert records[1].elem == b3.g3(21)
    for record in records:
        assert is_totally_positive(record.elem)
        assert is_algebraic_integer(record.elem)
        assert record.basis_coords == b3.to_int_coords(record.elem)
    sizes = Counter(r.family for r in records)
    assert sizes[IndecFamily.V] == 28
    assert all(sizes[f] == 7 for f in (IndecFamily.II, IndecFamily.III, IndecFamily.IV, IndecFamily.VI))


def test_theorem_list_needs_the_family():
    with pytest.raises(UnsupportedFieldError):
        generate_theorem_list(make_context(41))


def test_family_vi_over_the_integral_basis(ctx21):
    for record in generate_theorem_list(ctx21):
        if record.family == IndecFamily.VI:
            (r,) = record.params
            assert record.basis_coords == (0, -(r + 1), 1)
            assert record.norm_abs == family_vi_norm(21, r)


def test_family_vi_norm_values():
    assert family_vi_norm(21, 0) == 75
    assert family_vi_norm(21, 1) == 125


@pytest.mark.parametrize(
    "a,extremes",
    [(21, (19, 855)), (30, (37, 2331)), (48, (91, 9009)), (57, (117, 16129))],
)
def test_norm_extremes(a, extremes):
    assert expected_norm_extremes(a) == extremes
    result = norm_extremes(make_context(a))
    assert (result.min_nonrational, result.max_indec) == extremes
    assert result.matches


def test_oracle_on_small_elements(ctx21, b3):
    a = 21
    assert is_indecomposable_bruteforce(FieldElement.rational(a, 1)).indecomposable
    assert is_indecomposable_bruteforce(b3.g3(a)).indecomposable

    two = is_indecomposable_bruteforce(FieldElement.rational(a, 2))
    assert not two.indecomposable
    assert check_witness(two.elem, two.witness)

    nodes_sum = FieldElement.from_ints(a, 1, 0, 1)
    result = is_indecomposable_bruteforce(nodes_sum)
    assert not result.indecomposable and check_witness(nodes_sum, result.witness)


def test_oracle_rejects_non_totally_positive():
    with pytest.raises(NotTotallyPositiveError):
        is_indecomposable_bruteforce(FieldElement.rho(21))


def test_oracle_agrees_with_theorem_list_sample(ctx21):
    for record in generate_theorem_list(ctx21)[::9]:
        assert is_indecomposable_bruteforce(record.elem).indecomposable


def test_closed_form_witnesses_are_valid(ctx21):
    used = 0
    for cand in second_parallelepiped_points_p3(ctx21):
        pair = decomposition_witness_closed_form(ctx21, cand)
        if pair is None:
            continue
        used += 1
        assert check_witness(cand.elem, pair), (cand.s, cand.v, cand.r, cand.region)
    assert used > 0


def test_canonical_representative_is_unit_invariant(ctx21, b3):
    g3 = b3.g3(21)
    base = canonical_representative(g3, b3)
    for i, j in [(2, 0), (0, 2), (-2, 2)]:
        assert canonical_representative(unit_power(21, i, j) * g3, b3) == base


def test_verify_classification_a21(ctx21):
    report = verify_classification(ctx21, threads=1)
    assert report.ok, report.mismatches
    assert report.theorem_count == report.expected_count == 72
    assert report.closed_form_witnesses > 0
    assert report.candidate_count == 1 + 5 + 3 * 507 - 1
    assert report.to_dict()["ok"] is True


@pytest.mark.slow
def test_verify_classification_a30_certified(ctx30):
    report = verify_classification(ctx30, certify=True)
    assert report.ok, report.mismatches
    assert report.theorem_count == 117
    assert report.min_traces_checked == 117


def test_verify_classification_oracle_cap():
    with pytest.raises(ValueError):
        verify_classification(make_context(57))


def test_a41_expected_list():
    items = a41_expected()
    assert len(items) == 14
    assert len(items[0].elements) == 21
    by_trace = Counter()
    for item in items:
        by_trace[item.min_trace] += len(item.elements)
    assert dict(by_trace) == {1: 75, 2: 21, 3: 15}
    basis = BasisDescriptor.bp(7, 4, 3)
    for item in items:
        for coords in item.elements:
            elem = basis.from_basis_coords(41, coords)
            assert is_algebraic_integer(elem) and is_totally_positive(elem)


@pytest.mark.slow
def test_verify_a41():
    report = verify_a41(make_context(41))
    assert report.ok, report.mismatches
    assert report.by_trace == report.expected_by_trace


def test_first_par_table_p7():
    rows = first_par_indec_table(7, threads=1)
    assert [(row["a_mod_p2"], row["a"], row["k"], row["l"]) for row in rows] == [(5, 103, 2, 6), (41, 41, 4, 3)]
    expected = first_par_table_expected()
    for row in rows:
        assert [tuple(x["basis_coords"]) for x in row["indecomposables"]] == expected[(7, row["a_mod_p2"])]
        assert row["invalid_witnesses"] == []


@pytest.mark.slow
@pytest.mark.parametrize("p", [13, 19, 31])
def test_first_par_table(p):
    expected = first_par_table_expected()
    for row in first_par_indec_table(p):
        found = sorted(tuple(x["basis_coords"]) for x in row["indecomposables"])
        assert found == sorted(expected[(p, row["a_mod_p2"])])
        assert row["invalid_witnesses"] == []


def test_indecomposables_have_norm_matching_record(ctx21):
    for record in generate_theorem_list(ctx21)[:10]:
        assert record.norm_abs == abs(norm(record.elem))


@pytest.mark.parametrize("a,coords", [(235, (0, -1, 2)), (204, (-1, -3, 4)), (602, (0, -1, 3))])
def test_oracle_keeps_indecomposables_over_bp_bases(a, coords):
    basis = classify(a).basis
    assert basis.p in (13, 19, 31)
    alpha = basis.from_basis_coords(a, coords)
    result = is_indecomposable_bruteforce(alpha)
    assert result.indecomposable
    assert result.witness is None


@pytest.mark.parametrize("a", [21, 41, 235, 204])
def test_oracle_subtracts_only_totally_positive_elements(a):
    assert all(is_totally_positive_int(a, *y) for y in _oracle_setup(a).summands)


def test_oracle_witnesses_are_valid_over_b13():
    a = 235
    basis = classify(a).basis
    for coords in [(1, 0, 0), (0, 0, 1), (2, 0, 1), (1, -1, 2)]:
        alpha = basis.from_basis_coords(a, coords)
        if not is_totally_positive(alpha):
            continue
        result = is_indecomposable_bruteforce(alpha)
        if result.witness is not None:
            assert check_witness(alpha, result.witness)
