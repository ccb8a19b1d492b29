"""Tests for lattice points of the two parallelepipeds and the maps T1, T2"""

from fractions import Fraction

import pytest

from simplest_cubic.classify import BasisDescriptor, classify
from simplest_cubic.field_core import (
    FieldElement,
    SimplestCubicError,
    conjugate1,
    inverse,
    is_algebraic_integer,
    is_totally_positive,
    is_unit,
    make_context,
)
from simplest_cubic.lattice import (
    FIRST_PAR_TAG,
    Parallelepiped,
    alpha_point,
    candidate_shape,
    first_parallelepiped_nodes,
    first_parallelepiped_points,
    in_parallelepiped,
    index_candidates,
    parallelepiped_coordinates,
    region_image,
    region_of,
    region_points,
    second_parallelepiped_nodes,
    second_parallelepiped_points_bruteforce,
    second_parallelepiped_points_p3,
    third_node,
    transform_T1,
    transform_T2,
)


@pytest.fixture(scope="module")
def points21(ctx21):
    return second_parallelepiped_points_p3(ctx21)


def test_nodes_are_totally_positive_units(ctx21):
    for node in first_parallelepiped_nodes(ctx21) + second_parallelepiped_nodes(ctx21):
        assert is_totally_positive(node) and is_unit(node)


def test_third_node_is_inverse_square_of_rho_prime():
    a = 21
    rho_prime = conjugate1(FieldElement.rho(a))
    assert third_node(a) == inverse(rho_prime) ** 2


def test_parallelepiped_coordinates_of_nodes(ctx21):
    nodes = second_parallelepiped_nodes(ctx21)
    assert parallelepiped_coordinates(nodes[2], Parallelepiped.SECOND) == (0, 0, 1)
    assert parallelepiped_coordinates(nodes[0], Parallelepiped.SECOND) == (1, 0, 0)
    assert not in_parallelepiped(nodes[0], Parallelepiped.SECOND)


def test_closed_form_count_and_membership(ctx21, points21):
    a = 21
    D = a * a + 3 * a + 3
    assert len(points21) == 3 * D - 1
    assert len({cand.elem for cand in points21}) == len(points21)
    for cand in points21[::37]:
        assert is_algebraic_integer(cand.elem)
        assert in_parallelepiped(cand.elem, Parallelepiped.SECOND)
        assert cand.index == 3 * cand.w + cand.s


def test_basis_coordinates_agree_with_element(ctx21, points21, b3):
    for cand in points21[::11]:
        assert b3.to_int_coords(cand.elem) == cand.basis_coords


def test_alpha_point_shape():
    a = 21
    cand = alpha_point(a, 1, 0, 0)
    assert cand.region == "R3"
    g3 = BasisDescriptor.bp(3, 1, 1).g3(a)
    assert cand.elem == FieldElement.from_ints(a, 1, 0, 1) - g3
    assert candidate_shape("R3") == (1, 1)


def test_candidate_shape_rebuilds_every_point(ctx21, points21, b3):
    g3 = b3.g3(21)
    for cand in points21:
        d1, d2 = candidate_shape(cand.region)
        w = cand.v * 23 + cand.r
        expected = FieldElement.from_ints(21, -(cand.v - d1), -w, cand.v + d2) - cand.s * g3
        assert cand.elem == expected


def test_bruteforce_matches_closed_form_a21(ctx21, points21, b3):
    brute = second_parallelepiped_points_bruteforce(ctx21, b3)
    assert {c.elem for c in brute} == {c.elem for c in points21}
    labels = {c.elem: (c.s, c.v, c.r, c.region) for c in points21}
    for cand in brute:
        assert (cand.s, cand.v, cand.r, cand.region) == labels[cand.elem]


@pytest.mark.slow
@pytest.mark.parametrize("a", [30, 48])
def test_bruteforce_matches_closed_form(a, b3):
    ctx = make_context(a)
    brute = second_parallelepiped_points_bruteforce(ctx, b3)
    assert {c.elem for c in brute} == {c.elem for c in second_parallelepiped_points_p3(ctx)}


def test_closed_form_needs_the_family():
    with pytest.raises(SimplestCubicError):
        second_parallelepiped_points_p3(make_context(41))


def test_first_parallelepiped_p3(ctx21, b3):
    points = first_parallelepiped_points(ctx21, b3)
    assert len(points) == 5
    assert [c.index for c in points] == [1, 2, 3, 4, 5]
    for cand in points:
        assert cand.region == FIRST_PAR_TAG
        assert is_totally_positive(cand.elem) and is_algebraic_integer(cand.elem)
        assert in_parallelepiped(cand.elem, Parallelepiped.FIRST)
    assert FieldElement.from_ints(21, 1, 1, 1) in {c.elem for c in points}


def test_first_parallelepiped_b7():
    a = 41
    ctx = make_context(a)
    basis = classify(a).basis
    points = first_parallelepiped_points(ctx, basis)
    assert len(points) == 2 * 7 - 1
    for cand in points:
        assert in_parallelepiped(cand.elem, Parallelepiped.FIRST)


def test_first_parallelepiped_p13_congruences():
    a = 235
    ctx = make_context(a)
    basis = BasisDescriptor.bp(13, 3, 8)
    by_coords = {c.basis_coords: c for c in first_parallelepiped_points(ctx, basis)}
    cand = by_coords[(0, -1, 2)]
    assert cand.index == 3
    assert cand.elem == FieldElement.from_ints(a, Fraction(6, 13), Fraction(3, 13), Fraction(2, 13))


def test_t1_has_order_three_and_t2_is_its_square(points21):
    for cand in points21[::53]:
        x = cand.elem
        assert transform_T1(transform_T1(transform_T1(x))) == x
        assert transform_T2(x) == transform_T1(transform_T1(x))


def test_t1_region_images(ctx21, points21):
    a = 21
    assert region_image(ctx21, transform_T1, ["R1", "R2"], points21) == region_points(ctx21, ["R14"])
    assert region_image(ctx21, transform_T1, ["S1", "S2"], points21) == region_points(ctx21, ["S12"])
    assert region_image(ctx21, transform_T1, ["R4"], points21) == region_points(ctx21, ["R4"])
    assert region_image(ctx21, transform_T1, ["S3"], points21) == region_points(ctx21, ["S6", "S7"])
    B = 2 * a // 3
    lookup = index_candidates(points21)
    image = lookup[transform_T1(alpha_point(a, 1, 0, 0).elem)]
    assert (image.s, image.v, image.r) == (1, B + 1, 0)


def test_region_of_candidate(points21):
    cand = points21[0]
    assert region_of(cand) == cand.region
