"""Tests for the region tables of the second parallelepiped"""

import pytest

from simplest_cubic.regions import (
    REGIONS,
    REGIONS_BY_TAG,
    RegionError,
    index_set,
    region_of,
    regions_for,
    render_region_map,
)


@pytest.mark.parametrize("a", [21, 30, 48, 57])
@pytest.mark.parametrize("s", [0, 1, 2])
def test_regions_tile_the_index_set(a, s):
    points = set(index_set(a, s))
    covered = [(v, r) for region in regions_for(s) for v, r in region.points(a)]
    assert len(covered) == len(set(covered))
    assert set(covered) == points
    for v, r in points:
        assert region_of(a, s, v, r).s == s


def test_index_set_sizes():
    a = 21
    D = a * a + 3 * a + 3
    assert len(list(index_set(a, 0))) == D - 1
    assert len(list(index_set(a, 1))) == D
    assert (0, 0) not in set(index_set(a, 0))


def test_region_tags():
    assert len(REGIONS) == 4 + 15 + 15
    assert [region.tag for region in regions_for(0)] == ["P1", "P2", "P3", "P4"]
    assert REGIONS_BY_TAG["R15"].shape == (0, 3)


def test_region_of_known_points():
    a = 21
    assert region_of(a, 1, 0, 0).tag == "R3"
    assert region_of(a, 0, 0, 1).tag == "P1"
    assert region_of(a, 2, a + 1, 0).tag == "S8"


def test_region_of_outside_index_set():
    with pytest.raises(RegionError):
        region_of(21, 0, 0, 0)
    with pytest.raises(RegionError):
        region_of(21, 1, 30, 5)


def test_render_region_map():
    text = render_region_map(21, 1)
    assert "R14" in text and "R1" in text
    assert len(text.splitlines()) == 21 + 2 + 2
