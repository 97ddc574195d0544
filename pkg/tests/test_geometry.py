from fractions import Fraction

import pytest

from shi_regions.errors import ResourceLimitError, ValidationError
from shi_regions.feasibility import satisfies
from shi_regions.geometry import (
    build_arrangement,
    enumerate_regions,
    floor_elements,
    format_fraction,
    geometric_census,
    label_region,
    origin_side_elements,
    parse_fraction,
    region_constraints,
    region_window,
)
from shi_regions.model import Window, windows
from shi_regions.posets import down_set, floors_of, is_down_set, maximal, root_poset


def region_at(arr, point):
    signs = tuple(h.side(point) for h in arr.hyperplanes)
    return next(r for r in enumerate_regions(arr) if r.signs == signs)


@pytest.mark.parametrize("family,n,m", [("shi-a", 2, 2), ("shi-c", 2, 8), ("cox-c", 3, 9), ("shi-a", 4, 12), ("cox-a", 3, 3)])
def test_hyperplane_counts(family, n, m):
    assert len(build_arrangement(family, n)) == m


def test_unknown_family():
    with pytest.raises(ValidationError):
        build_arrangement("shi-d", 2)


@pytest.mark.parametrize(
    "family,n,count",
    [("shi-a", 2, 3), ("shi-a", 3, 16), ("shi-a", 4, 125), ("shi-c", 1, 3), ("shi-c", 2, 25), ("shi-c", 3, 343)],
)
def test_shi_region_counts(family, n, count):
    assert len(enumerate_regions(build_arrangement(family, n))) == count


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_coxeter_chambers(n):
    assert len(enumerate_regions(build_arrangement("cox-a", n))) == [1, 2, 6, 24][n - 1]
    if n <= 3:
        assert len(enumerate_regions(build_arrangement("cox-c", n))) == [2, 8, 48][n - 1]


@pytest.mark.parametrize("family,n", [("shi-a", 2), ("shi-a", 3), ("shi-c", 1), ("shi-c", 2), ("cox-c", 2)])
def test_sweep_matches_flood_fill(family, n):
    arr = build_arrangement(family, n)
    def shape(regions):
        return [(r.signs, r.walls, r.ceilings, r.floors) for r in regions]

    assert shape(enumerate_regions(arr, "bfs")) == shape(enumerate_regions(arr, "sweep"))


def test_unknown_method():
    with pytest.raises(ValidationError):
        enumerate_regions(build_arrangement("shi-a", 2), "dfs")


def test_size_guard():
    with pytest.raises(ResourceLimitError):
        enumerate_regions(build_arrangement("shi-c", 4))


@pytest.mark.parametrize("family,n", [("shi-a", 3), ("shi-c", 2)])
def test_witnesses_strictly_inside(family, n):
    arr = build_arrangement(family, n)
    for r in enumerate_regions(arr):
        assert satisfies(r.witness, region_constraints(arr, r.signs))
        assert all(h.value(r.witness) != h.offset for h in arr.hyperplanes)


def test_label_of_fundamental_alcove_region():
    arr = build_arrangement("shi-a", 3)
    r = region_at(arr, (Fraction(3, 4), Fraction(1, 2), Fraction(1, 4)))
    lab = label_region(arr, r)
    assert lab.window == Window("A", (1, 2, 3))
    assert lab.antichain == ((1, 3),)
    assert [arr.hyperplanes[k].label for k in r.ceilings] == ["x1-x3=1"]


def test_label_c1_regions():
    arr = build_arrangement("shi-c", 1)
    inner = label_region(arr, region_at(arr, (Fraction(1, 4),)))
    assert (inner.window, inner.antichain) == (Window("C", (-1,)), ((-1, 1),))
    neg = label_region(arr, region_at(arr, (Fraction(-1),)))
    assert (neg.window, neg.antichain) == (Window("C", (1,)), ())


def test_region_window_sign_convention():
    # x2 > x1 > 0 means x_{-1} > x_{-2} > ... ; window lists w(1), w(2)
    arr = build_arrangement("shi-c", 2)
    r = region_at(arr, (Fraction(1, 10), Fraction(2, 10)))
    assert region_window(arr, r) == Window("C", (-1, -2))


def test_census_a3():
    c = geometric_census("A", 3)
    assert c.total == 16
    assert tuple(c.per_window.values()) == (5, 3, 3, 2, 2, 1)


def test_census_c2():
    c = geometric_census("C", 2)
    assert c.total == 25
    assert sorted(c.per_window.values()) == sorted((2, 1, 3, 4, 2, 3, 4, 6))
    assert tuple(c.per_window.values()) == (2, 1, 3, 4, 3, 2, 4, 6)
    assert c.ceiling_hist == {0: 8, 1: 16, 2: 1}


def test_census_a2_histogram():
    assert geometric_census("A", 2).ceiling_hist == {0: 2, 1: 1}


@pytest.mark.parametrize("family,n,shi", [("A", 4, "shi-a"), ("C", 3, "shi-c")])
def test_region_structure_matches_posets(family, n, shi):
    arr = build_arrangement(shi, n)
    c = geometric_census(family, n)
    assert c.total == ((n + 1) ** (n - 1) if family == "A" else (2 * n + 1) ** n)
    for r, lab in c.table:
        p = root_poset(family, lab.window)
        ideal = origin_side_elements(arr, r, lab.window)
        assert is_down_set(p, ideal)
        assert maximal(p, ideal) == lab.antichain
        assert down_set(p, lab.antichain) == ideal
        assert floor_elements(arr, r, lab.window) == floors_of(p, lab.antichain)
    assert sum(c.ceiling_hist.values()) == c.total
    # the two statistics are equidistributed
    assert c.ceiling_hist == c.floor_hist


def test_label_needs_shi_arrangement():
    arr = build_arrangement("cox-a", 2)
    with pytest.raises(ValidationError):
        label_region(arr, enumerate_regions(arr)[0])


def test_fraction_text():
    assert format_fraction(Fraction(3, 4)) == "3/4"
    assert format_fraction(Fraction(2)) == "2/1"
    assert parse_fraction("-3/4") == Fraction(-3, 4)
