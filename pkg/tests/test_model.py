from itertools import product
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from shi_regions.errors import ResourceLimitError, ValidationError
from shi_regions.identities import brute_force_nonnesting, brute_force_type_census, kreweras_count, type_count_C
from shi_regions.model import (
    SetPartition,
    Window,
    check_sequence,
    d_stat,
    dC_stat,
    enumerate_nonnesting,
    format_partition,
    format_window,
    is_nonnesting,
    is_parking_function,
    parking_functions,
    parse_partition,
    parse_window,
    partition_type,
    signed_windows,
    types,
    windows,
)

from conftest import parks


def catalan(n):
    return comb(2 * n, n) // (n + 1)


# -- partition types

def test_type_of_c5_partition_with_zero_block():
    p = SetPartition("C", 5, ((2,), (-2,), (-1, -4), (1, 4), (-5, -3, 3, 5)))
    assert partition_type(p) == (2, 1)
    assert p.zero_block == (-5, -3, 3, 5)


def test_type_of_singletons_is_all_ones():
    assert partition_type(SetPartition("A", 3, ((1,), (2,), (3,)))) == (1, 1, 1)


def test_type_of_c2_block_pair():
    p = SetPartition("C", 2, ((-2, -1), (1, 2)))
    assert partition_type(p) == (2,)
    assert brute_force_type_census("C", 2)[(2,)] >= 1


def test_zero_block_size_matches_type():
    for n in range(1, 5):
        for p in enumerate_nonnesting("C", n):
            z = p.zero_block
            assert (0 if z is None else len(z)) == 2 * (n - sum(partition_type(p)))


# -- nonnesting

def test_crossing_arcs_are_nonnesting():
    assert is_nonnesting(SetPartition("A", 4, ((1, 3), (2, 4))))


def test_nested_arcs_are_rejected():
    assert not is_nonnesting(SetPartition("A", 4, ((1, 4), (2, 3))))


def test_singletons_are_nonnesting():
    assert is_nonnesting(SetPartition("A", 5, tuple((i,) for i in range(1, 6))))


@pytest.mark.parametrize("family,n,expected", [("A", 3, 5), ("C", 2, 6), ("A", 1, 1)])
def test_enumerate_nonnesting_small(family, n, expected):
    assert len(enumerate_nonnesting(family, n)) == expected


@pytest.mark.parametrize("family,n", [("A", k) for k in range(1, 7)] + [("C", k) for k in range(1, 5)])
def test_enumeration_equals_brute_force(family, n):
    assert enumerate_nonnesting(family, n) == brute_force_nonnesting(family, n)


def test_nonnesting_a_is_catalan():
    for n in range(1, 9):
        assert len(enumerate_nonnesting("A", n)) == catalan(n)


def test_nonnesting_c_is_central_binomial():
    for n in range(1, 7):
        assert len(enumerate_nonnesting("C", n)) == comb(2 * n, n)


def test_enumeration_is_sorted_and_unique():
    parts = enumerate_nonnesting("C", 3)
    assert parts == sorted(parts, key=lambda p: p.blocks)
    assert len(set(parts)) == len(parts)


def test_enumeration_guard():
    with pytest.raises(ResourceLimitError):
        enumerate_nonnesting("A", 11)


@pytest.mark.parametrize("n", range(1, 8))
def test_kreweras_matches_census(n):
    census = brute_force_type_census("A", n) if n <= 6 else None
    if census is None:
        from collections import Counter
        census = Counter(partition_type(p) for p in enumerate_nonnesting("A", n))
    for lam in types("A", n):
        assert kreweras_count(lam, n) == census.get(lam, 0)


@pytest.mark.parametrize("n", range(1, 6))
def test_type_count_c_matches_census(n):
    from collections import Counter
    census = Counter(partition_type(p) for p in enumerate_nonnesting("C", n))
    for lam in types("C", n):
        assert type_count_C(lam, n) == census.get(lam, 0)


# -- partitions: validation and text form

def test_partition_rejects_asymmetric_c_blocks():
    with pytest.raises(ValidationError):
        SetPartition("C", 2, ((-2, 1), (-1,), (2,)))


def test_partition_rejects_two_zero_blocks():
    with pytest.raises(ValidationError):
        SetPartition("C", 2, ((-1, 1), (-2, 2)))


def test_partition_rejects_missing_element():
    with pytest.raises(ValidationError):
        SetPartition("A", 3, ((1, 2),))


def test_partition_text_round_trip():
    for p in enumerate_nonnesting("C", 3):
        assert parse_partition("C", 3, format_partition(p)) == p


def test_from_arcs_rebuilds_partition():
    for p in enumerate_nonnesting("A", 5):
        assert SetPartition.from_arcs("A", 5, p.arcs) == p


# -- windows

def test_window_formats():
    assert format_window(Window("A", (1, 3, 2))) == "132"
    assert format_window(Window("C", (-2, -1))) == "[-2,-1]"
    assert parse_window("C", "[-2,-1]") == Window("C", (-2, -1))
    assert parse_window("A", "132") == Window("A", (1, 3, 2))


def test_signed_window_is_odd():
    w = Window("C", (-2, 1, 3))
    for i in (1, 2, 3):
        assert w(-i) == -w(i)


def test_window_rejects_non_permutations():
    with pytest.raises(ValidationError):
        Window("A", (1, 1, 2))
    with pytest.raises(ValidationError):
        Window("C", (1, -1))


def test_window_counts():
    for n in range(1, 5):
        assert len(windows("A", n)) == factorial(n)
        assert len(signed_windows(n)) == 2**n * factorial(n)


# -- sequences

def test_d_statistics():
    assert d_stat((1, 3, 1)) == 2
    assert dC_stat((0,)) == 0
    assert dC_stat((3, -3, 1)) == 2


def test_parking_function_examples():
    assert is_parking_function((1, 3, 1))
    assert not is_parking_function((2, 2))
    assert is_parking_function((1,) * 6)
    assert len(parking_functions(3)) == 16


@pytest.mark.parametrize("n", range(1, 8))
def test_parking_function_count(n):
    assert len(parking_functions(n)) == (n + 1) ** (n - 1)


@given(st.lists(st.integers(1, 7), min_size=1, max_size=7))
def test_parking_criterion_matches_car_simulation(seq):
    assert is_parking_function(seq) == parks(seq)


def test_check_sequence_ranges():
    assert check_sequence("A", 3, (4, 1, 2)) == (4, 1, 2)
    with pytest.raises(ValidationError):
        check_sequence("A", 3, (5, 1, 1))
    with pytest.raises(ValidationError):
        check_sequence("C", 2, (3, 0))
    with pytest.raises(ValidationError):
        check_sequence("C", 2, (0,))
