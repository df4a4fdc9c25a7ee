import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopweights import cartan
from loopweights.errors import ConfigurationError, ResourceError
from oracles import type_a_positive_roots


@pytest.mark.parametrize("family,rank,count", [("A", 1, 2), ("A", 2, 6), ("A", 3, 12), ("D", 4, 24), ("D", 5, 40)])
def test_root_counts(family, rank, count):
    rs = cartan.build_root_system(family, rank)
    assert len(rs.roots) == count
    assert len(rs.positive_roots) == count // 2


@pytest.mark.parametrize("rank", [1, 2, 3, 4])
def test_positive_roots_match_direct_construction(rank):
    rs = cartan.build_root_system("A", rank)
    assert sorted(rs.positive_roots) == sorted(type_a_positive_roots(rank))


@pytest.mark.parametrize("family,rank", [("A", 1), ("A", 3), ("D", 4), ("D", 5)])
def test_simply_laced_normalization(family, rank):
    rs = cartan.build_root_system(family, rank)
    for a in rs.roots:
        h = cartan.coroot(rs, a)
        assert cartan.evaluate(a, h) == 2
        assert cartan.dot(h, h) == 2


def test_cartan_matrix_a2():
    rs = cartan.build_root_system("A", 2)
    assert rs.cartan_matrix == ((2, -1), (-1, 2))


def test_fundamental_weights_a2():
    rs = cartan.build_root_system("A", 2)
    third = Fraction(1, 3)
    assert rs.fundamental_weights == ((2 * third, -third, -third), (third, third, -2 * third))


@pytest.mark.parametrize("family,rank", [("A", 2), ("A", 4), ("D", 4), ("D", 6)])
def test_fundamental_weights_are_dual(family, rank):
    rs = cartan.build_root_system(family, rank)
    for i, om in enumerate(rs.fundamental_weights):
        for j, a in enumerate(rs.simple_roots):
            assert cartan.dot(om, cartan.coroot(rs, a)) == (i == j)


def test_highest_root_and_comarks():
    a3 = cartan.build_root_system("A", 3)
    assert a3.highest_root == (1, 0, 0, -1)
    assert a3.comarks == (1, 1, 1)
    d4 = cartan.build_root_system("D", 4)
    assert d4.highest_root == (1, 1, 0, 0)
    assert d4.comarks == (1, 2, 1, 1)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_weyl_order_type_a(n):
    assert len(cartan.weyl_group(cartan.build_root_system("A", n - 1))) == math.factorial(n)


def test_weyl_order_d4():
    assert len(cartan.weyl_group(cartan.build_root_system("D", 4))) == 192


def test_weyl_cap():
    with pytest.raises(ResourceError):
        cartan.weyl_group(cartan.build_root_system("A", 3), cap=10)


def test_weyl_group_permutes_roots():
    rs = cartan.build_root_system("D", 4)
    roots = set(rs.roots)
    for w in cartan.weyl_group(rs)[:40]:
        assert {w.apply_int(a) for a in rs.roots} == roots


@pytest.mark.parametrize("family,rank", [("B", 2), ("A", 0), ("D", 1), ("E", 6)])
def test_bad_config(family, rank):
    with pytest.raises(ConfigurationError):
        cartan.build_root_system(family, rank)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(max_denominator=20), min_size=3, max_size=3))
def test_reflection_is_involution(x):
    rs = cartan.build_root_system("A", 2)
    for a in rs.positive_roots:
        assert cartan.reflect(rs, a, cartan.reflect(rs, a, x)) == tuple(x)
        assert cartan.evaluate(a, cartan.reflect(rs, a, x)) == -cartan.evaluate(a, x)
