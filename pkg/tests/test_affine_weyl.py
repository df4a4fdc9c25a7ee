import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from loopweights import affine_weyl as aw
from loopweights import cartan
from loopweights.errors import DomainError, SingularPointError
from oracles import reduce_a1_bruteforce

A1 = cartan.build_root_system("A", 1)
A2 = cartan.build_root_system("A", 2)


def _a1(t):
    t = Fraction(t)
    return (t, -t)


@pytest.mark.parametrize("rank", [1, 2, 3])
def test_two_reflections_make_a_translation(rank):
    rs = cartan.build_root_system("A", rank)
    for a in rs.positive_roots:
        neg = tuple(-v for v in a)
        g = aw.compose(aw.reflection_element(rs, aw.AffineRoot(1, neg)), aw.reflection_element(rs, aw.AffineRoot(0, a)))
        assert g == aw.AffineWeylElement.pure_translation(cartan.coroot(rs, a))


def test_reduce_example():
    x0, g, word = aw.reduce_to_alcove(A1, _a1(Fraction(23, 10)))
    assert cartan.evaluate((1, -1), x0) == Fraction(3, 5)
    assert g.translation == (-2, 2) and g.weyl.is_identity()
    assert aw.word_to_element(A1, word) == g


def test_reduce_interior_is_identity():
    x0, g, word = aw.reduce_to_alcove(A1, _a1(Fraction(1, 5)))
    assert word == [] and g.is_identity() and x0 == _a1(Fraction(1, 5))


def test_reduce_negative_point():
    x0, g, word = aw.reduce_to_alcove(A1, _a1(Fraction(-3, 10)))
    assert cartan.evaluate((1, -1), x0) == Fraction(3, 5)
    assert g == aw.reflection_element(A1, aw.AffineRoot(0, (1, -1)))


@pytest.mark.parametrize("t", [0, Fraction(1, 2), 3, Fraction(-7, 2)])
def test_reduce_wall_raises(t):
    with pytest.raises(SingularPointError):
        aw.reduce_to_alcove(A1, _a1(t))


@settings(max_examples=100, deadline=None)
@given(st.fractions(min_value=-40, max_value=40, max_denominator=50))
def test_reduce_matches_bruteforce_a1(t):
    a = 2 * t
    if a.denominator == 1:
        return
    x0, g, _ = aw.reduce_to_alcove(A1, _a1(t))
    assert cartan.evaluate((1, -1), x0) == reduce_a1_bruteforce(a)
    assert g(_a1(t)) == x0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=31), min_size=2, max_size=2))
def test_reduce_lands_inside_a2(xy):
    x = (xy[0], xy[1], -xy[0] - xy[1])
    if not aw.is_regular(A2, x):
        return
    x0, g, word = aw.reduce_to_alcove(A2, x)
    assert aw.in_positive_alcove(A2, x0) == "interior"
    assert g(x) == x0
    assert aw.word_to_element(A2, word) == g


def test_inverse_and_compose():
    rng = random.Random(3)
    walls = [aw.reflection_element(A2, w) for w in aw.simple_affine_roots(A2)]
    for _ in range(30):
        g = aw.AffineWeylElement.identity(3)
        for _ in range(rng.randint(0, 8)):
            g = aw.compose(rng.choice(walls), g)
        assert aw.compose(g, aw.inverse(g)).is_identity()
        assert aw.compose(aw.inverse(g), g).is_identity()


def test_reflections_fix_walls_and_square_to_one():
    rng = random.Random(11)
    rs = cartan.build_root_system("A", 3)
    for _ in range(200):
        a = rng.choice(rs.roots)
        k = rng.randint(-3, 3)
        x = tuple(Fraction(rng.randint(-60, 60), rng.randint(1, 12)) for _ in range(4))
        ar = aw.AffineRoot(k, a)
        assert aw.affine_reflect(rs, ar, aw.affine_reflect(rs, ar, x)) == x
        # project onto the wall, then the reflection fixes it
        h = cartan.coroot(rs, a)
        p = tuple(xi - ar.value(x) / 2 * hi for xi, hi in zip(x, h))
        assert ar.value(p) == 0
        assert aw.affine_reflect(rs, ar, p) == p


def test_element_rejects_non_coroot_translation():
    with pytest.raises(DomainError):
        aw.element(A2, (1, 0, 0))
    assert aw.element(A2, (1, -1, 0)).translation == (1, -1, 0)


@pytest.mark.parametrize("rank,radius,count", [(1, Fraction(3, 2), 4), (1, 7, 20), (2, 3, 96)])
def test_alcove_routes_agree(rank, radius, count):
    rs = cartan.build_root_system("A", rank)
    group = aw.enumerate_alcoves(rs, radius)
    geo = aw.discover_alcoves_geometric(rs, radius)
    assert len(group) == count
    assert sorted(a.sample_point for a in group) == sorted(geo)
    base = aw.positive_alcove_sample(rs)
    assert len({a.address for a in group}) == len(group)
    for a in group:
        assert a.address(base) == a.sample_point


def test_alcove_routes_agree_a3_small():
    rs = cartan.build_root_system("A", 3)
    group = aw.enumerate_alcoves(rs, 1)
    assert len(group) > 24
    assert sorted(a.sample_point for a in group) == sorted(aw.discover_alcoves_geometric(rs, 1))


def test_fundamental_alcove_vertices_a2():
    verts = aw.fundamental_alcove_vertices(A2)
    assert len(verts) == 3
    for v in verts:
        assert aw.in_positive_alcove(A2, v) == "wall"
