from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from folnerkit.groups import (
    DomainError,
    GroupModel,
    LampElement,
    bs_element,
    lamps,
    normalize_config,
    parse_model,
)

from strategies import elements_of, models


@st.composite
def model_and_elements(draw, count=3):
    m = draw(models())
    return m, [draw(elements_of(m)) for _ in range(count)]


@given(model_and_elements())
def test_associative(me):
    m, (x, y, z) = me
    assert m.mul(m.mul(x, y), z) == m.mul(x, m.mul(y, z))


@given(model_and_elements(1))
def test_inverse_and_identity(me):
    m, (x,) = me
    e = m.identity
    assert m.mul(x, m.inv(x)) == e == m.mul(m.inv(x), x)
    assert m.mul(x, e) == x == m.mul(e, x)


@given(model_and_elements(2))
def test_neighbours_symmetric_and_left_invariant(me):
    m, (x, g) = me
    for y in m.neighbors(x):
        assert x in m.neighbors(y)
    assert {m.mul(g, y) for y in m.neighbors(x)} == m.neighbors(m.mul(g, x))


@given(model_and_elements(1))
def test_format_parse_roundtrip(me):
    m, (x,) = me
    assert m.parse(m.format(x)) == x


@given(st.integers(-5, 5), st.lists(st.integers(0, 2), max_size=6))
def test_normalize_strips_zeros(off, word):
    c = normalize_config(off, word)
    assert not c.word or (c.word[0] and c.word[-1])
    assert {off + i for i, s in enumerate(word) if s} == set(c.support())


def test_lamp_products():
    m = GroupModel.lamplighter(2)
    e = LampElement(1, normalize_config(0, []))
    assert m.mul(e, e) == LampElement(2, normalize_config(0, []))
    d0 = LampElement(0, lamps(0))
    assert m.mul(d0, e) == LampElement(1, lamps(0))
    # lamps at {1,2} and the shifted {1,2} cancel entirely
    x = LampElement(2, lamps(1, 2))
    y = LampElement(-2, lamps(-1, 0))
    assert m.mul(x, y) == m.identity


def test_neighbour_counts():
    assert len(GroupModel.lamplighter(2).neighbors(GroupModel.lamplighter(2).identity)) == 3
    assert len(GroupModel.lamplighter(3).neighbors(GroupModel.lamplighter(3).identity)) == 4
    sws = GroupModel.sws()
    t = LampElement(1, normalize_config(0, []))
    dl = LampElement(0, lamps(0))
    words = [[t], [dl], [t, dl], [dl, t], [dl, t, dl]]
    products = set()
    for w in words:
        g = sws.identity
        for s in w:
            g = sws.mul(g, s)
        products |= {g, sws.inv(g)}
    assert len(products) == 9  # ten products; delta is its own inverse
    assert sws.neighbors(sws.identity) == products


def test_bs_neighbours():
    b2 = GroupModel.bs(2)
    assert b2.neighbors(bs_element(1, Fraction(1, 2), 2)) == {
        bs_element(0, Fraction(1, 2), 2),
        bs_element(2, Fraction(1, 2), 2),
        bs_element(1, Fraction(5, 2), 2),
        bs_element(1, Fraction(-3, 2), 2),
    }
    b3 = GroupModel.bs(3)
    assert b3.neighbors(bs_element(-1, 0, 3)) == {
        bs_element(-2, 0, 3),
        bs_element(0, 0, 3),
        bs_element(-1, Fraction(1, 3), 3),
        bs_element(-1, Fraction(-1, 3), 3),
    }


@pytest.mark.parametrize("p", [2, 3, 5])
def test_bs_relation(p):
    m = GroupModel.bs(p)
    a, b = bs_element(1, 0, p), bs_element(0, 1, p)
    lhs = m.mul(m.mul(a, b), m.inv(a))
    assert lhs == bs_element(0, p, p)


def test_translate():
    m = GroupModel.lamplighter(2)
    assert m.translate(m.identity, 5) == LampElement(5, normalize_config(0, []))


@pytest.mark.parametrize("bad", ["lamp:1", "bs:1", "foo", "lamp:x", ""])
def test_bad_models(bad):
    with pytest.raises(DomainError):
        parse_model(bad)


def test_bad_elements():
    m = GroupModel.lamplighter(2)
    for text in ("3", "1|0:2", "a|", "1|0"):
        with pytest.raises(DomainError):
            m.parse(text)
    with pytest.raises(DomainError):
        GroupModel.bs(2).parse("0|1/3^1")


@given(st.integers(-3, 3))
def test_bs_non_padic_rejected(level):
    with pytest.raises(DomainError):
        bs_element(level, Fraction(1, 3), 2)
