"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from folnerkit.groups import GroupModel, LampElement, bs_element, normalize_config


@st.composite
def lamp_elements(draw, d: int):
    pos = draw(st.integers(-6, 6))
    off = draw(st.integers(-4, 4))
    word = draw(st.lists(st.integers(0, d - 1), max_size=5))
    return LampElement(pos, normalize_config(off, word))


@st.composite
def bs_elements(draw, p: int):
    level = draw(st.integers(-4, 4))
    value = Fraction(draw(st.integers(-40, 40)), p ** draw(st.integers(0, 3)))
    return bs_element(level, value, p)


def models():
    return st.sampled_from(
        [GroupModel.lamplighter(2), GroupModel.lamplighter(3), GroupModel.sws(), GroupModel.bs(2), GroupModel.bs(3)]
    )


def elements_of(model):
    if model.kind == "bs":
        return bs_elements(model.order)
    return lamp_elements(model.order)
