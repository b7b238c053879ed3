"""Exact elements and group laws for Z wr D and BS(1,p), with Cayley neighbours.

Lamp states are modelled as Z/dZ (only the size of D matters for the
generating set S_D).  Lamp configurations are trimmed dense windows,
BS(1,p) translations are exact p-adic rationals m * p**-e.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Union


class DomainError(ValueError):
    """Raised on elements or parameters outside an operation's domain."""


_DIGITS = string.digits + string.ascii_lowercase


# ---------------------------------------------------------------------------
# lamplighter


class LampConfig(NamedTuple):
    """Finitely supported lamp configuration.

    ``word[i]`` is the lamp state at position ``offset + i``.  A normalized
    config has an empty word (the identity configuration) or nonzero first
    and last symbols; the empty config always has offset 0.
    """

    offset: int
    word: tuple

    def get(self, i: int) -> int:
        j = i - self.offset
        if 0 <= j < len(self.word):
            return self.word[j]
        return 0

    def support(self) -> list[int]:
        return [self.offset + j for j, s in enumerate(self.word) if s]

    @property
    def lo(self) -> int:
        return self.offset

    @property
    def hi(self) -> int:
        """Last stored position (offset - 1 for the empty config)."""
        return self.offset + len(self.word) - 1


EMPTY = LampConfig(0, ())


def normalize_config(offset: int, word: Iterable[int]) -> LampConfig:
    w = list(word)
    lo, hi = 0, len(w)
    while lo < hi and w[lo] == 0:
        lo += 1
    while hi > lo and w[hi - 1] == 0:
        hi -= 1
    if lo == hi:
        return EMPTY
    return LampConfig(offset + lo, tuple(w[lo:hi]))


def config_from_dict(values: dict, d: int) -> LampConfig:
    """Build a config from ``{position: symbol}``."""
    items = {k: v % d for k, v in values.items() if v % d}
    if not items:
        return EMPTY
    lo, hi = min(items), max(items)
    return LampConfig(lo, tuple(items.get(i, 0) for i in range(lo, hi + 1)))


def lamps(*positions: int, d: int = 2, value: int = 1) -> LampConfig:
    """Config with the given positions set to ``value`` (toggled for repeats)."""
    acc: dict[int, int] = {}
    for p in positions:
        acc[p] = (acc.get(p, 0) + value) % d
    return config_from_dict(acc, d)


def config_add(f: LampConfig, g: LampConfig, d: int, shift: int = 0) -> LampConfig:
    """Pointwise ``f(x) + g(x - shift)`` mod d."""
    if not g.word:
        return f
    goff = g.offset + shift
    if not f.word:
        return LampConfig(goff, g.word)
    lo = min(f.offset, goff)
    hi = max(f.hi, goff + len(g.word) - 1)
    out = [0] * (hi - lo + 1)
    for j, s in enumerate(f.word):
        out[f.offset - lo + j] = s
    base = goff - lo
    for j, s in enumerate(g.word):
        out[base + j] = (out[base + j] + s) % d
    return normalize_config(lo, out)


def config_neg(f: LampConfig, d: int) -> LampConfig:
    return LampConfig(f.offset, tuple((-s) % d for s in f.word)) if f.word else f


def config_bump(f: LampConfig, pos: int, delta: int, d: int) -> LampConfig:
    """Change the lamp at ``pos`` by ``delta`` (mod d)."""
    if not f.word:
        v = delta % d
        return LampConfig(pos, (v,)) if v else EMPTY
    j = pos - f.offset
    if 0 <= j < len(f.word):
        w = list(f.word)
        w[j] = (w[j] + delta) % d
        if w[j] == 0 and (j == 0 or j == len(w) - 1):
            return normalize_config(f.offset, w)
        return LampConfig(f.offset, tuple(w))
    v = delta % d
    if v == 0:
        return f
    if j < 0:
        return LampConfig(pos, (v,) + (0,) * (-j - 1) + f.word)
    return LampConfig(f.offset, f.word + (0,) * (j - len(f.word)) + (v,))


class LampElement(NamedTuple):
    pos: int
    config: LampConfig


LAMP_IDENTITY = LampElement(0, EMPTY)


def _check_config(f: LampConfig, d: int) -> None:
    for s in f.word:
        if not 0 <= s < d:
            raise DomainError(f"lamp symbol {s} outside [0, {d - 1}]")


def lamp_mul(x: LampElement, y: LampElement, d: int) -> LampElement:
    """(a, f)(a', f') = (a + a', x -> f(x) + f'(x - a))."""
    _check_config(x.config, d)
    _check_config(y.config, d)
    return LampElement(x.pos + y.pos, config_add(x.config, y.config, d, shift=x.pos))


def lamp_inv(x: LampElement, d: int) -> LampElement:
    neg = config_neg(x.config, d)
    return LampElement(-x.pos, LampConfig(neg.offset - x.pos, neg.word) if neg.word else EMPTY)


# ---------------------------------------------------------------------------
# Baumslag-Solitar


class PadicRational(NamedTuple):
    """The number ``mantissa * base**-exponent`` in canonical reduced form."""

    mantissa: int
    exponent: int
    base: int

    def as_fraction(self):
        from fractions import Fraction

        return Fraction(self.mantissa, self.base**self.exponent)

    def __str__(self) -> str:
        return f"{self.mantissa}/{self.base}^{self.exponent}"


def padic(m: int, e: int, p: int) -> PadicRational:
    """Canonical form of m * p**-e; e may be negative on input."""
    if e < 0:
        return PadicRational(m * p ** (-e), 0, p)
    if m == 0:
        return PadicRational(0, 0, p)
    while e > 0 and m % p == 0:
        m //= p
        e -= 1
    return PadicRational(m, e, p)


def padic_add(x: PadicRational, y: PadicRational) -> PadicRational:
    p = x.base
    if x.exponent == y.exponent:
        return padic(x.mantissa + y.mantissa, x.exponent, p)
    e = max(x.exponent, y.exponent)
    m = x.mantissa * p ** (e - x.exponent) + y.mantissa * p ** (e - y.exponent)
    return padic(m, e, p)


def padic_power(p: int, n: int) -> PadicRational:
    """p**n for any integer n."""
    return PadicRational(p**n, 0, p) if n >= 0 else PadicRational(1, -n, p)


def padic_scale(x: PadicRational, n: int) -> PadicRational:
    """x * p**n."""
    if x.mantissa == 0:
        return x
    return padic(x.mantissa, x.exponent - n, x.base)


def padic_neg(x: PadicRational) -> PadicRational:
    return PadicRational(-x.mantissa, x.exponent, x.base)


class BSElement(NamedTuple):
    """The affine map x -> p**level * x + translation."""

    level: int
    translation: PadicRational


def bs_element(level: int, value, p: int) -> BSElement:
    """Build from an int or a Fraction whose denominator divides a power of p."""
    from fractions import Fraction

    v = Fraction(value)
    e, scale = 0, 1
    while scale % v.denominator:
        scale *= p
        e += 1
        if e > 4 * v.denominator.bit_length() + 4:
            raise DomainError(f"{value} is not in Z[1/{p}]")
    return BSElement(level, padic(v.numerator * (scale // v.denominator), e, p))


def bs_mul(x: BSElement, y: BSElement) -> BSElement:
    """(n, f)(n', f') = (n + n', f + p**n f')."""
    return BSElement(x.level + y.level, padic_add(x.translation, padic_scale(y.translation, x.level)))


def bs_inv(x: BSElement) -> BSElement:
    return BSElement(-x.level, padic_neg(padic_scale(x.translation, -x.level)))


def bs_neighbors(x: BSElement, p: int) -> set[BSElement]:
    """Right multiplication by a, a^-1, b, b^-1."""
    f = x.translation
    step = padic_power(p, x.level)
    return {
        BSElement(x.level - 1, f),
        BSElement(x.level + 1, f),
        BSElement(x.level, padic_add(f, step)),
        BSElement(x.level, padic_add(f, padic_neg(step))),
    }


# ---------------------------------------------------------------------------
# models

Element = Union[LampElement, BSElement]


@dataclass(frozen=True)
class GroupModel:
    """A group together with its generating set.

    ``kind`` is ``"lamp"`` (Z wr Z/d with S_D), ``"lamp-sws"`` (Z wr Z/2 with
    the switch-walk-switch set) or ``"bs"`` (BS(1,p) with {a, b}).
    """

    kind: str
    order: int

    def __post_init__(self):
        if self.kind not in ("lamp", "lamp-sws", "bs"):
            raise DomainError(f"unknown model kind {self.kind!r}")
        if self.order < 2:
            raise DomainError("order must be at least 2")
        if self.kind == "lamp-sws" and self.order != 2:
            raise DomainError("switch-walk-switch is defined for d = 2 only")
        object.__setattr__(self, "_gens", None)

    # -- construction -----------------------------------------------------
    @classmethod
    def lamplighter(cls, d: int) -> "GroupModel":
        return cls("lamp", d)

    @classmethod
    def sws(cls) -> "GroupModel":
        return cls("lamp-sws", 2)

    @classmethod
    def bs(cls, p: int) -> "GroupModel":
        return cls("bs", p)

    @property
    def is_lamp(self) -> bool:
        return self.kind != "bs"

    @property
    def spec(self) -> str:
        return {"lamp": f"lamp:{self.order}", "lamp-sws": "lamp-sws", "bs": f"bs:{self.order}"}[self.kind]

    def __str__(self) -> str:
        return self.spec

    # -- group law ----------------------------------------------------------
    @property
    def identity(self) -> Element:
        if self.is_lamp:
            return LAMP_IDENTITY
        return BSElement(0, PadicRational(0, 0, self.order))

    def mul(self, x: Element, y: Element) -> Element:
        if self.is_lamp:
            return lamp_mul(x, y, self.order)
        return bs_mul(x, y)

    def inv(self, x: Element) -> Element:
        if self.is_lamp:
            return lamp_inv(x, self.order)
        return bs_inv(x)

    def generators(self) -> list[Element]:
        """The generating set S (not symmetrized)."""
        d = self.order
        if self.kind == "bs":
            return [BSElement(-1, PadicRational(0, 0, d)), BSElement(0, PadicRational(1, 0, d))]
        t = LampElement(1, EMPTY)
        delta = [LampElement(0, LampConfig(0, (i,))) for i in range(1, d)]
        if self.kind == "lamp":
            return [t] + delta
        dl = delta[0]
        return [t, dl, lamp_mul(t, dl, 2), lamp_mul(dl, t, 2), lamp_mul(lamp_mul(dl, t, 2), dl, 2)]

    def symmetric_generators(self) -> list[Element]:
        if self._gens is None:
            out: list[Element] = []
            for s in self.generators():
                for g in (s, self.inv(s)):
                    if g not in out:
                        out.append(g)
            object.__setattr__(self, "_gens", out)
        return self._gens

    def neighbors(self, x: Element) -> set[Element]:
        """{x s : s in S u S^-1}."""
        if self.kind == "bs":
            return bs_neighbors(x, self.order)
        if self.kind == "lamp":
            return lamp_neighbors(x, self)
        return {lamp_mul(x, s, 2) for s in self.symmetric_generators()}

    def translate(self, x: Element, k: int) -> Element:
        """Left multiplication by t^k (lamplighter) or (k, 0) (BS)."""
        if self.is_lamp:
            return LampElement(x.pos + k, LampConfig(x.config.offset + k, x.config.word) if x.config.word else EMPTY)
        return BSElement(x.level + k, padic_scale(x.translation, k))

    def contains(self, x) -> bool:
        if self.is_lamp:
            return isinstance(x, LampElement) and all(0 <= s < self.order for s in x.config.word)
        return isinstance(x, BSElement) and x.translation.base == self.order

    # -- text form ----------------------------------------------------------
    def format(self, x: Element) -> str:
        return format_element(x, self)

    def parse(self, text: str) -> Element:
        return parse_element(text, self)


def lamp_neighbors(x: LampElement, model: GroupModel) -> set[LampElement]:
    """Cayley neighbours of x; exactly d + 1 of them for S_D."""
    if model.kind == "lamp-sws":
        return model.neighbors(x)
    if model.kind != "lamp":
        raise DomainError("lamp_neighbors needs a lamplighter model")
    d = model.order
    out = {LampElement(x.pos + 1, x.config), LampElement(x.pos - 1, x.config)}
    for i in range(1, d):
        out.add(LampElement(x.pos, config_bump(x.config, x.pos, i, d)))
    return out


def parse_model(text: str) -> GroupModel:
    """Parse ``lamp:d``, ``lamp-sws`` or ``bs:p``."""
    text = text.strip()
    if text == "lamp-sws":
        return GroupModel.sws()
    kind, _, arg = text.partition(":")
    try:
        n = int(arg)
    except ValueError:
        raise DomainError(f"bad model spec {text!r}") from None
    if kind == "lamp":
        return GroupModel.lamplighter(n)
    if kind == "bs":
        return GroupModel.bs(n)
    raise DomainError(f"bad model spec {text!r}")


def format_element(x: Element, model: GroupModel) -> str:
    """``k|offset:word`` for lamplighters (``k|`` if no lamps are on),
    ``n|m/p^e`` for BS(1,p)."""
    if model.is_lamp:
        if not x.config.word:
            return f"{x.pos}|"
        return f"{x.pos}|{x.config.offset}:" + "".join(_DIGITS[s] for s in x.config.word)
    f = x.translation
    return f"{x.level}|{f.mantissa}/{f.base}^{f.exponent}"


def parse_element(text: str, model: GroupModel) -> Element:
    text = text.strip()
    head, sep, tail = text.partition("|")
    if not sep:
        raise DomainError(f"bad element {text!r}")
    try:
        k = int(head)
        if model.is_lamp:
            if not tail:
                return LampElement(k, EMPTY)
            off, colon, word = tail.partition(":")
            if not colon:
                raise DomainError(f"bad element {text!r}")
            syms = [_DIGITS.index(c) for c in word.lower()]
            if any(s >= model.order for s in syms):
                raise DomainError(f"lamp symbol out of range in {text!r}")
            return LampElement(k, normalize_config(int(off), syms))
        num, slash, rest = tail.partition("/")
        base, caret, exp = rest.partition("^")
        if not (slash and caret) or int(base) != model.order:
            raise DomainError(f"bad element {text!r}")
        if int(exp) < 0:
            raise DomainError(f"negative exponent in {text!r}")
        return BSElement(k, padic(int(num), int(exp), model.order))
    except ValueError:
        raise DomainError(f"bad element {text!r}") from None


def element_key(x: Element) -> tuple:
    """Total order used for canonical forms and deterministic output."""
    if isinstance(x, LampElement):
        return (x.pos, x.config.offset, len(x.config.word), x.config.word)
    return (x.level, x.translation.as_fraction())
