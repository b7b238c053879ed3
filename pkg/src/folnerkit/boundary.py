"""Vertex and edge boundaries of finite sets in a Cayley graph."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .groups import DomainError, Element, GroupModel, element_key


@dataclass(frozen=True)
class FiniteSubset:
    elements: frozenset
    model: GroupModel

    @classmethod
    def of(cls, model: GroupModel, elements: Iterable[Element], allow_empty: bool = False) -> "FiniteSubset":
        elems = frozenset(elements)
        if not elems and not allow_empty:
            raise DomainError("empty set")
        for x in elems:
            if not model.contains(x):
                raise DomainError(f"{x!r} is not an element of {model}")
        return cls(elems, model)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements

    def sorted(self) -> list:
        return sorted(self.elements, key=element_key)

    def union(self, other: Iterable[Element]) -> "FiniteSubset":
        return FiniteSubset(self.elements | frozenset(other), self.model)

    def serialize(self) -> list[str]:
        return [self.model.format(x) for x in self.sorted()]


@dataclass(frozen=True)
class BoundaryReport:
    model: str
    size: int
    inner_size: int
    outer_size: int
    edge_size: int

    @property
    def inner_ratio(self) -> Fraction:
        return Fraction(self.inner_size, self.size)

    @property
    def outer_ratio(self) -> Fraction:
        return Fraction(self.outer_size, self.size)

    @property
    def edge_ratio(self) -> Fraction:
        return Fraction(self.edge_size, self.size)

    def as_dict(self) -> dict:
        return {
            "model": self.model,
            "size": self.size,
            "inner": self.inner_size,
            "outer": self.outer_size,
            "edge": self.edge_size,
            "inner_ratio": frac_str(self.inner_ratio),
            "outer_ratio": frac_str(self.outer_ratio),
            "edge_ratio": frac_str(self.edge_ratio),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    CSV_FIELDS = ("model", "size", "inner", "outer", "edge", "inner_ratio", "outer_ratio", "edge_ratio")

    def to_csv_row(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow([self.as_dict()[k] for k in self.CSV_FIELDS])
        return buf.getvalue()


def frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def inner_boundary(F: FiniteSubset) -> set:
    nb = F.model.neighbors
    return {g for g in F.elements if any(h not in F.elements for h in nb(g))}


def outer_boundary(F: FiniteSubset) -> set:
    nb = F.model.neighbors
    out = set()
    for g in F.elements:
        out.update(h for h in nb(g) if h not in F.elements)
    return out


def boundaries(F: FiniteSubset) -> BoundaryReport:
    """All three boundary sizes from one neighbour sweep over F."""
    if not F.elements:
        raise DomainError("boundary of the empty set")
    members = F.elements
    nb = F.model.neighbors
    inner = edge = 0
    outer = set()
    for g in members:
        outside = [h for h in nb(g) if h not in members]
        if outside:
            inner += 1
            edge += len(outside)
            outer.update(outside)
    return BoundaryReport(F.model.spec, len(members), inner, len(outer), edge)


def folner_test(F: FiniteSubset, n: int) -> bool:
    """True iff |inner boundary| / |F| <= 1/n, compared exactly."""
    if n < 1:
        raise DomainError("n must be >= 1")
    rep = boundaries(F)
    return rep.inner_size * n <= rep.size


def translate(F: FiniteSubset, k: int) -> FiniteSubset:
    """Left translate by t^k (lamplighter) or (k, 0) (BS)."""
    return FiniteSubset(frozenset(F.model.translate(x, k) for x in F.elements), F.model)


def left_translate(F: FiniteSubset, g: Element) -> FiniteSubset:
    mul = F.model.mul
    return FiniteSubset(frozenset(mul(g, x) for x in F.elements), F.model)


def closure(F: FiniteSubset) -> FiniteSubset:
    """F together with its outer boundary."""
    return F.union(outer_boundary(F))


def ball(model: GroupModel, radius: int, center: Element | None = None) -> FiniteSubset:
    center = model.identity if center is None else center
    seen = {center}
    frontier = [center]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for y in model.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return FiniteSubset(frozenset(seen), model)


def boundaries_via_ball(F: FiniteSubset) -> BoundaryReport:
    """Reference computation: materialise the radius-1 neighbourhood of F and
    read the three boundaries off the induced graph on it."""
    if not F.elements:
        raise DomainError("boundary of the empty set")
    model = F.model
    region = set(F.elements)
    for g in F.elements:
        region |= ball(model, 1, g).elements
    adj = {x: model.neighbors(x) & region for x in region}
    inner = sum(1 for g in F.elements if len(model.neighbors(g)) != len(adj[g] & F.elements))
    outer = sum(1 for h in region - F.elements if adj[h] & F.elements)
    edges = {frozenset((g, h)) for g in F.elements for h in adj[g] if h not in F.elements}
    return BoundaryReport(model.spec, len(F), inner, outer, len(edges))
