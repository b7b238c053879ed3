"""Standard Følner sets, the exact Følner function of Z wr D, its generating
series, and the BS(1,p) standard-set formulas (including the p in [36, 60]
counterexample)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .boundary import FiniteSubset, boundaries, folner_test, frac_str
from .groups import (
    BSElement,
    DomainError,
    GroupModel,
    LampElement,
    PadicRational,
    normalize_config,
)

DEFAULT_ELEMENT_BUDGET = 10**7


class BudgetExceeded(DomainError):
    pass


class OutOfFormulaRange(DomainError):
    """Fol(n) for n < d is not given by the closed formula."""


class FormulaViolation(AssertionError):
    pass


def _guard(count: int, budget: int) -> None:
    if count > budget:
        raise BudgetExceeded(f"{count} elements exceeds budget {budget}")


def lamp_box(d: int, cursor: range, lamp_lo: int, lamp_hi: int, model: GroupModel | None = None) -> FiniteSubset:
    """{(k, f) : k in cursor, supp f within [lamp_lo, lamp_hi]}."""
    model = model or GroupModel.lamplighter(d)
    width = lamp_hi - lamp_lo + 1
    configs = [normalize_config(lamp_lo, w) for w in itertools.product(range(d), repeat=width)]
    return FiniteSubset(frozenset(LampElement(k, f) for k in cursor for f in configs), model)


def standard_set_lamp(d: int, n: int, budget: int = DEFAULT_ELEMENT_BUDGET) -> FiniteSubset:
    """F_n: cursor in [1, n], lamps supported in [1, n]; n d^n elements."""
    if d < 2 or n < 1:
        raise DomainError("need d >= 2 and n >= 1")
    _guard(n * d**n, budget)
    return lamp_box(d, range(1, n + 1), 1, n)


def standard_closure_lamp(d: int, n: int, budget: int = DEFAULT_ELEMENT_BUDGET) -> FiniteSubset:
    """F_n together with its outer boundary: cursor in [0, n + 1]."""
    if d < 2 or n < 1:
        raise DomainError("need d >= 2 and n >= 1")
    _guard((n + 2) * d**n, budget)
    return lamp_box(d, range(0, n + 2), 1, n)


def fol_value(d: int, n: int) -> int:
    """Fol(n) = 2n d^(2(n-1)) on Z wr D with S_D, valid for n >= d."""
    if d < 2:
        raise DomainError("d must be >= 2")
    if n < d:
        raise OutOfFormulaRange(f"closed form needs n >= d (got n={n}, d={d}); use the search oracle")
    return 2 * n * d ** (2 * (n - 1))


def fol_witness(d: int, n: int, budget: int = DEFAULT_ELEMENT_BUDGET) -> dict:
    """Check the closure of F_(2n-2) against fol_value(d, n)."""
    W = standard_closure_lamp(d, 2 * n - 2, budget)
    rep = boundaries(W)
    value = fol_value(d, n)
    return {
        "d": d,
        "n": n,
        "value": value,
        "witness_size": len(W),
        "inner_ratio": frac_str(rep.inner_ratio),
        "size_ok": len(W) == value,
        "ratio_ok": rep.inner_ratio == Fraction(1, n),
        "passes_folner_test": folner_test(W, n),
    }


# -- generating series ---------------------------------------------------------


@dataclass
class SeriesResidual:
    d: int
    coefficients: list = field(default_factory=list)  # of P_D, lowest degree first
    series: list = field(default_factory=list)  # Fol(1), ..., Fol(N)
    rational_part: list = field(default_factory=list)  # x^n coefficients of 2x/(1-d^2x)^2 - x

    @property
    def degree(self) -> int:
        """Degree of P_D (-1 for the zero polynomial)."""
        nz = [i for i, c in enumerate(self.coefficients) if c]
        return nz[-1] if nz else -1


def _rational_part(d: int, N: int) -> list[int]:
    """Coefficients of 2x/(1 - d^2 x)^2 - x for x^1..x^N by squaring the
    geometric series term by term."""
    q = d * d
    geo = [q**i for i in range(N)]
    square = [sum(geo[i] * geo[k - i] for i in range(k + 1)) for k in range(N)]
    coeffs = [2 * square[n - 1] for n in range(1, N + 1)]
    coeffs[0] -= 1
    return coeffs


def fol_series_check(d: int, N: int, small_values: list[int] | None = None) -> SeriesResidual:
    """Compare sum Fol(n) x^n with 2x/(1-d^2x)^2 - x + x^2 P_D(x) up to x^N.

    ``small_values`` are Fol(2), ..., Fol(d-1) (Fol(1) = 1 always); they come
    from the search oracle, since the closed form does not cover n < d.
    """
    small_values = list(small_values or [])
    if N < d:
        raise DomainError("N must be >= d")
    if len(small_values) != max(0, d - 2):
        raise DomainError(f"expected {max(0, d - 2)} small values (Fol(2..{d - 1}))")
    fol = [1] + small_values + [fol_value(d, n) for n in range(d, N + 1)]
    rat = _rational_part(d, N)
    residual = [fol[n - 1] - rat[n - 1] for n in range(1, N + 1)]
    if residual[0] != 0:
        raise FormulaViolation("x^1 coefficient does not match Fol(1) = 1")
    bad = [n for n in range(d, N + 1) if residual[n - 1] != 0]
    if bad:
        raise FormulaViolation(f"nonzero residual at n = {bad}")
    P = residual[1 : d - 1]
    res = SeriesResidual(d, P, fol, rat)
    if res.degree > d - 3:
        raise FormulaViolation("deg P_D exceeds d - 3")
    return res


# -- BS(1,p) ---------------------------------------------------------------------


def standard_set_bs(p: int, n: int, budget: int = DEFAULT_ELEMENT_BUDGET) -> FiniteSubset:
    """F_n = {(k, f) : 0 <= k < n, f integer, 0 <= f < p^n}."""
    if p < 2 or n < 1:
        raise DomainError("need p >= 2 and n >= 1")
    _guard(n * p**n, budget)
    return FiniteSubset(
        frozenset(BSElement(k, PadicRational(f, 0, p)) for k in range(n) for f in range(p**n)),
        GroupModel.bs(p),
    )


def bs_edge_split(F: FiniteSubset) -> tuple[int, int]:
    """(|a-labelled boundary edges|, |b-labelled boundary edges|)."""
    from .groups import padic_add, padic_neg, padic_power

    p = F.model.order
    members = F.elements
    na = nb = 0
    for x in members:
        f = x.translation
        na += (BSElement(x.level - 1, f) not in members) + (BSElement(x.level + 1, f) not in members)
        step = padic_power(p, x.level)
        nb += (BSElement(x.level, padic_add(f, step)) not in members) + (
            BSElement(x.level, padic_add(f, padic_neg(step))) not in members
        )
    return na, nb


def bs_standard_edge_ratio(p: int, n: int) -> Fraction:
    """(2/n)(p - p^-n)/(p - 1)."""
    return Fraction(2, n) * (p - Fraction(1, p**n)) / (p - 1)


def bs_counterexample_set(p: int) -> FiniteSubset:
    """Levels 0..3, translations whose four base-p digits are all < p/3."""
    digits = range(p // 3)
    vals = [a + b * p + c * p * p + e * p**3 for a in digits for b in digits for c in digits for e in digits]
    return FiniteSubset(
        frozenset(BSElement(k, PadicRational(f, 0, p)) for k in range(4) for f in vals), GroupModel.bs(p)
    )


def bs_counterexample(p: int, enumerate_sets: bool = False) -> dict:
    """Closed-form sizes and ratios for the BS(1,p) counterexample at n = 3.

    With ``enumerate_sets`` the counts are also recomputed from explicit sets
    and any disagreement raises FormulaViolation.
    """
    if p % 3 or not 36 <= p <= 60:
        raise DomainError("need p divisible by 3 with 36 <= p <= 60")
    q = p // 3
    size = 4 * q**4
    da, db = 2 * q**4, 8 * q**3
    std_size = 3 * p**3
    std_a, std_b = 2 * p**3, 2 * (p**3 - 1) // (p - 1)
    ratio = Fraction(da + db, size)
    std_ratio = Fraction(std_a + std_b, std_size)
    rep = {
        "p": p,
        "size": size,
        "edge_a": da,
        "edge_b": db,
        "standard_size": std_size,
        "standard_edge_a": std_a,
        "standard_edge_b": std_b,
        "ratio": frac_str(ratio),
        "standard_ratio": frac_str(std_ratio),
        "ratio_decimal": float(ratio),
        "standard_ratio_decimal": float(std_ratio),
        "size_le_standard": size <= std_size,
        "ratio_formula_ok": ratio == Fraction(1, 2) + Fraction(6, p),
        "standard_formula_ok": std_ratio == Fraction(2, 3) * (p - Fraction(1, p**3)) / (p - 1),
        "strict": ratio < std_ratio,
        "standard_ratio_le_one": std_ratio <= 1,
        "enumerated": False,
    }
    if enumerate_sets:
        F = bs_counterexample_set(p)
        F3 = standard_set_bs(p, 3)
        got = (len(F), *bs_edge_split(F), len(F3), *bs_edge_split(F3))
        want = (size, da, db, std_size, std_a, std_b)
        if got != want:
            raise FormulaViolation(f"enumeration {got} != formulas {want}")
        rep["enumerated"] = True
    return rep
