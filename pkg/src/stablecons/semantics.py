"""Exact rational semantics for both formula languages.

Every semantic value is a ``fractions.Fraction`` confined to [0, 1] and all
comparisons (in particular "equals 1") are exact; there is no floating point
anywhere.  Valuations are finite maps from variable indices to values over a
declared variable set.

Besides the scalar reference evaluator there is a batch evaluator over the
integer lattice {0, 1/L, ..., L/L}: truncated addition and its dual, min, max
and complement all stay on the lattice, so scaled integer arithmetic is exact
and enumeration-heavy searches can be vectorized.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .formulas import (
    And,
    BoolFormula,
    Join,
    LukFormula,
    Meet,
    Neg,
    Not,
    Oplus,
    Or,
    Otimes,
    Var,
)

ZERO = Fraction(0)
ONE = Fraction(1)

Valuation = Mapping[int, Fraction]
BoolAssignment = Mapping[int, int]


class UnboundVariableError(LookupError):
    """A formula mentions a variable the valuation does not declare."""

    def __init__(self, index: int) -> None:
        super().__init__(f"X{index} is not bound by the valuation")
        self.index = index


def parse_rational01(text: str) -> Fraction:
    """Parse "p/q", "0" or "1" into an exact value in [0, 1]."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc
    if not ZERO <= value <= ONE:
        raise ValueError(f"value {text.strip()!r} lies outside [0, 1]")
    return value


def check_valuation(valuation: Valuation) -> None:
    """Validate a valuation at a trust boundary (CLI, JSON)."""
    for index, value in valuation.items():
        if index < 1:
            raise ValueError(f"variable index must be >= 1, got {index}")
        if not ZERO <= value <= ONE:
            raise ValueError(f"X{index} is assigned {value}, outside [0, 1]")


def valuation_from_json(doc: Mapping[str, str]) -> dict[int, Fraction]:
    """Read {"X1": "2/3", ...} into a valuation."""
    valuation: dict[int, Fraction] = {}
    for name, literal in doc.items():
        if not (name.startswith("X") and name[1:].isdigit() and name[1] != "0"):
            raise ValueError(f"bad variable name {name!r}")
        valuation[int(name[1:])] = parse_rational01(str(literal))
    return valuation


def valuation_to_json(valuation: Valuation) -> dict[str, str]:
    return {f"X{index}": str(valuation[index]) for index in sorted(valuation)}


def eval_luk(formula: LukFormula, valuation: Valuation) -> Fraction:
    """Value of a many-valued formula at a point, as an exact rational.

    The result's denominator divides the lcm of the input denominators.
    """
    match formula:
        case Var(index):
            try:
                return valuation[index]
            except KeyError:
                raise UnboundVariableError(index) from None
        case Neg(child):
            return 1 - eval_luk(child, valuation)
        case Oplus(left, right):
            return min(ONE, eval_luk(left, valuation) + eval_luk(right, valuation))
        case Otimes(left, right):
            return max(ZERO, eval_luk(left, valuation) + eval_luk(right, valuation) - 1)
        case Meet(left, right):
            return min(eval_luk(left, valuation), eval_luk(right, valuation))
        case Join(left, right):
            return max(eval_luk(left, valuation), eval_luk(right, valuation))
    raise TypeError(f"not a many-valued formula: {formula!r}")


def eval_bool(formula: BoolFormula, assignment: BoolAssignment) -> int:
    """Classical 0/1 truth value of a boolean formula."""
    match formula:
        case Var(index):
            try:
                return assignment[index]
            except KeyError:
                raise UnboundVariableError(index) from None
        case Not(child):
            return 1 - eval_bool(child, assignment)
        case And(left, right):
            return eval_bool(left, assignment) & eval_bool(right, assignment)
        case Or(left, right):
            return eval_bool(left, assignment) | eval_bool(right, assignment)
    raise TypeError(f"not a boolean formula: {formula!r}")


def satisfies(valuation: Valuation, formulas: Iterable[LukFormula]) -> bool:
    """True iff every formula evaluates to exactly 1 (vacuously true)."""
    return all(eval_luk(formula, valuation) == ONE for formula in formulas)


def eval_luk_lattice(
    formula: LukFormula,
    var_order: Sequence[int],
    numerators: np.ndarray,
    denominator: int,
) -> np.ndarray:
    """Evaluate one formula at many lattice points at once, exactly.

    ``numerators`` has shape (npoints, len(var_order)); entry [p, j] is the
    coordinate of variable ``var_order[j]`` at point p, scaled by
    ``denominator``.  Returns the (npoints,) array of value numerators over
    the same denominator.  Agrees with ``eval_luk`` pointwise.
    """
    L = int(denominator)
    if L < 1:
        raise ValueError(f"denominator must be >= 1, got {L}")
    if L > 2**31:
        raise ValueError(f"denominator {L} too large for int64 lattice arithmetic")
    arr = np.asarray(numerators, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != len(var_order):
        raise ValueError(
            f"numerators must have shape (npoints, {len(var_order)}), got {arr.shape}"
        )
    if arr.size and (arr.min() < 0 or arr.max() > L):
        raise ValueError("lattice coordinates must lie in [0, denominator]")
    columns = {index: j for j, index in enumerate(var_order)}

    def rec(node: LukFormula) -> np.ndarray:
        match node:
            case Var(index):
                try:
                    return arr[:, columns[index]]
                except KeyError:
                    raise UnboundVariableError(index) from None
            case Neg(child):
                return L - rec(child)
            case Oplus(left, right):
                return np.minimum(L, rec(left) + rec(right))
            case Otimes(left, right):
                return np.maximum(0, rec(left) + rec(right) - L)
            case Meet(left, right):
                return np.minimum(rec(left), rec(right))
            case Join(left, right):
                return np.maximum(rec(left), rec(right))
        raise TypeError(f"not a many-valued formula: {node!r}")

    return rec(formula)
