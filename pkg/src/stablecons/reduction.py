"""Transforms from boolean deletion-tolerant instances to many-valued pairs.

The pipeline: negation normal form, the literal-wise many-valued translation
(``ddagger``), lifted 0/1 points sitting at distance 1/(e+1) inside [0, 1],
the grid-forcing antecedent whose models are exactly those lifted points, and
the full reduction producing an antecedent/consequent pair together with size
statistics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce as fold
from typing import Any, Mapping

from .formulas import (
    And,
    BoolFormula,
    FormulaSyntaxError,
    Join,
    LukFormula,
    Meet,
    Neg,
    Not,
    Oplus,
    Or,
    Otimes,
    Var,
    bool_to_text,
    iff,
    implies,
    measure,
    multiple,
    parse_bool,
    power,
    variables,
)


class InstanceError(ValueError):
    """An instance violates a structural invariant."""


# ---------------------------------------------------------------------------
# formula transforms


def nnf(formula: BoolFormula) -> BoolFormula:
    """Negation normal form: push negation onto variables, drop double ones.

    Equivalent over 0/1 and preserves the multiset of variable occurrences.
    """
    match formula:
        case Var():
            return formula
        case Not(Var()):
            return formula
        case Not(Not(inner)):
            return nnf(inner)
        case Not(And(left, right)):
            return Or(nnf(Not(left)), nnf(Not(right)))
        case Not(Or(left, right)):
            return And(nnf(Not(left)), nnf(Not(right)))
        case And(left, right):
            return And(nnf(left), nnf(right))
        case Or(left, right):
            return Or(nnf(left), nnf(right))
    raise TypeError(f"not a boolean formula: {formula!r}")


def ddagger(formula: BoolFormula) -> LukFormula:
    """Literal-wise many-valued translation of a boolean formula.

    After normalizing to NNF, a positive literal X becomes ``~X \\/ (X (+) X)``
    and a negated literal ~X becomes ``X \\/ ~(X (*) X)``; conjunction and
    disjunction map to ``Meet`` and ``Join``.  At a point lifted with
    parameter e the value is exactly 1 when the boolean formula is satisfied
    and exactly e/(e+1) otherwise.
    """

    def tr(node: BoolFormula) -> LukFormula:
        match node:
            case Var(i):
                return Join(Neg(Var(i)), Oplus(Var(i), Var(i)))
            case Not(Var(i)):
                return Join(Var(i), Neg(Otimes(Var(i), Var(i))))
            case And(left, right):
                return Meet(tr(left), tr(right))
            case Or(left, right):
                return Join(tr(left), tr(right))
        raise TypeError(f"not in negation normal form: {node!r}")

    return tr(nnf(formula))


def grid_values(e: int) -> tuple[Fraction, Fraction]:
    """The two coordinates 1/(e+1) and e/(e+1) of the lifted grid."""
    if e < 2:
        raise ValueError(f"grid parameter must be >= 2, got {e}")
    return Fraction(1, e + 1), Fraction(e, e + 1)


def lift_point(assignment: Mapping[int, int], e: int) -> dict[int, Fraction]:
    """Move a 0/1 assignment to the interior point at distance 1/(e+1).

    Coordinate i becomes 1/(e+1) when the bit is 0 and e/(e+1) when it is 1.
    Requires e >= 2 so the two images stay in order.
    """
    low, high = grid_values(e)
    lifted: dict[int, Fraction] = {}
    for index, bit in assignment.items():
        if bit not in (0, 1):
            raise ValueError(f"X{index} must be assigned 0 or 1, got {bit!r}")
        lifted[index] = high if bit else low
    return lifted


def constraint_formula(n: int, e: int) -> LukFormula:
    """Antecedent whose models assign every X_t a value in {1/(e+1), e/(e+1)}.

    The conjunction over t = 1..n of
    ``(X_t^e <-> ~X_t) \\/ (X_t <-> ~(e.X_t))``: the left disjunct holds
    exactly at e/(e+1), the right one exactly at 1/(e+1).
    """
    if n < 1:
        raise ValueError(f"variable count must be >= 1, got {n}")
    if e < 2:
        raise ValueError(f"grid parameter must be >= 2, got {e}")

    def unit(t: int) -> LukFormula:
        x = Var(t)
        return Join(iff(power(x, e), Neg(x)), iff(x, Neg(multiple(e, x))))

    return fold(Meet, (unit(t) for t in range(1, n + 1)))


# ---------------------------------------------------------------------------
# instances


@dataclass(frozen=True, slots=True)
class FormulaGroup:
    """A set of distinct boolean formulas with a deletion allowance."""

    formulas: tuple[BoolFormula, ...]
    delete_count: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "formulas", tuple(self.formulas))
        if not self.formulas:
            raise InstanceError("a group must contain at least one formula")
        if len(set(self.formulas)) != len(self.formulas):
            raise InstanceError("group formulas must be structurally distinct")
        if not 0 <= self.delete_count < len(self.formulas):
            raise InstanceError(
                f"delete count must satisfy 0 <= d < {len(self.formulas)},"
                f" got {self.delete_count}"
            )


@dataclass(frozen=True, slots=True)
class StableInstance:
    """Groups of boolean formulas over X_1..X_n with per-group deletions."""

    n: int
    groups: tuple[FormulaGroup, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "groups", tuple(self.groups))
        if self.n < 1:
            raise InstanceError(f"variable count must be >= 1, got {self.n}")
        if not self.groups:
            raise InstanceError("an instance needs at least one group")
        for group in self.groups:
            for formula in group.formulas:
                high = max(variables(formula))
                if high > self.n:
                    raise InstanceError(
                        f"formula uses X{high} but the instance declares n={self.n}"
                    )


def instance_from_json(doc: Any) -> StableInstance:
    """Read {"n": int, "groups": [{"formulas": [...], "delete": int}, ...]}."""
    if not isinstance(doc, dict):
        raise InstanceError("instance document must be a JSON object")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise InstanceError('"n" must be an integer')
    raw_groups = doc.get("groups")
    if not isinstance(raw_groups, list) or not raw_groups:
        raise InstanceError('"groups" must be a nonempty list')
    groups = []
    for gi, raw in enumerate(raw_groups):
        if not isinstance(raw, dict):
            raise InstanceError(f"groups[{gi}] must be an object")
        texts = raw.get("formulas")
        if not isinstance(texts, list) or not texts:
            raise InstanceError(f'groups[{gi}].formulas must be a nonempty list')
        formulas = []
        for fi, text in enumerate(texts):
            if not isinstance(text, str):
                raise InstanceError(f"groups[{gi}].formulas[{fi}] must be a string")
            try:
                formulas.append(parse_bool(text))
            except FormulaSyntaxError as exc:
                raise InstanceError(f"groups[{gi}].formulas[{fi}]: {exc}") from exc
        delete = raw.get("delete")
        if not isinstance(delete, int) or isinstance(delete, bool):
            raise InstanceError(f"groups[{gi}].delete must be an integer")
        groups.append(FormulaGroup(tuple(formulas), delete))
    return StableInstance(n, tuple(groups))


def instance_to_json(instance: StableInstance) -> dict[str, Any]:
    return {
        "n": instance.n,
        "groups": [
            {
                "formulas": [bool_to_text(f) for f in group.formulas],
                "delete": group.delete_count,
            }
            for group in instance.groups
        ],
    }


def instance_length(instance: StableInstance) -> int:
    """Symbol count of an instance in the unary-index alphabet.

    Sums the canonical symbol counts of all formulas plus each deletion count
    written in unary (d+1 symbols, so a zero still occupies one symbol).
    """
    total = sum(
        measure(formula).paper_symbol_count
        for group in instance.groups
        for formula in group.formulas
    )
    total += sum(group.delete_count + 1 for group in instance.groups)
    return total


# ---------------------------------------------------------------------------
# the reduction


@dataclass(frozen=True, slots=True)
class ReductionStats:
    instance_length: int
    output_length: int
    n: int
    ratio: Fraction  # output_length / (n * instance_length)


@dataclass(frozen=True)
class ReductionOutput:
    """Antecedent/consequent pair produced from one instance."""

    theta: LukFormula
    phi: LukFormula
    e: int
    var_map: dict[int, int]  # original index -> normalized index
    stats: ReductionStats


def _rename(formula: BoolFormula, mapping: Mapping[int, int]) -> BoolFormula:
    match formula:
        case Var(index):
            return Var(mapping[index])
        case Not(child):
            return Not(_rename(child, mapping))
        case And(left, right):
            return And(_rename(left, mapping), _rename(right, mapping))
        case Or(left, right):
            return Or(_rename(left, mapping), _rename(right, mapping))
    raise TypeError(f"not a boolean formula: {formula!r}")


def normalize_variables(instance: StableInstance) -> tuple[StableInstance, dict[int, int]]:
    """Renumber the variables that actually occur to a gapless 1..m.

    The consequent formula references X_1 and the grid antecedent covers all
    of 1..n, so instances whose used variables are not exactly {1, ..., n}
    are renumbered contiguously.  Returns the (possibly unchanged) instance
    and the original-to-normalized index map over the used variables.
    """
    used = sorted(
        {
            index
            for group in instance.groups
            for formula in group.formulas
            for index in variables(formula)
        }
    )
    mapping = {old: new for new, old in enumerate(used, start=1)}
    if used == list(range(1, instance.n + 1)):
        return instance, mapping
    groups = tuple(
        FormulaGroup(
            tuple(_rename(f, mapping) for f in group.formulas), group.delete_count
        )
        for group in instance.groups
    )
    return StableInstance(len(used), groups), mapping


def consequent(instance: StableInstance, e: int) -> LukFormula:
    """Join, over the groups, of "the translated block implies the (d+1)-th
    strong power of X1 \\/ ~X1".

    At a lifted grid point each group implication equals 1 exactly when more
    than ``delete_count`` of the group's formulas are falsified there, so the
    join falls below 1 exactly at (the lift of) an assignment that keeps
    every group within its deletion allowance simultaneously, i.e. at a
    witness against stability.  Combining with the idempotent conjunction
    instead would additionally reject instances whose groups are only
    jointly, not individually, over-determined.
    """
    target_base = Join(Var(1), Neg(Var(1)))

    def group_formula(group: FormulaGroup) -> LukFormula:
        block = fold(Otimes, (ddagger(f) for f in group.formulas))
        return implies(block, power(target_base, group.delete_count + 1))

    return fold(Join, (group_formula(g) for g in instance.groups))


def reduce_instance(instance: StableInstance) -> ReductionOutput:
    """The full reduction: grid antecedent, consequent, and size accounting.

    The instance is variable-normalized first; lengths and the ratio
    output/(n * instance) are measured on the normalized instance in the
    unary-index alphabet.
    """
    normalized, var_map = normalize_variables(instance)
    e = max(2, max(group.delete_count for group in normalized.groups))
    theta = constraint_formula(normalized.n, e)
    phi = consequent(normalized, e)
    inst_len = instance_length(normalized)
    out_len = measure(theta).paper_symbol_count + measure(phi).paper_symbol_count
    stats = ReductionStats(
        instance_length=inst_len,
        output_length=out_len,
        n=normalized.n,
        ratio=Fraction(out_len, normalized.n * inst_len),
    )
    return ReductionOutput(theta=theta, phi=phi, e=e, var_map=var_map, stats=stats)
