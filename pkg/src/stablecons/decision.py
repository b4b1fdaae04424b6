"""Decision procedures and oracles.

* ``stable_bruteforce`` — exhaustive deletion-and-assignment enumeration for
  the boolean problem; the ground-truth oracle.
* ``check_consequence_rho`` — complete consequence check for reduced pairs by
  enumerating the 2^n lifted grid points (exactly the antecedent's models).
* ``find_countermodel`` — bounded-denominator refutation scan for arbitrary
  pairs: sound whenever it answers, inconclusive past its bound.
* ``equivalence_harness`` — randomized agreement check between the boolean
  oracle and the reduced-pair check.
* ``estar`` — binary search for the largest deletion allowance that keeps a
  conclusion entailed.

All enumerations honor a hard budget and raise ``BudgetExceededError`` rather
than truncate, and every emitted witness is deterministic: the first hit in
lexicographic enumeration order.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .formulas import (
    And,
    BoolFormula,
    LukFormula,
    Neg,
    Not,
    Oplus,
    Or,
    Otimes,
    Join,
    Meet,
    Var,
    connective_count,
    variables,
)
from .reduction import (
    FormulaGroup,
    ReductionOutput,
    StableInstance,
    grid_values,
    instance_to_json,
    reduce_instance,
)
from .semantics import ONE, eval_bool, eval_luk, eval_luk_lattice, valuation_to_json

DEFAULT_BUDGET = 5_000_000


class BudgetExceededError(Exception):
    """An enumeration would exceed its budget; no verdict was produced."""

    def __init__(self, what: str, needed: int, budget: int) -> None:
        super().__init__(f"{what} needs {needed} steps, budget is {budget}")
        self.needed = needed
        self.budget = budget


def _check_budget(needed: int, budget: int, what: str) -> None:
    if needed > budget:
        raise BudgetExceededError(what, needed, budget)


# ---------------------------------------------------------------------------
# verdicts

CONSEQUENCE = "consequence"
COUNTERMODEL = "countermodel"
INCONCLUSIVE = "inconclusive_at_bound"


@dataclass(frozen=True)
class ConsequenceVerdict:
    """Outcome of a consequence check.

    ``consequence`` with ``certified`` set means the searched point set
    provably contained every model of the antecedent; ``countermodel``
    carries a witness where the antecedent is 1 and the consequent is < 1;
    ``inconclusive_at_bound`` reports a completed scan without refutation.
    """

    kind: str
    certified: bool = False
    witness: dict[int, Fraction] | None = None
    bound: int | None = None

    @classmethod
    def consequence(cls, certified: bool) -> "ConsequenceVerdict":
        return cls(kind=CONSEQUENCE, certified=certified)

    @classmethod
    def countermodel(cls, witness: dict[int, Fraction]) -> "ConsequenceVerdict":
        return cls(kind=COUNTERMODEL, witness=witness)

    @classmethod
    def inconclusive(cls, bound: int) -> "ConsequenceVerdict":
        return cls(kind=INCONCLUSIVE, bound=bound)

    def to_json(self) -> dict:
        doc: dict = {"kind": self.kind}
        if self.kind == CONSEQUENCE:
            doc["certified"] = self.certified
        elif self.kind == COUNTERMODEL:
            assert self.witness is not None
            doc["witness"] = valuation_to_json(self.witness)
        else:
            doc["bound"] = self.bound
        return doc


@dataclass(frozen=True)
class StableVerdict:
    """Outcome of the boolean brute-force check.

    When unstable, ``deleted`` lists for each group the indices of the
    formulas removed and ``assignment`` satisfies the surviving conjunction.
    """

    stable: bool
    deleted: tuple[tuple[int, ...], ...] | None = None
    assignment: dict[int, int] | None = None

    def to_json(self) -> dict:
        doc: dict = {"stable": self.stable}
        if not self.stable:
            assert self.deleted is not None and self.assignment is not None
            doc["counterexample"] = {
                "deleted": [list(indices) for indices in self.deleted],
                "assignment": {
                    f"X{i}": self.assignment[i] for i in sorted(self.assignment)
                },
            }
        return doc


@dataclass(frozen=True)
class EStarResult:
    """Largest deletion allowance that keeps the conclusion entailed.

    ``e_star`` is None when the conclusion does not even follow with zero
    deletions.  ``checks_performed`` counts stability checks (logarithmic in
    the size of the dubious set).
    """

    e_star: int | None
    checks_performed: int

    def to_json(self) -> dict:
        return {"e_star": self.e_star, "checks_performed": self.checks_performed}


# ---------------------------------------------------------------------------
# boolean brute force


def stable_bruteforce(
    instance: StableInstance, budget: int = DEFAULT_BUDGET
) -> StableVerdict:
    """Decide stability by enumerating every deletion choice and assignment.

    Stable means: for every way of deleting exactly ``delete_count`` formulas
    from each group, the surviving conjunction is boolean-unsatisfiable.  The
    returned counterexample is the first hit in lexicographic order over
    (deletion choices, assignments).
    """
    combos = math.prod(
        math.comb(len(g.formulas), g.delete_count) for g in instance.groups
    )
    _check_budget(combos * 2**instance.n, budget, "stability enumeration")
    choice_spaces = [
        list(itertools.combinations(range(len(g.formulas)), g.delete_count))
        for g in instance.groups
    ]
    for deletion in itertools.product(*choice_spaces):
        survivors = [
            formula
            for group, removed in zip(instance.groups, deletion)
            for j, formula in enumerate(group.formulas)
            if j not in removed
        ]
        for bits in itertools.product((0, 1), repeat=instance.n):
            assignment = dict(enumerate(bits, start=1))
            if all(eval_bool(f, assignment) == 1 for f in survivors):
                return StableVerdict(False, deleted=deletion, assignment=assignment)
    return StableVerdict(True)


# ---------------------------------------------------------------------------
# consequence checks


def check_consequence_rho(
    output: ReductionOutput, budget: int = DEFAULT_BUDGET
) -> ConsequenceVerdict:
    """Complete consequence check for a reduced pair.

    The antecedent's models are exactly the 2^n points with coordinates in
    {1/(e+1), e/(e+1)}, so evaluating the consequent there decides the
    question outright: certified consequence if it is 1 everywhere, otherwise
    the first grid point (lexicographic, low coordinate first) where it
    falls short.
    """
    n = output.stats.n
    _check_budget(2**n, budget, "grid enumeration")
    low, high = grid_values(output.e)
    for bits in itertools.product((0, 1), repeat=n):
        point = {i: high if bit else low for i, bit in enumerate(bits, start=1)}
        if eval_luk(output.phi, point) != ONE:
            if eval_luk(output.theta, point) != ONE:  # grid forcing guarantees this
                raise RuntimeError("grid point is not a model of the antecedent")
            return ConsequenceVerdict.countermodel(point)
    return ConsequenceVerdict.consequence(certified=True)


def denominator_bounded_fractions(max_denominator: int) -> list[Fraction]:
    """All rationals p/q in [0, 1] with q <= max_denominator, ascending."""
    if max_denominator < 1:
        raise ValueError(f"max_denominator must be >= 1, got {max_denominator}")
    return sorted(
        {
            Fraction(p, q)
            for q in range(1, max_denominator + 1)
            for p in range(q + 1)
        }
    )


_SCAN_CHUNK = 1 << 16


def find_countermodel(
    theta: LukFormula,
    phi: LukFormula,
    max_denominator: int,
    budget: int = DEFAULT_BUDGET,
) -> ConsequenceVerdict:
    """Scan all points with coordinate denominators <= max_denominator.

    Returns the lexicographically first countermodel (antecedent exactly 1,
    consequent < 1) or ``inconclusive_at_bound``.  Sound as a refuter always;
    complete only when the bound covers the pair's true vertex denominators.
    """
    var_order = sorted(variables(theta) | variables(phi))
    fractions = denominator_bounded_fractions(max_denominator)
    m = len(var_order)
    per_axis = len(fractions)
    total = per_axis**m
    _check_budget(total, budget, "countermodel scan")
    L = math.lcm(*range(1, max_denominator + 1))
    axis_numerators = np.array(
        [f.numerator * (L // f.denominator) for f in fractions], dtype=np.int64
    )
    for start in range(0, total, _SCAN_CHUNK):
        index = np.arange(start, min(start + _SCAN_CHUNK, total), dtype=np.int64)
        coords = np.empty((len(index), m), dtype=np.int64)
        rest = index
        for column in range(m - 1, -1, -1):  # last variable varies fastest
            coords[:, column] = axis_numerators[rest % per_axis]
            rest = rest // per_axis
        theta_values = eval_luk_lattice(theta, var_order, coords, L)
        phi_values = eval_luk_lattice(phi, var_order, coords, L)
        hits = np.nonzero((theta_values == L) & (phi_values < L))[0]
        if hits.size:
            row = coords[hits[0]]
            witness = {
                index: Fraction(int(row[j]), L) for j, index in enumerate(var_order)
            }
            return ConsequenceVerdict.countermodel(witness)
    return ConsequenceVerdict.inconclusive(max_denominator)


def coefficient_bound(theta: LukFormula, phi: LukFormula) -> int:
    """Total connective count of the pair.

    Bounds the coefficient magnitude of the linear pieces of the two induced
    piecewise-linear functions; a heuristic denominator bound for
    ``find_countermodel``.
    """
    return connective_count(theta) + connective_count(phi)


# ---------------------------------------------------------------------------
# random generation and the equivalence harness


@dataclass(frozen=True)
class HarnessLimits:
    """Size caps for random instances; "size" caps the connective count."""

    max_groups: int = 3
    max_group_size: int = 3
    max_vars: int = 3
    max_connectives: int = 6


def random_bool_formula(
    rng: random.Random, n_vars: int, max_connectives: int
) -> BoolFormula:
    if max_connectives <= 0 or rng.random() < 0.3:
        return Var(rng.randint(1, n_vars))
    kind = rng.choice(("not", "and", "or"))
    if kind == "not":
        return Not(random_bool_formula(rng, n_vars, max_connectives - 1))
    split = rng.randint(0, max_connectives - 1)
    left = random_bool_formula(rng, n_vars, split)
    right = random_bool_formula(rng, n_vars, max_connectives - 1 - split)
    return And(left, right) if kind == "and" else Or(left, right)


def random_luk_formula(
    rng: random.Random, n_vars: int, max_connectives: int
) -> LukFormula:
    if max_connectives <= 0 or rng.random() < 0.3:
        return Var(rng.randint(1, n_vars))
    kind = rng.choice(("neg", "oplus", "otimes", "meet", "join"))
    if kind == "neg":
        return Neg(random_luk_formula(rng, n_vars, max_connectives - 1))
    split = rng.randint(0, max_connectives - 1)
    left = random_luk_formula(rng, n_vars, split)
    right = random_luk_formula(rng, n_vars, max_connectives - 1 - split)
    node = {"oplus": Oplus, "otimes": Otimes, "meet": Meet, "join": Join}[kind]
    return node(left, right)


def random_instance(rng: random.Random, limits: HarnessLimits) -> StableInstance:
    """Random instance within the limits; deterministic given the rng state."""
    n = rng.randint(1, limits.max_vars)
    groups = []
    for _ in range(rng.randint(1, limits.max_groups)):
        wanted = rng.randint(1, limits.max_group_size)
        formulas: list[BoolFormula] = []
        attempts = 0
        while len(formulas) < wanted and attempts < 50:
            attempts += 1
            candidate = random_bool_formula(
                rng, n, rng.randint(0, limits.max_connectives)
            )
            if candidate not in formulas:
                formulas.append(candidate)
        delete = rng.randint(0, len(formulas) - 1)
        groups.append(FormulaGroup(tuple(formulas), delete))
    return StableInstance(n, tuple(groups))


def harness_trials(
    seed: int,
    trials: int,
    limits: HarnessLimits = HarnessLimits(),
    budget: int = DEFAULT_BUDGET,
) -> Iterator[dict]:
    """Generate instances and compare the two decision routes, one record each.

    Each record carries the full instance, both verdicts and their agreement;
    identical seeds yield identical streams.
    """
    rng = random.Random(seed)
    for trial in range(trials):
        instance = random_instance(rng, limits)
        stable = stable_bruteforce(instance, budget).stable
        verdict = check_consequence_rho(reduce_instance(instance), budget)
        entailed = verdict.kind == CONSEQUENCE
        yield {
            "trial": trial,
            "instance": instance_to_json(instance),
            "stable": stable,
            "consequence": entailed,
            "agree": stable == entailed,
        }


@dataclass
class HarnessReport:
    records: list[dict] = field(default_factory=list)

    @property
    def disagreements(self) -> list[dict]:
        return [record for record in self.records if not record["agree"]]


def equivalence_harness(
    seed: int,
    trials: int,
    limits: HarnessLimits = HarnessLimits(),
    budget: int = DEFAULT_BUDGET,
) -> HarnessReport:
    return HarnessReport(records=list(harness_trials(seed, trials, limits, budget)))


# ---------------------------------------------------------------------------
# robustness threshold


def _distinct(formulas: Iterable[BoolFormula]) -> tuple[BoolFormula, ...]:
    seen: list[BoolFormula] = []
    for formula in formulas:
        if formula not in seen:
            seen.append(formula)
    return tuple(seen)


def estar(
    delta: Sequence[BoolFormula],
    nabla: Sequence[BoolFormula],
    omega: BoolFormula,
    budget: int = DEFAULT_BUDGET,
) -> EStarResult:
    """Largest e such that the conclusion survives deleting e dubious formulas.

    For each candidate e the instance (delta + {~omega} with no deletions;
    nabla with e deletions) is reduced and decided on the grid.  Stability is
    downward monotone in e, so binary search over 0..card(nabla)-1 applies;
    None is returned when even e = 0 fails (the conclusion never followed).
    """
    nabla_set = _distinct(nabla)
    if not nabla_set:
        raise ValueError("the dubious formula set must be nonempty")
    core = _distinct(list(delta) + [Not(omega)])
    n = max(
        index
        for formula in core + nabla_set
        for index in variables(formula)
    )
    checks = 0

    def stable_at(e: int) -> bool:
        nonlocal checks
        checks += 1
        instance = StableInstance(
            n, (FormulaGroup(core, 0), FormulaGroup(nabla_set, e))
        )
        verdict = check_consequence_rho(reduce_instance(instance), budget)
        return verdict.kind == CONSEQUENCE

    if not stable_at(0):
        return EStarResult(None, checks)
    low, high = 0, len(nabla_set) - 1
    while low < high:
        mid = (low + high + 1) // 2
        if stable_at(mid):
            low = mid
        else:
            high = mid - 1
    return EStarResult(low, checks)
