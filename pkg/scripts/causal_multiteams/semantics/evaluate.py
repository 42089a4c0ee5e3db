"""
Satisfaction for CO, PCO and the extended conditional atoms.

CO formulas are flat, so the production path checks them row by row. The
split search implements the disjoint-union tensor clause literally and the
causal-team evaluator implements the lax (overlapping) tensor on supports;
both exist to cross-check the row-wise path.
"""

import itertools
import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, Optional, Tuple

from causal_multiteams.core.laws import FunctionComponent, apply_intervention, normalize_intervention
from causal_multiteams.core.model import CausalMultiteam, Multiteam, from_counts, intervene, observe
from causal_multiteams.core.signature import Assignment, Signature
from causal_multiteams.errors import BindingError, SplitBoundExceededError, TwoLevelError
from causal_multiteams.semantics.rows import row_satisfies
from causal_multiteams.syntax.ast import (
    And,
    CompAtom,
    Constant,
    Counterfactual,
    EvalAtom,
    Formula,
    GOr,
    Implies,
    Lit,
    MacroAtom,
    Or,
    Prob,
    at_least,
    compare,
    is_co,
)
from causal_multiteams.utils.config import get_settings

logger = logging.getLogger(__name__)

ROWWISE = "rowwise"
SPLIT_SEARCH = "split_search"


@dataclass(frozen=True)
class EvalConfig:
    co_strategy: str = ROWWISE
    split_bound: int = 12
    conditional_rhs: str = "delta"
    trace: bool = False

    def __post_init__(self):
        if self.co_strategy not in (ROWWISE, SPLIT_SEARCH):
            raise ValueError(f"unknown CO strategy {self.co_strategy!r}")
        if self.conditional_rhs not in ("delta", "gamma"):
            raise ValueError(f"unknown conditional reading {self.conditional_rhs!r}")

    @classmethod
    def from_settings(cls, **overrides) -> "EvalConfig":
        settings = get_settings()
        base = cls(split_bound=settings.split_bound, conditional_rhs=settings.conditional_rhs)
        return replace(base, **overrides)


def _config(cfg: Optional[EvalConfig]) -> EvalConfig:
    return cfg if cfg is not None else EvalConfig.from_settings()


# --- CO, disjoint tensor ---------------------------------------------------

def _splits(t: CausalMultiteam) -> Iterator[Tuple[CausalMultiteam, CausalMultiteam]]:
    items = list(t.multiteam.items())
    for taken in itertools.product(*(range(count + 1) for _, count in items)):
        left = {row: k for (row, _), k in zip(items, taken)}
        right = {row: count - k for (row, count), k in zip(items, taken)}
        yield (CausalMultiteam(t.signature, Multiteam(left), t.laws),
               CausalMultiteam(t.signature, Multiteam(right), t.laws))


def _split_search(t: CausalMultiteam, alpha: Formula) -> bool:
    if t.is_empty:
        return True
    if isinstance(alpha, Lit):
        return all(row_satisfies(t.signature, t.laws, row, alpha) for row in t.multiteam.support)
    if isinstance(alpha, And):
        return _split_search(t, alpha.left) and _split_search(t, alpha.right)
    if isinstance(alpha, Or):
        return any(_split_search(left, alpha.left) and _split_search(right, alpha.right)
                   for left, right in _splits(t))
    if isinstance(alpha, Implies):
        return _split_search(observe(t, alpha.antecedent), alpha.consequent)
    if isinstance(alpha, Counterfactual):
        if not alpha.is_consistent:
            return True
        return _split_search(intervene(t, alpha.assignment), alpha.body)
    raise TwoLevelError(f"{type(alpha).__name__} is not a CO formula")


def eval_co(t: CausalMultiteam, alpha: Formula, cfg: Optional[EvalConfig] = None) -> bool:
    """T |= alpha for a CO formula."""
    cfg = _config(cfg)
    if cfg.co_strategy == SPLIT_SEARCH:
        if t.size > cfg.split_bound:
            raise SplitBoundExceededError(
                f"split search on {t.size} rows exceeds the bound {cfg.split_bound}"
            )
        return _split_search(t, alpha)
    return all(row_satisfies(t.signature, t.laws, row, alpha) for row in t.multiteam.support)


# --- CO, causal teams with lax tensor ----------------------------------------

def _subsets(team: FrozenSet[Assignment]) -> Iterator[FrozenSet[Assignment]]:
    rows = sorted(team, key=repr)
    for r in range(len(rows) + 1):
        for combo in itertools.combinations(rows, r):
            yield frozenset(combo)


def _team_satisfies(sig: Signature, laws: FunctionComponent, team: FrozenSet[Assignment],
                    alpha: Formula) -> bool:
    if not team:
        return True
    if isinstance(alpha, Lit):
        return all(row_satisfies(sig, laws, row, alpha) for row in team)
    if isinstance(alpha, And):
        return (_team_satisfies(sig, laws, team, alpha.left)
                and _team_satisfies(sig, laws, team, alpha.right))
    if isinstance(alpha, Or):
        for left in _subsets(team):
            rest = team - left
            for extra in _subsets(left):
                if (_team_satisfies(sig, laws, left, alpha.left)
                        and _team_satisfies(sig, laws, rest | extra, alpha.right)):
                    return True
        return False
    if isinstance(alpha, Implies):
        kept = frozenset(row for row in team if row_satisfies(sig, laws, row, alpha.antecedent))
        return _team_satisfies(sig, laws, kept, alpha.consequent)
    if isinstance(alpha, Counterfactual):
        fixed = normalize_intervention(sig, alpha.assignment)
        if fixed is None:
            return True
        image = frozenset(apply_intervention(sig, laws, row, fixed) for row in team)
        return _team_satisfies(sig, laws.without(fixed), image, alpha.body)
    raise TwoLevelError(f"{type(alpha).__name__} is not a CO formula")


def eval_ct(t: CausalMultiteam, alpha: Formula, cfg: Optional[EvalConfig] = None) -> bool:
    """Team(T) |=ct alpha: set semantics on the support, tensor subteams may overlap."""
    cfg = _config(cfg)
    team = t.multiteam.support
    if len(team) > cfg.split_bound:
        raise SplitBoundExceededError(
            f"causal-team evaluation on {len(team)} rows exceeds the bound {cfg.split_bound}"
        )
    return _team_satisfies(t.signature, t.laws, team, alpha)


# --- PCO ---------------------------------------------------------------------

class _Evaluator:
    """One call tree; observe/intervene results are cached only for its lifetime."""

    def __init__(self, cfg: EvalConfig):
        self.cfg = cfg
        self._observed: Dict[Tuple[CausalMultiteam, Formula], CausalMultiteam] = {}
        self._intervened: Dict[Tuple[CausalMultiteam, tuple], CausalMultiteam] = {}

    def observe(self, t: CausalMultiteam, alpha: Formula) -> CausalMultiteam:
        key = (t, alpha)
        if key not in self._observed:
            self._observed[key] = observe(t, alpha)
        return self._observed[key]

    def intervene(self, t: CausalMultiteam, assignment: tuple) -> CausalMultiteam:
        key = (t, assignment)
        if key not in self._intervened:
            self._intervened[key] = intervene(t, assignment)
        return self._intervened[key]

    def probability(self, t: CausalMultiteam, alpha: Formula) -> Fraction:
        return Fraction(self.observe(t, alpha).size, t.size)

    def conditioned(self, t: CausalMultiteam, term: Prob) -> CausalMultiteam:
        return t if term.given is None else self.observe(t, term.given)

    def run(self, t: CausalMultiteam, phi: Formula) -> bool:
        verdict = self._run(t, phi)
        if self.cfg.trace:
            logger.debug("[EVAL] %s on %d rows -> %s", type(phi).__name__, t.size, verdict)
        return verdict

    def _run(self, t: CausalMultiteam, phi: Formula) -> bool:
        if isinstance(phi, (MacroAtom, Constant)):
            raise BindingError("formula is not bound to a signature")
        if is_co(phi):
            return eval_co(t, phi, self.cfg)
        if isinstance(phi, And):
            return self.run(t, phi.left) and self.run(t, phi.right)
        if isinstance(phi, GOr):
            return self.run(t, phi.left) or self.run(t, phi.right)
        if isinstance(phi, Implies):
            return self.run(self.observe(t, phi.antecedent), phi.consequent)
        if isinstance(phi, Counterfactual):
            if not phi.is_consistent:
                return True
            return self.run(self.intervene(t, phi.assignment), phi.body)
        if isinstance(phi, EvalAtom):
            scope = self.conditioned(t, phi.term)
            if scope.is_empty:
                return True
            return compare(self.probability(scope, phi.term.arg), phi.op, phi.bound)
        if isinstance(phi, CompAtom):
            return self._comparison(t, phi)
        raise TwoLevelError(f"{type(phi).__name__} cannot appear at the PCO level")

    def _comparison(self, t: CausalMultiteam, phi: CompAtom) -> bool:
        left_scope = self.conditioned(t, phi.left)
        if phi.is_mixed and self.cfg.conditional_rhs == "gamma":
            # both sides read under T^gamma; the right condition plays no part
            right_scope = left_scope
        else:
            right_scope = self.conditioned(t, phi.right)
        if left_scope.is_empty or right_scope.is_empty:
            return True
        return compare(self.probability(left_scope, phi.left.arg), phi.op,
                       self.probability(right_scope, phi.right.arg))


def eval_pco(t: CausalMultiteam, phi: Formula, cfg: Optional[EvalConfig] = None) -> bool:
    """T |= phi for PCO formulas and extended conditional atoms."""
    return _Evaluator(_config(cfg)).run(t, phi)


def satisfies(t: CausalMultiteam, f: Formula, cfg: Optional[EvalConfig] = None) -> bool:
    if is_co(f):
        return eval_co(t, f, cfg)
    return eval_pco(t, f, cfg)


@dataclass(frozen=True)
class NonFlatnessWitness:
    formula: Formula
    model: CausalMultiteam
    refuting_row: Assignment

    @property
    def singleton(self) -> CausalMultiteam:
        return CausalMultiteam(self.model.signature, Multiteam({self.refuting_row: 1}), self.model.laws)


def non_flatness_witness() -> NonFlatnessWitness:
    """A PCO formula true on a model but false on one of its rows."""
    sig = Signature.from_mapping(["X"], {"X": [0, 1]})
    model = from_counts(sig, {(0,): 1, (1,): 1})
    return NonFlatnessWitness(at_least(Lit("X", 1), Fraction(1, 2)), model, (0,))
