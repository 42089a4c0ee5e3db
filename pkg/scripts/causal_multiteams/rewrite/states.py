"""State formulas: the CO formula W = s(W) pinning down a single assignment."""

from typing import Iterable, List

from causal_multiteams.core.laws import FunctionComponent
from causal_multiteams.core.signature import Assignment, Signature
from causal_multiteams.semantics.rows import row_satisfies
from causal_multiteams.syntax.ast import Formula, Lit, bottom, conj, disj


def state_formula(sig: Signature, s: Assignment) -> Formula:
    return conj([Lit(var, value) for var, value in zip(sig.variables, s)])


def state_disjunction(sig: Signature, states: Iterable[Assignment]) -> Formula:
    """Tensor disjunction of state formulas; no states gives bottom."""
    return disj([state_formula(sig, s) for s in states], empty=bottom(sig))


def states_satisfying(sig: Signature, laws: FunctionComponent, alpha: Formula) -> List[Assignment]:
    return [s for s in sig.states if row_satisfies(sig, laws, s, alpha)]


def indices_disjunction(sig: Signature, indices: Iterable[int]) -> Formula:
    """Disjunction of the state formulas at the given 0-based indices."""
    return state_disjunction(sig, [sig.states[i] for i in sorted(set(indices))])
