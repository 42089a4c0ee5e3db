"""Singleton semantics: ({s}, F) |= alpha for CO formulas."""

from causal_multiteams.core.laws import FunctionComponent, apply_intervention, normalize_intervention
from causal_multiteams.core.signature import Assignment, Signature
from causal_multiteams.errors import TwoLevelError
from causal_multiteams.syntax.ast import And, Counterfactual, Formula, Implies, Lit, Or


def row_satisfies(sig: Signature, laws: FunctionComponent, row: Assignment, alpha: Formula) -> bool:
    """
    Decide alpha on the singleton causal multiteam ({row}, laws).

    On a singleton the tensor split puts the row on one side, so the tensor
    is classical disjunction; alpha => beta holds when the row fails alpha
    (the observed team is empty) or satisfies beta.
    """
    if isinstance(alpha, Lit):
        matches = sig.value(row, alpha.var) == alpha.value
        return matches if alpha.positive else not matches
    if isinstance(alpha, And):
        return (row_satisfies(sig, laws, row, alpha.left)
                and row_satisfies(sig, laws, row, alpha.right))
    if isinstance(alpha, Or):
        return (row_satisfies(sig, laws, row, alpha.left)
                or row_satisfies(sig, laws, row, alpha.right))
    if isinstance(alpha, Implies):
        return (not row_satisfies(sig, laws, row, alpha.antecedent)
                or row_satisfies(sig, laws, row, alpha.consequent))
    if isinstance(alpha, Counterfactual):
        fixed = normalize_intervention(sig, alpha.assignment)
        if fixed is None:
            return True
        image = apply_intervention(sig, laws, row, fixed)
        return row_satisfies(sig, laws.without(fixed), image, alpha.body)
    raise TwoLevelError(f"{type(alpha).__name__} is not a CO formula")


def satisfying_states(sig: Signature, laws: FunctionComponent, alpha: Formula):
    """Indices i such that s_i |= alpha, in enumeration order."""
    return [i for i, state in enumerate(sig.states) if row_satisfies(sig, laws, state, alpha)]
