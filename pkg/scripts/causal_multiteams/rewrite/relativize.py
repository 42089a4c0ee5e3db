"""
Relativisation to a fixed function component F.

On models whose laws are F, a CO formula alpha holds on a row exactly when
the row is one of the states satisfying alpha under F, so alpha can be
traded for the disjunction of those state formulas. The result is
law-independent and free of counterfactuals.
"""

import logging

from causal_multiteams.core.laws import FunctionComponent
from causal_multiteams.core.signature import Signature
from causal_multiteams.errors import InvalidLawsError
from causal_multiteams.rewrite.normal_forms import push_boxright
from causal_multiteams.rewrite.states import state_disjunction, states_satisfying
from causal_multiteams.syntax.ast import (
    And,
    CompAtom,
    EvalAtom,
    Formula,
    GOr,
    Implies,
    Prob,
    has_counterfactual,
)
from causal_multiteams.syntax.fragments import FragmentLabel, require_fragment

logger = logging.getLogger(__name__)


def check_laws(sig: Signature, laws: FunctionComponent) -> None:
    for law in laws.laws:
        if not sig.has_variable(law.variable) or law.arguments != sig.others(law.variable):
            raise InvalidLawsError(f"F_{law.variable} does not fit the signature")
        if law.is_constant:
            raise InvalidLawsError(f"F_{law.variable} is constant")
    if not laws.is_acyclic:
        raise InvalidLawsError("parent graph has a cycle")


class _Relativizer:
    def __init__(self, sig: Signature, laws: FunctionComponent):
        self.sig = sig
        self.laws = laws

    def states(self, alpha: Formula) -> Formula:
        return state_disjunction(self.sig, states_satisfying(self.sig, self.laws, alpha))

    def prob(self, term: Prob) -> Prob:
        given = None if term.given is None else self.states(term.given)
        return Prob(self.states(term.arg), given)

    def run(self, f: Formula) -> Formula:
        if isinstance(f, And):
            return And(self.run(f.left), self.run(f.right))
        if isinstance(f, GOr):
            return GOr(self.run(f.left), self.run(f.right))
        if isinstance(f, Implies):
            antecedent = self.states(f.antecedent) if has_counterfactual(f.antecedent) else f.antecedent
            return Implies(antecedent, self.run(f.consequent))
        if isinstance(f, EvalAtom):
            return EvalAtom(self.prob(f.term), f.op, f.bound)
        if isinstance(f, CompAtom):
            return CompAtom(self.prob(f.left), f.op, self.prob(f.right))
        return f


def relativize(phi: Formula, laws: FunctionComponent, sig: Signature) -> Formula:
    """phi^F: equivalent to phi on every model whose function component is F."""
    require_fragment(phi, FragmentLabel.PCO, "relativize")
    check_laws(sig, laws)
    pushed = push_boxright(phi, allow_supset=True)
    result = _Relativizer(sig, laws).run(pushed)
    logger.debug("[REWRITE] relativized to %d laws", len(laws))
    return result
