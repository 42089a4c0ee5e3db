"""
Normal forms: observations with probabilistic consequents, and
counterfactual prefixes pushed inside probability statements.
"""

import logging
from fractions import Fraction

from causal_multiteams.syntax.ast import (
    And,
    CompAtom,
    Counterfactual,
    EvalAtom,
    Formula,
    GOr,
    Implies,
    Lit,
    Or,
    Prob,
    at_least,
    has_counterfactual,
    has_implication,
    is_co,
    top_on,
)
from causal_multiteams.syntax.fragments import FragmentLabel, require_fragment

logger = logging.getLogger(__name__)

ONE = Fraction(1)


def _snf(f: Formula) -> Formula:
    if isinstance(f, Implies):
        alpha, psi = f.antecedent, f.consequent
        if isinstance(psi, Implies):
            return _snf(Implies(And(alpha, psi.antecedent), psi.consequent))
        if isinstance(psi, And):
            return And(_snf(Implies(alpha, psi.left)), _snf(Implies(alpha, psi.right)))
        if isinstance(psi, GOr):
            return GOr(_snf(Implies(alpha, psi.left)), _snf(Implies(alpha, psi.right)))
        if isinstance(psi, (EvalAtom, CompAtom)):
            return f
        return Implies(alpha, at_least(psi, ONE))
    if isinstance(f, And):
        return And(_snf(f.left), _snf(f.right))
    if isinstance(f, GOr):
        return GOr(_snf(f.left), _snf(f.right))
    if isinstance(f, Or) and has_implication(f):
        # flat: a CO formula holds iff every row satisfies it
        return at_least(f, ONE)
    return f


def supset_normal_form(phi: Formula) -> Formula:
    """Every => outside Pr arguments and antecedents ends in a probabilistic atom."""
    require_fragment(phi, FragmentLabel.P_SUPSET, "supset_normal_form")
    result = _snf(phi)
    logger.debug("[REWRITE] supset-nf done")
    return result


def _true_atom(assignment) -> Formula:
    var, value = assignment[0]
    return at_least(top_on(var, value), ONE)


def _wrap(assignment, term: Prob) -> Prob:
    given = None if term.given is None else Counterfactual(assignment, term.given)
    return Prob(Counterfactual(assignment, term.arg), given)


def _under(assignment, body: Formula, allow_supset: bool) -> Formula:
    prefix = Counterfactual(assignment, body)
    if not prefix.is_consistent:
        return _true_atom(assignment)
    if is_co(body):
        return at_least(prefix, ONE)
    if isinstance(body, Counterfactual):
        if not body.is_consistent:
            return _true_atom(body.assignment)
        inner = {var for var, _ in body.assignment}
        merged = tuple((var, value) for var, value in assignment if var not in inner) + body.assignment
        return _under(merged, body.body, allow_supset)
    if isinstance(body, And):
        return And(_under(assignment, body.left, allow_supset),
                   _under(assignment, body.right, allow_supset))
    if isinstance(body, GOr):
        return GOr(_under(assignment, body.left, allow_supset),
                   _under(assignment, body.right, allow_supset))
    if isinstance(body, Implies) and allow_supset:
        # interventions act row by row, so observing afterwards equals
        # observing the counterfactual antecedent before
        return Implies(Counterfactual(assignment, body.antecedent),
                       _under(assignment, body.consequent, allow_supset))
    if isinstance(body, EvalAtom):
        return EvalAtom(_wrap(assignment, body.term), body.op, body.bound)
    if isinstance(body, CompAtom):
        return CompAtom(_wrap(assignment, body.left), body.op, _wrap(assignment, body.right))
    raise TypeError(f"cannot push a counterfactual into {type(body).__name__}")


def _push(f: Formula, allow_supset: bool) -> Formula:
    if isinstance(f, Counterfactual):
        return _under(f.assignment, f.body, allow_supset)
    if isinstance(f, And):
        return And(_push(f.left, allow_supset), _push(f.right, allow_supset))
    if isinstance(f, GOr):
        return GOr(_push(f.left, allow_supset), _push(f.right, allow_supset))
    if isinstance(f, Implies) and not is_co(f):
        return Implies(f.antecedent, _push(f.consequent, allow_supset))
    if is_co(f) and has_counterfactual(f):
        return at_least(f, ONE)
    return f


def push_boxright(phi: Formula, allow_supset: bool = False) -> Formula:
    """
    Move every counterfactual prefix inside probability statements.

    With allow_supset (used by relativize) observations under a prefix are
    accepted and the prefix is carried into their antecedent.
    """
    bound = FragmentLabel.PCO if allow_supset else FragmentLabel.P_BOXRIGHT
    require_fragment(phi, bound, "push_boxright")
    result = _push(phi, allow_supset)
    logger.debug("[REWRITE] push-box done")
    return result
