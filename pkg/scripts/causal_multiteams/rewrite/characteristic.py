"""
Characteristic formulas.

phi(F)   holds on a nonempty model iff its function component is F.
psi(F)   the same property without =>, as a P([]) formula.
theta(S) holds on a model iff its multiteam is a rescaling of S (or empty).
"""

import itertools
import logging
from fractions import Fraction
from typing import List, Sequence, Tuple

from causal_multiteams.core.enumeration import enumerate_function_components
from causal_multiteams.core.laws import FunctionComponent
from causal_multiteams.core.model import Multiteam
from causal_multiteams.core.signature import Signature
from causal_multiteams.errors import EmptyMultiteamError
from causal_multiteams.rewrite.relativize import check_laws, relativize
from causal_multiteams.rewrite.states import state_disjunction, state_formula
from causal_multiteams.syntax.ast import (
    And,
    Counterfactual,
    EvalAtom,
    Formula,
    Implies,
    Lit,
    Or,
    Prob,
    at_least,
    conj,
    gdisj,
    top,
)

logger = logging.getLogger(__name__)

PHI, PSI, THETA = "phi", "psi", "theta"


def _fix(sig: Signature, var: str, w) -> Tuple:
    return tuple(zip(sig.others(var), w))


def _prefixed(assignment: Tuple, body: Formula) -> Formula:
    return Counterfactual(assignment, body) if assignment else body


def _argument_tuples(sig: Signature, var: str):
    return itertools.product(*(sig.range_of(name) for name in sig.others(var)))


def _eta(sig: Signature, laws: FunctionComponent, var: str) -> List[Formula]:
    law = laws.get(var)
    return [_prefixed(_fix(sig, var, w), Lit(var, law(w))) for w in _argument_tuples(sig, var)]


def _xi(sig: Signature, var: str, as_probability: bool) -> List[Formula]:
    parts = []
    for w in _argument_tuples(sig, var):
        for v in sig.range_of(var):
            stays = _prefixed(_fix(sig, var, w), Lit(var, v))
            if as_probability:
                parts.append(at_least(Or(Lit(var, v, False), stays), 1))
            else:
                parts.append(Implies(Lit(var, v), stays))
    return parts


def _characteristic(sig: Signature, laws: FunctionComponent, as_probability: bool) -> Formula:
    check_laws(sig, laws)
    parts: List[Formula] = []
    for var in sig.variables:
        if laws.is_endogenous(var):
            parts.extend(_eta(sig, laws, var))
    for var in sig.variables:
        if not laws.is_endogenous(var):
            parts.extend(_xi(sig, var, as_probability))
    return conj(parts, empty=top(sig))


def phi_formula(sig: Signature, laws: FunctionComponent) -> Formula:
    return _characteristic(sig, laws, as_probability=False)


def psi_formula(sig: Signature, laws: FunctionComponent) -> Formula:
    return _characteristic(sig, laws, as_probability=True)


def theta_formula(sig: Signature, multiteam: Multiteam) -> Formula:
    if multiteam.is_empty:
        raise EmptyMultiteamError("theta needs a nonempty multiteam")
    total = multiteam.size
    rows = sorted(multiteam.support, key=sig.index_of)
    parts: List[Formula] = [
        EvalAtom(Prob(state_formula(sig, row)), "==", Fraction(multiteam.count(row), total))
        for row in rows
    ]
    parts.append(EvalAtom(Prob(state_disjunction(sig, rows)), "==", Fraction(1)))
    return conj(parts)


def characteristic_formula(kind: str, arg, sig: Signature) -> Formula:
    """Dispatch on kind: phi/psi take a FunctionComponent, theta a Multiteam."""
    if kind == PHI:
        return phi_formula(sig, arg)
    if kind == PSI:
        return psi_formula(sig, arg)
    if kind == THETA:
        return theta_formula(sig, arg)
    raise ValueError(f"unknown characteristic formula {kind!r}")


def pco_decompose(phi: Formula, sig: Signature) -> List[Tuple[FunctionComponent, Formula]]:
    """One law-free relativisation per function component of the signature."""
    components = enumerate_function_components(sig)
    pairs = [(laws, relativize(phi, laws, sig)) for laws in components]
    logger.info("[REWRITE] decomposed over %d function components", len(pairs))
    return pairs


def reconstruct(pairs: Sequence[Tuple[FunctionComponent, Formula]], sig: Signature) -> Formula:
    """gor over F of (psi(F) and phi_F); equivalent to the decomposed formula."""
    return gdisj([And(psi_formula(sig, laws), formula) for laws, formula in pairs])
