"""
Formula -> probability set.

For every nonempty model t (with laws F when F is supplied),
t |= phi  iff  the probability vector of t is a member of extract(phi).
"""

import logging
from fractions import Fraction
from typing import List, Optional

from causal_multiteams.core.laws import FunctionComponent
from causal_multiteams.core.signature import Signature
from causal_multiteams.errors import LawsRequiredError, WrongFragmentError
from causal_multiteams.geometry.inequalities import (
    LinIneq,
    ProbabilitySet,
    complement,
    intersect,
    union,
)
from causal_multiteams.rewrite.normal_forms import supset_normal_form
from causal_multiteams.rewrite.relativize import relativize
from causal_multiteams.semantics.rows import row_satisfies
from causal_multiteams.syntax.abbreviations import lower_conditionals
from causal_multiteams.syntax.ast import (
    And,
    CompAtom,
    EvalAtom,
    Formula,
    GOr,
    Implies,
    has_counterfactual,
    is_co,
)
from causal_multiteams.syntax.fragments import FragmentLabel, classify_fragment

logger = logging.getLogger(__name__)

Vector = List[Fraction]


class _Extractor:
    def __init__(self, sig: Signature):
        self.sig = sig
        self.n = sig.size
        self.laws = FunctionComponent.empty()

    def indicator(self, alpha: Formula) -> Vector:
        return [Fraction(1 if row_satisfies(self.sig, self.laws, s, alpha) else 0)
                for s in self.sig.states]

    def with_op(self, coeffs: Vector, op: str, bound: Fraction) -> ProbabilitySet:
        """coeffs . eps op bound, with == and != unfolded."""
        if op == "==":
            return ProbabilitySet.of(LinIneq.make(coeffs, ">=", bound), LinIneq.make(coeffs, "<=", bound))
        if op == "!=":
            return complement(self.with_op(coeffs, "==", bound))
        return ProbabilitySet.of(LinIneq.make(coeffs, op, bound))

    def run(self, f: Formula) -> ProbabilitySet:
        if is_co(f):
            return self.with_op(self.indicator(f), ">=", Fraction(1))
        if isinstance(f, And):
            return intersect(self.run(f.left), self.run(f.right))
        if isinstance(f, GOr):
            return union(self.run(f.left), self.run(f.right))
        if isinstance(f, EvalAtom):
            return self.with_op(self.indicator(f.term.arg), f.op, f.bound)
        if isinstance(f, CompAtom):
            left, right = self.indicator(f.left.arg), self.indicator(f.right.arg)
            return self.with_op([a - c for a, c in zip(left, right)], f.op, Fraction(0))
        if isinstance(f, Implies):
            return self.observation(f)
        raise WrongFragmentError(f"cannot extract {type(f).__name__}")

    def observation(self, f: Implies) -> ProbabilitySet:
        scope = self.indicator(f.antecedent)
        nothing_observed = self.with_op(scope, "<=", Fraction(0))
        atom = f.consequent
        if isinstance(atom, EvalAtom):
            hit = self.indicator(atom.term.arg)
            b = atom.bound
            # P_{T^a}(beta) op b, multiplied out by the mass of T^a
            coeffs = [(1 - b) * h * a - b * (1 - h) * a for h, a in zip(hit, scope)]
        elif isinstance(atom, CompAtom):
            left, right = self.indicator(atom.left.arg), self.indicator(atom.right.arg)
            coeffs = [(x - y) * a for x, y, a in zip(left, right, scope)]
        else:
            raise WrongFragmentError("observation consequent is not a probabilistic atom")
        return union(nothing_observed, self.with_op(coeffs, atom.op, Fraction(0)))


def extract(phi: Formula, sig: Signature, laws: Optional[FunctionComponent] = None) -> ProbabilitySet:
    """
    Probability set of phi. Counterfactual formulas need laws: they are
    relativised to F first, and the set is only meaningful for F-models.
    """
    label = classify_fragment(phi)
    if label == FragmentLabel.EXTENDED:
        raise WrongFragmentError("mixed conditional comparisons have no linear probability set")
    f = lower_conditionals(phi)
    if has_counterfactual(f):
        if laws is None:
            raise LawsRequiredError(f"a {label} formula needs a function component to extract")
        f = relativize(f, laws, sig)
    f = supset_normal_form(f)
    result = _Extractor(sig).run(f)
    logger.info("[EXTRACT] %s formula -> %d systems over %d states", label, len(result.systems), sig.size)
    return result
