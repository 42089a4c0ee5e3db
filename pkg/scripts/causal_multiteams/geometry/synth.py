"""
Probability set -> formula.

Every inequality is rewritten with the shift identity that holds on the
simplex, a.eps cmp b  iff  (a + l).eps cmp b + l, and then matched against
three shapes:

  two coefficient values      Pr(OR_J) cmp c                    (monic)
  homogeneous, {0, k, -k}     Pr(OR_J) cmp Pr(OR_I)              (comparison)
  homogeneous, c+ on J, c- on I
                              OR_{I+J} => Pr(OR_J) cmp -c-/(c+ - c-)
                              and Pr(OR_{I+J}) > 0 when cmp is strict

Anything else raises NotSynthesizableError.
"""

import logging
from fractions import Fraction
from typing import List, Optional

from causal_multiteams.core.signature import Signature
from causal_multiteams.errors import (
    ClassExceedsTargetError,
    DimensionMismatchError,
    NotSynthesizableError,
)
from causal_multiteams.geometry.inequalities import (
    IneqClass,
    IneqSystem,
    LinIneq,
    ProbabilitySet,
    classify_set,
)
from causal_multiteams.rewrite.states import indices_disjunction
from causal_multiteams.syntax.ast import (
    And,
    CompAtom,
    EvalAtom,
    Formula,
    Implies,
    Prob,
    bottom,
    compare,
    conj,
    gdisj,
    top,
)

logger = logging.getLogger(__name__)

DEFAULT_VARIABLE = "S"


def _indices(coeffs, value) -> List[int]:
    return [i for i, a in enumerate(coeffs) if a == value]


def _monic_atom(sig: Signature, indices: List[int], cmp: str, c: Fraction) -> Formula:
    """Pr(OR_J) cmp c, with bounds outside [0, 1] folded into top/bottom."""
    if cmp == ">=":
        always, never = c <= 0, c > 1
    elif cmp == ">":
        always, never = c < 0, c >= 1
    elif cmp == "<=":
        always, never = c >= 1, c < 0
    else:
        always, never = c > 1, c <= 0
    if always:
        return top(sig)
    if never:
        return bottom(sig)
    return EvalAtom(Prob(indices_disjunction(sig, indices)), cmp, c)


def synth_ineq(e: LinIneq, sig: Signature) -> Formula:
    values = sorted(set(e.coeffs))

    if len(values) == 1:
        # value * (sum of eps) cmp bound, and the sum is 1 on the simplex
        return top(sig) if compare(values[0], e.cmp, e.bound) else bottom(sig)

    if len(values) == 2:
        low, high = values
        c = (e.bound - low) / (high - low)
        return _monic_atom(sig, _indices(e.coeffs, high), e.cmp, c)

    shifted = [a - e.bound for a in e.coeffs]
    positives = sorted({a for a in shifted if a > 0})
    negatives = sorted({a for a in shifted if a < 0})
    if len(positives) != 1 or len(negatives) != 1:
        raise NotSynthesizableError(f"{e} has no formula of the supported shapes")
    c_plus, c_minus = positives[0], negatives[0]
    hits, misses = _indices(shifted, c_plus), _indices(shifted, c_minus)

    if c_plus == -c_minus:
        return CompAtom(Prob(indices_disjunction(sig, hits)), e.cmp,
                        Prob(indices_disjunction(sig, misses)))

    scope = indices_disjunction(sig, hits + misses)
    ratio = -c_minus / (c_plus - c_minus)
    observed = Implies(scope, EvalAtom(Prob(indices_disjunction(sig, hits)), e.cmp, ratio))
    if e.cmp in (">", "<"):
        return And(observed, EvalAtom(Prob(scope), ">", Fraction(0)))
    return observed


def synth_system(system: IneqSystem, sig: Signature) -> Formula:
    return conj([synth_ineq(e, sig) for e in system.ineqs], empty=top(sig))


def synth(s: ProbabilitySet, target: IneqClass, sig: Optional[Signature] = None) -> Formula:
    """
    Formula whose nonempty models are exactly those with probability vector
    in s; sig defaults to one variable S with values 1..n.
    """
    if sig is None:
        sig = Signature.single(DEFAULT_VARIABLE, s.n)
    if sig.size != s.n:
        raise DimensionMismatchError(f"set over {s.n} states, signature with {sig.size}")
    found = classify_set(s)
    if found > target:
        raise ClassExceedsTargetError(f"set is {found.label}, above the target {target.label}")
    result = gdisj([synth_system(system, sig) for system in s.systems], empty=bottom(sig))
    logger.info("[SYNTH] %d systems -> %s formula", len(s.systems), target.label)
    return result
