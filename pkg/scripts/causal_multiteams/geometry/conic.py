"""
The quadratic behind mixed conditional comparisons.

With eps_i fixed to delta and only the states i, j, k, l carrying mass,
Pr(a_k or a_i | a_l or a_i) > Pr(a_l or a_j) reduces to

    2 e_k e_l + 2 delta e_k + (2 delta - 2) e_l + 2 delta^2 > 0

whose boundary is a conic. Its homogeneous discriminant is -2 delta, never
zero on (0, 1), so the boundary is not a union of lines.
"""

from fractions import Fraction
from typing import Sequence

import sympy

from causal_multiteams.core.signature import Signature
from causal_multiteams.errors import DeltaDomainError
from causal_multiteams.rewrite.states import state_formula
from causal_multiteams.syntax.ast import And, CompAtom, EvalAtom, Formula, Or, Prob


def _rational(q) -> sympy.Rational:
    q = Fraction(q)
    return sympy.Rational(q.numerator, q.denominator)


def _fraction(value) -> Fraction:
    value = sympy.nsimplify(value)
    p, q = sympy.fraction(value)
    return Fraction(int(p), int(q))


def section_polynomial(delta) -> sympy.Expr:
    """Homogenised section in e_k, e_l and the projective coordinate z."""
    e_k, e_l, z = sympy.symbols("e_k e_l z")
    d = _rational(delta)
    return 2 * e_k * e_l + 2 * d * e_k * z + (2 * d - 2) * e_l * z + 2 * d ** 2 * z ** 2


def conic_matrix(delta) -> sympy.Matrix:
    """Symmetric matrix of the section: half its Hessian."""
    e_k, e_l, z = sympy.symbols("e_k e_l z")
    return sympy.hessian(section_polynomial(delta), (e_k, e_l, z)) / 2


def conic_discriminant(delta) -> Fraction:
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise DeltaDomainError(f"delta must lie strictly between 0 and 1, got {delta}")
    return _fraction(conic_matrix(delta).det())


def conditional_witness(sig: Signature, i: int, j: int, k: int, l: int, op: str, delta) -> Formula:
    """
    Pr(a_k or a_i | a_l or a_i) op Pr(a_l or a_j)
    and Pr(a_i) == delta and Pr(a_j or a_k or a_l) == 1 - delta,
    over four distinct 0-based state indices.
    """
    if len({i, j, k, l}) != 4:
        raise ValueError("witness needs four distinct states")
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise DeltaDomainError(f"delta must lie strictly between 0 and 1, got {delta}")
    a = {idx: state_formula(sig, sig.states[idx]) for idx in (i, j, k, l)}
    comparison = CompAtom(Prob(Or(a[k], a[i]), Or(a[l], a[i])), op, Prob(Or(a[l], a[j])))
    pinned = EvalAtom(Prob(a[i]), "==", delta)
    rest = EvalAtom(Prob(Or(Or(a[j], a[k]), a[l])), "==", 1 - delta)
    return And(And(comparison, pinned), rest)


def witness_quadratic(point: Sequence, i: int, j: int, l: int) -> Fraction:
    """e_i - (e_l + e_j)(e_l + e_i); its sign decides the comparison when e_l + e_i > 0."""
    p = [Fraction(x) for x in point]
    return p[i] - (p[l] + p[j]) * (p[l] + p[i])
