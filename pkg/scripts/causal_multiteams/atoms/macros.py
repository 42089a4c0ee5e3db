"""
Dependence, marginal identity and (conditional) independence as formulas.

    dep(X;Y)     AND_x GOR_y (X=x => Y=y)
    mi(X;Y)      AND_{x in Ran(X) u Ran(Y)} Pr(X=x) == Pr(Y=x)
    indep(X;Y)   AND_{x,y} Pr(X=x) == Pr(X=x | Y=y)
    indep(X;Y|Z) AND_{x,y,z} Pr(X=x | Z=z) == Pr(X=x | Y=y and Z=z)

X, Y, Z are tuples of variables; X=x is the conjunction of the literals.
The two independence forms compare probabilities under different conditions
and are evaluated natively rather than compiled.
"""

import itertools
from typing import List, Optional, Sequence, Tuple

from causal_multiteams.core.signature import Signature
from causal_multiteams.errors import BindingError
from causal_multiteams.syntax.ast import (
    And,
    CompAtom,
    Formula,
    Implies,
    Prob,
    bottom,
    conj,
    gdisj,
    vector_literal,
)

DEP, MI, INDEP, CINDEP = "dep", "mi", "indep", "cindep"
KINDS = (DEP, MI, INDEP, CINDEP)


def _check(sig: Signature, name: str, variables: Sequence[str]) -> Tuple[str, ...]:
    if not variables:
        raise BindingError(f"{name} needs at least one variable")
    for var in variables:
        if not sig.has_variable(var):
            raise BindingError(f"unknown variable {var!r} in {name}")
    return tuple(variables)


def value_tuples(sig: Signature, variables: Sequence[str]) -> List[Tuple]:
    return list(itertools.product(*(sig.range_of(var) for var in variables)))


def _dep(sig: Signature, xs, ys) -> Formula:
    parts = []
    for x in value_tuples(sig, xs):
        antecedent = vector_literal(xs, x)
        parts.append(gdisj([Implies(antecedent, vector_literal(ys, y)) for y in value_tuples(sig, ys)]))
    return conj(parts)


def _mi(sig: Signature, xs, ys) -> Formula:
    if len(xs) != len(ys):
        raise BindingError(f"mi needs tuples of equal length, got {len(xs)} and {len(ys)}")
    x_values, y_values = value_tuples(sig, xs), value_tuples(sig, ys)
    values = x_values + [v for v in y_values if v not in x_values]
    impossible = Prob(bottom(sig))
    parts = []
    for v in values:
        left = Prob(vector_literal(xs, v)) if v in x_values else impossible
        right = Prob(vector_literal(ys, v)) if v in y_values else impossible
        parts.append(CompAtom(left, "==", right))
    return conj(parts)


def _indep(sig: Signature, xs, ys) -> Formula:
    parts = []
    for x in value_tuples(sig, xs):
        for y in value_tuples(sig, ys):
            lit = vector_literal(xs, x)
            parts.append(CompAtom(Prob(lit), "==", Prob(lit, vector_literal(ys, y))))
    return conj(parts)


def _cindep(sig: Signature, xs, ys, zs) -> Formula:
    parts = []
    for x in value_tuples(sig, xs):
        for y in value_tuples(sig, ys):
            for z in value_tuples(sig, zs):
                lit, given = vector_literal(xs, x), vector_literal(zs, z)
                parts.append(CompAtom(Prob(lit, given), "==",
                                      Prob(lit, And(vector_literal(ys, y), given))))
    return conj(parts)


def expand_atom(kind: str, xs: Sequence[str], ys: Sequence[str],
                zs: Optional[Sequence[str]], sig: Signature) -> Formula:
    """Formula for a dependence-style atom; indep with zs means cindep."""
    xs = _check(sig, kind, xs)
    ys = _check(sig, kind, ys)
    if kind == INDEP and zs:
        kind = CINDEP
    if kind == DEP:
        return _dep(sig, xs, ys)
    if kind == MI:
        return _mi(sig, xs, ys)
    if kind == INDEP:
        return _indep(sig, xs, ys)
    if kind == CINDEP:
        return _cindep(sig, xs, ys, _check(sig, kind, zs or ()))
    raise BindingError(f"unknown atom kind {kind!r}; expected one of {', '.join(KINDS)}")
