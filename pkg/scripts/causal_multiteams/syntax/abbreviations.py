"""
Abbreviation expansion into the core syntax (>=, >, and, gor, =>, [..]).

    Pr(a) <= e   ->  Pr(a^d) >= 1-e
    Pr(a) <  e   ->  Pr(a^d) >  1-e
    Pr(a) == e   ->  Pr(a) >= e and Pr(a) <= e
    Pr(a) != e   ->  Pr(a) > e gor Pr(a) < e
    Pr(a | g) cmp x  ->  g => Pr(a) cmp x          (x a number or Pr(b | g))

Comparisons with two different conditions are left alone.
"""

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
    bottom_on,
    first_literal,
    has_counterfactual,
    has_implication,
)


def dual(alpha: Formula) -> Formula:
    """
    alpha^d: holds on T iff every row of T refutes alpha.

    De Morgan on literals, and, or; formulas with => or [..] fall back to
    alpha => bottom.
    """
    if has_implication(alpha) or has_counterfactual(alpha):
        lit = first_literal(alpha)
        return Implies(alpha, bottom_on(lit.var, lit.value))
    return _de_morgan(alpha)


def _de_morgan(alpha: Formula) -> Formula:
    if isinstance(alpha, Lit):
        return Lit(alpha.var, alpha.value, not alpha.positive)
    if isinstance(alpha, And):
        return Or(_de_morgan(alpha.left), _de_morgan(alpha.right))
    if isinstance(alpha, Or):
        return And(_de_morgan(alpha.left), _de_morgan(alpha.right))
    raise TypeError(f"no De Morgan dual for {type(alpha).__name__}")


def _eval(arg: Formula, op: str, bound: Fraction) -> Formula:
    if op in (">=", ">"):
        return EvalAtom(Prob(arg), op, bound)
    if op == "<=":
        return EvalAtom(Prob(dual(arg)), ">=", 1 - bound)
    if op == "<":
        return EvalAtom(Prob(dual(arg)), ">", 1 - bound)
    if op == "==":
        return And(_eval(arg, ">=", bound), _eval(arg, "<=", bound))
    return GOr(_eval(arg, ">", bound), _eval(arg, "<", bound))


def _comp(left: Formula, op: str, right: Formula) -> Formula:
    if op in (">=", ">"):
        return CompAtom(Prob(left), op, Prob(right))
    if op == "<=":
        return CompAtom(Prob(right), ">=", Prob(left))
    if op == "<":
        return CompAtom(Prob(right), ">", Prob(left))
    if op == "==":
        return And(_comp(left, ">=", right), _comp(left, "<=", right))
    return GOr(_comp(left, ">", right), _comp(left, "<", right))


def _lift(f: Formula, atom) -> Formula:
    if isinstance(f, (Lit, Or)):
        return f
    if isinstance(f, And):
        return And(_lift(f.left, atom), _lift(f.right, atom))
    if isinstance(f, GOr):
        return GOr(_lift(f.left, atom), _lift(f.right, atom))
    if isinstance(f, Implies):
        return Implies(f.antecedent, _lift(f.consequent, atom))
    if isinstance(f, Counterfactual):
        return Counterfactual(f.assignment, _lift(f.body, atom))
    if isinstance(f, (EvalAtom, CompAtom)):
        return atom(f)
    raise TypeError(f"unexpected node {type(f).__name__}")


def _expand_atom(f: Formula) -> Formula:
    if isinstance(f, EvalAtom):
        core = _eval(f.term.arg, f.op, f.bound)
        return core if f.term.given is None else Implies(f.term.given, core)
    if f.is_mixed:
        return f
    core = _comp(f.left.arg, f.op, f.right.arg)
    return core if f.left.given is None else Implies(f.left.given, core)


def _lower_atom(f: Formula) -> Formula:
    if isinstance(f, EvalAtom):
        if f.term.given is None:
            return f
        return Implies(f.term.given, EvalAtom(Prob(f.term.arg), f.op, f.bound))
    if f.is_mixed or f.left.given is None:
        return f
    return Implies(f.left.given, CompAtom(Prob(f.left.arg), f.op, Prob(f.right.arg)))


def expand_abbreviations(f: Formula) -> Formula:
    """Core-syntax equivalent of f; mixed conditional comparisons survive."""
    return _lift(f, _expand_atom)


def lower_conditionals(f: Formula) -> Formula:
    """Only move conditions out into =>; comparators are kept as written."""
    return _lift(f, _lower_atom)
