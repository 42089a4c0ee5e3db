"""
Formula trees for CO, PCO and the extended conditional atoms.

One node family serves both levels. A node is a CO formula when no
probabilistic atom and no global disjunction occurs in it (see is_co); the
binder enforces that Pr arguments, conditions, selective-implication
antecedents and both sides of a tensor disjunction are CO formulas.
"""

import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Callable, Dict, Iterator, Optional, Sequence, Tuple, Union

Value = Union[int, str]

COMPARATORS: Tuple[str, ...] = (">=", ">", "<=", "<", "==", "!=")
CORE_COMPARATORS: Tuple[str, ...] = (">=", ">")

_COMPARE: Dict[str, Callable] = {
    ">=": operator.ge,
    ">": operator.gt,
    "<=": operator.le,
    "<": operator.lt,
    "==": operator.eq,
    "!=": operator.ne,
}


def compare(left: Fraction, op: str, right: Fraction) -> bool:
    return _COMPARE[op](left, right)


class Formula:
    """Base class of all formula nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Lit(Formula):
    var: str
    value: Value
    positive: bool = True


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    """Tensor disjunction (CO only)."""

    left: Formula
    right: Formula


@dataclass(frozen=True)
class GOr(Formula):
    """Global disjunction."""

    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    """Selective implication: evaluate the consequent on the observed rows."""

    antecedent: Formula
    consequent: Formula


@dataclass(frozen=True)
class Counterfactual(Formula):
    """[X:=x] body, with the assignment list kept as written."""

    assignment: Tuple[Tuple[str, Value], ...]
    body: Formula

    @property
    def is_consistent(self) -> bool:
        seen: Dict[str, Value] = {}
        for var, value in self.assignment:
            if seen.setdefault(var, value) != value:
                return False
        return True


@dataclass(frozen=True)
class Prob:
    """Pr(arg) or Pr(arg | given)."""

    arg: Formula
    given: Optional[Formula] = None


@dataclass(frozen=True)
class EvalAtom(Formula):
    term: Prob
    op: str
    bound: Fraction


@dataclass(frozen=True)
class CompAtom(Formula):
    left: Prob
    op: str
    right: Prob

    @property
    def is_mixed(self) -> bool:
        """Different conditions on the two sides: not lowerable to PCO."""
        return self.left.given != self.right.given


@dataclass(frozen=True)
class MacroAtom(Formula):
    """dep / mi / indep surface atoms; replaced while binding."""

    kind: str
    xs: Tuple[str, ...]
    ys: Tuple[str, ...]
    zs: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Constant(Formula):
    """`top` / `bot` as written; replaced by derived forms while binding."""

    truth: bool


BINARY = (And, Or, GOr, Implies)
ATOMS = (Lit, EvalAtom, CompAtom)


def children(f: Formula) -> Tuple[Formula, ...]:
    """Direct subformulas, including Pr arguments and conditions."""
    if isinstance(f, (And, Or, GOr)):
        return (f.left, f.right)
    if isinstance(f, Implies):
        return (f.antecedent, f.consequent)
    if isinstance(f, Counterfactual):
        return (f.body,)
    if isinstance(f, EvalAtom):
        return _prob_parts(f.term)
    if isinstance(f, CompAtom):
        return _prob_parts(f.left) + _prob_parts(f.right)
    return ()


def _prob_parts(term: Prob) -> Tuple[Formula, ...]:
    return (term.arg,) if term.given is None else (term.arg, term.given)


def walk(f: Formula) -> Iterator[Formula]:
    """Every node of the tree, both levels, preorder."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def is_co(f: Formula) -> bool:
    """No probabilistic atom and no global disjunction anywhere."""
    return not any(isinstance(node, (EvalAtom, CompAtom, GOr, MacroAtom)) for node in walk(f))


def has_counterfactual(f: Formula) -> bool:
    return any(isinstance(node, Counterfactual) for node in walk(f))


def has_implication(f: Formula) -> bool:
    return any(isinstance(node, Implies) for node in walk(f))


def literals(f: Formula) -> Iterator[Lit]:
    return (node for node in walk(f) if isinstance(node, Lit))


def first_literal(f: Formula) -> Lit:
    for node in walk(f):
        if isinstance(node, Lit):
            return node
        if isinstance(node, Counterfactual) and node.assignment:
            var, value = node.assignment[0]
            return Lit(var, value)
    raise ValueError("formula mentions no variable")


def top_on(var: str, value: Value) -> Formula:
    """X=x or X!=x."""
    return Or(Lit(var, value), Lit(var, value, False))


def bottom_on(var: str, value: Value) -> Formula:
    """X=x and X!=x."""
    return And(Lit(var, value), Lit(var, value, False))


def top(sig) -> Formula:
    return top_on(sig.variables[0], sig.ranges[0][0])


def bottom(sig) -> Formula:
    return bottom_on(sig.variables[0], sig.ranges[0][0])


def conj(parts: Sequence[Formula], empty: Optional[Formula] = None) -> Formula:
    """Left-nested conjunction; `empty` is returned for no parts."""
    if not parts:
        if empty is None:
            raise ValueError("empty conjunction needs an explicit neutral formula")
        return empty
    return reduce(And, parts)


def disj(parts: Sequence[Formula], empty: Optional[Formula] = None) -> Formula:
    """Left-nested tensor disjunction."""
    if not parts:
        if empty is None:
            raise ValueError("empty disjunction needs an explicit neutral formula")
        return empty
    return reduce(Or, parts)


def gdisj(parts: Sequence[Formula], empty: Optional[Formula] = None) -> Formula:
    """Left-nested global disjunction."""
    if not parts:
        if empty is None:
            raise ValueError("empty disjunction needs an explicit neutral formula")
        return empty
    return reduce(GOr, parts)


def vector_literal(xs: Sequence[str], values: Sequence[Value]) -> Formula:
    """X=x for a tuple of variables: a conjunction of literals."""
    return conj([Lit(var, value) for var, value in zip(xs, values)])


def pr(arg: Formula, given: Optional[Formula] = None) -> Prob:
    return Prob(arg, given)


def at_least(arg: Formula, bound) -> EvalAtom:
    return EvalAtom(Prob(arg), ">=", Fraction(bound))
