"""
Formula grammar (pyparsing) and binding against a signature.

Precedence, tightest first: counterfactual prefix `[X:=1,...]`, `and`,
`or` / `gor` (left associative, same level), `=>` (right associative).
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional

import pyparsing as pp

from causal_multiteams.core.signature import Signature
from causal_multiteams.errors import BindingError, FormulaSyntaxError, TwoLevelError
from causal_multiteams.syntax.ast import (
    And,
    CompAtom,
    Constant,
    Counterfactual,
    EvalAtom,
    Formula,
    GOr,
    Implies,
    Lit,
    MacroAtom,
    Or,
    Prob,
    bottom,
    top,
    walk,
)

pp.ParserElement.enable_packrat()

logger = logging.getLogger(__name__)

KEYWORDS = ("and", "or", "gor", "Pr", "top", "bot", "dep", "indep", "mi")


class _Intervention:
    """Parsed `[X:=x,...]` prefix; a plain tuple would be flattened by pyparsing."""

    def __init__(self, pairs):
        self.pairs = tuple(pairs)


def _to_number(s, loc, toks):
    text = toks[0].replace(" ", "")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise FormulaSyntaxError(f"zero denominator in {text}", s, pp.lineno(loc, s), pp.col(loc, s))


def _literal(toks):
    var, op, value = toks
    return Lit(var, value, op == "=")


def _prob(toks):
    return Prob(toks[0], toks[1] if len(toks) > 1 else None)


def _prob_atom(toks):
    left, op, right = toks
    if isinstance(right, Prob):
        return CompAtom(left, op, right)
    return EvalAtom(left, op, right)


def _macro(kind):
    def action(toks):
        groups = [tuple(group) for group in toks]
        zs = groups[2] if len(groups) > 2 else ()
        return MacroAtom(kind, groups[0], groups[1], zs)
    return action


def _counterfactual(toks):
    prefix, body = toks[0]
    return Counterfactual(prefix.pairs, body)


def _fold_left(toks):
    items = toks[0]
    node = items[0]
    for i in range(1, len(items), 2):
        node = {"and": And, "or": Or, "gor": GOr}[items[i]](node, items[i + 1])
    return node


def _fold_right(toks):
    items = toks[0]
    node = items[-1]
    for i in range(len(items) - 3, -1, -2):
        node = Implies(items[i], node)
    return node


def _build_grammar() -> pp.ParserElement:
    keyword = pp.MatchFirst([pp.Keyword(k) for k in KEYWORDS])
    ident = ~keyword + pp.Word(pp.alphas + "_", pp.alphanums + "_")
    integer = pp.Regex(r"-?\d+").set_parse_action(lambda t: int(t[0]))
    value = integer | pp.Word(pp.alphas + "_", pp.alphanums + "_")
    number = pp.Regex(r"\d+\s*/\s*\d+|\d*\.\d+|\d+").set_parse_action(_to_number)

    lpar, rpar, semi, bar = map(pp.Suppress, "();|")
    formula = pp.Forward()

    literal = (ident + (pp.Literal("!=") | pp.Literal("=")) + value).set_parse_action(_literal)

    item = pp.Group(ident + pp.Suppress(":=") + value)
    intervention = (pp.Suppress("[") + pp.DelimitedList(item) + pp.Suppress("]")).set_parse_action(
        lambda toks: _Intervention((var, val) for var, val in toks)
    )

    prob = (pp.Suppress(pp.Keyword("Pr")) + lpar + formula + pp.Optional(bar + formula) + rpar)
    prob.set_parse_action(_prob)
    cmp = pp.one_of(">= > <= < == !=")
    prob_atom = (prob + cmp + (prob | number)).set_parse_action(_prob_atom)

    varlist = pp.Group(pp.DelimitedList(ident))
    dep_atom = (pp.Suppress(pp.Keyword("dep")) + lpar + varlist + semi + varlist + rpar).set_parse_action(_macro("dep"))
    mi_atom = (
        (pp.Suppress(pp.Keyword("mi")) + lpar + varlist + semi + varlist + rpar)
        | (pp.Group(ident) + pp.Suppress("~") + pp.Group(ident))
    ).set_parse_action(_macro("mi"))
    indep_atom = (
        pp.Suppress(pp.Keyword("indep")) + lpar + varlist + semi + varlist + pp.Optional(bar + varlist) + rpar
    ).set_parse_action(_macro("indep"))
    constant = (pp.Keyword("top") | pp.Keyword("bot")).set_parse_action(lambda t: Constant(t[0] == "top"))

    operand = prob_atom | dep_atom | indep_atom | mi_atom | constant | literal

    formula <<= pp.infix_notation(operand, [
        (intervention, 1, pp.OpAssoc.RIGHT, _counterfactual),
        (pp.Keyword("and"), 2, pp.OpAssoc.LEFT, _fold_left),
        (pp.Keyword("or") | pp.Keyword("gor"), 2, pp.OpAssoc.LEFT, _fold_left),
        (pp.Literal("=>"), 2, pp.OpAssoc.RIGHT, _fold_right),
    ])
    return formula


_GRAMMAR = _build_grammar()


def parse_raw(text: str) -> Formula:
    """Parse without binding; macros and top/bot are left in place."""
    try:
        result = _GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise FormulaSyntaxError(f"syntax error: {e.msg}", text, e.lineno, e.col)
    return result[0]


def infer_signature(raw: Formula) -> Signature:
    """Variables and values in order of first appearance."""
    ranges: Dict[str, List] = {}
    for node in walk(raw):
        if isinstance(node, Lit):
            values = ranges.setdefault(node.var, [])
            if node.value not in values:
                values.append(node.value)
        elif isinstance(node, Counterfactual):
            for var, value in node.assignment:
                values = ranges.setdefault(var, [])
                if value not in values:
                    values.append(value)
        elif isinstance(node, MacroAtom):
            for var in node.xs + node.ys + node.zs:
                ranges.setdefault(var, [])
    empty = [var for var, values in ranges.items() if not values]
    if empty:
        raise BindingError(f"cannot infer the range of {empty}; pass a signature")
    if not ranges:
        raise BindingError("formula mentions no variable; pass a signature")
    return Signature.from_mapping(list(ranges), ranges)


def bind(f: Formula, sig: Signature, co_only: bool = False) -> Formula:
    """
    Check f against sig and enforce the two-level syntax.

    Literal and intervention values are coerced into the declared ranges,
    `top`/`bot` become derived formulas and macros are expanded.
    """
    if isinstance(f, Lit):
        if not sig.has_variable(f.var):
            raise BindingError(f"unknown variable {f.var!r}")
        return Lit(f.var, sig.coerce(f.var, f.value), f.positive)
    if isinstance(f, Constant):
        return top(sig) if f.truth else bottom(sig)
    if isinstance(f, MacroAtom):
        if co_only:
            raise TwoLevelError(f"{f.kind} atom inside a CO position")
        from causal_multiteams.atoms.macros import expand_atom
        return expand_atom(f.kind, f.xs, f.ys, f.zs or None, sig)
    if isinstance(f, And):
        return And(bind(f.left, sig, co_only), bind(f.right, sig, co_only))
    if isinstance(f, Or):
        return Or(bind(f.left, sig, True), bind(f.right, sig, True))
    if isinstance(f, GOr):
        if co_only:
            raise TwoLevelError("global disjunction inside a CO position")
        return GOr(bind(f.left, sig), bind(f.right, sig))
    if isinstance(f, Implies):
        return Implies(bind(f.antecedent, sig, True), bind(f.consequent, sig, co_only))
    if isinstance(f, Counterfactual):
        pairs = []
        for var, value in f.assignment:
            if not sig.has_variable(var):
                raise BindingError(f"unknown variable {var!r} in intervention")
            pairs.append((var, sig.coerce(var, value)))
        return Counterfactual(tuple(pairs), bind(f.body, sig, co_only))
    if isinstance(f, (EvalAtom, CompAtom)):
        if co_only:
            raise TwoLevelError("probability atom inside a CO position")
        if isinstance(f, EvalAtom):
            if not 0 <= f.bound <= 1:
                raise BindingError(f"probability bound {f.bound} is outside [0, 1]")
            return EvalAtom(_bind_prob(f.term, sig), f.op, f.bound)
        return CompAtom(_bind_prob(f.left, sig), f.op, _bind_prob(f.right, sig))
    raise TypeError(f"cannot bind {type(f).__name__}")


def _bind_prob(term: Prob, sig: Signature) -> Prob:
    given = None if term.given is None else bind(term.given, sig, True)
    return Prob(bind(term.arg, sig, True), given)


def parse(text: str, sig: Optional[Signature] = None) -> Formula:
    """Parse and bind; without a signature one is inferred from the text."""
    raw = parse_raw(text)
    if sig is None:
        sig = infer_signature(raw)
    return bind(raw, sig)


def parse_co(text: str, sig: Optional[Signature] = None) -> Formula:
    raw = parse_raw(text)
    if sig is None:
        sig = infer_signature(raw)
    return bind(raw, sig, co_only=True)
