"""Canonical text for formulas; parse(to_text(f)) rebuilds f exactly."""

from fractions import Fraction

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
)

_BINARY_TOKENS = {And: "and", Or: "or", GOr: "gor"}


def format_number(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _prob(term: Prob) -> str:
    if term.given is None:
        return f"Pr({_nested(term.arg)})"
    return f"Pr({_nested(term.arg)} | {_nested(term.given)})"


def _nested(f: Formula) -> str:
    """Text of f as an operand: binary nodes are parenthesised."""
    if isinstance(f, Lit):
        return f"{f.var}{'=' if f.positive else '!='}{f.value}"
    if isinstance(f, (And, Or, GOr)):
        return f"({_nested(f.left)} {_BINARY_TOKENS[type(f)]} {_nested(f.right)})"
    if isinstance(f, Implies):
        return f"({_nested(f.antecedent)} => {_nested(f.consequent)})"
    if isinstance(f, Counterfactual):
        prefix = "[" + ",".join(f"{var}:={value}" for var, value in f.assignment) + "]"
        body = _nested(f.body)
        if isinstance(f.body, Counterfactual):
            return f"{prefix}({body})"
        if body.startswith("("):
            return prefix + body
        return f"{prefix} {body}"
    if isinstance(f, EvalAtom):
        return f"{_prob(f.term)} {f.op} {format_number(f.bound)}"
    if isinstance(f, CompAtom):
        return f"{_prob(f.left)} {f.op} {_prob(f.right)}"
    if isinstance(f, Constant):
        return "top" if f.truth else "bot"
    if isinstance(f, MacroAtom):
        xs, ys = ",".join(f.xs), ",".join(f.ys)
        if f.kind == "mi" and len(f.xs) == 1 and len(f.ys) == 1:
            return f"{xs} ~ {ys}"
        if f.zs:
            return f"{f.kind}({xs};{ys}|{','.join(f.zs)})"
        return f"{f.kind}({xs};{ys})"
    raise TypeError(f"cannot print {type(f).__name__}")


def to_text(f: Formula) -> str:
    """Canonical text; the outermost parentheses of a binary root are dropped."""
    text = _nested(f)
    if isinstance(f, (And, Or, GOr, Implies)):
        return text[1:-1]
    return text
