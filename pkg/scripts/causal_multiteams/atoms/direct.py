"""Counting definitions of the dependence-style atoms, independent of the formula layer."""

from collections import Counter, defaultdict
from fractions import Fraction
from typing import Dict, Optional, Sequence

from causal_multiteams.atoms.macros import CINDEP, DEP, INDEP, MI, value_tuples
from causal_multiteams.core.model import CausalMultiteam, Multiteam
from causal_multiteams.errors import BindingError


def _marginal(t: CausalMultiteam, variables: Sequence[str]) -> Dict:
    counts: Counter = Counter()
    for row, count in t.multiteam.items():
        counts[t.signature.project(row, variables)] += count
    return {key: Fraction(c, t.size) for key, c in counts.items()}


def _functional(t: CausalMultiteam, xs, ys) -> bool:
    seen = defaultdict(set)
    for row in t.multiteam.support:
        seen[t.signature.project(row, xs)].add(t.signature.project(row, ys))
    return all(len(values) == 1 for values in seen.values())


def _independent(t: CausalMultiteam, xs, ys) -> bool:
    if t.is_empty:
        return True
    joint = _marginal(t, tuple(xs) + tuple(ys))
    px, py = _marginal(t, xs), _marginal(t, ys)
    zero = Fraction(0)
    for x in value_tuples(t.signature, xs):
        for y in value_tuples(t.signature, ys):
            if joint.get(x + y, zero) != px.get(x, zero) * py.get(y, zero):
                return False
    return True


def _slice(t: CausalMultiteam, zs, z) -> CausalMultiteam:
    kept = {row: c for row, c in t.multiteam.items() if t.signature.project(row, zs) == z}
    return CausalMultiteam(t.signature, Multiteam(kept), t.laws)


def direct_check(kind: str, xs: Sequence[str], ys: Sequence[str],
                 zs: Optional[Sequence[str]], t: CausalMultiteam) -> bool:
    if kind == INDEP and zs:
        kind = CINDEP
    if t.is_empty:
        return True
    if kind == DEP:
        return _functional(t, xs, ys)
    if kind == MI:
        return _marginal(t, xs) == _marginal(t, ys)
    if kind == INDEP:
        return _independent(t, xs, ys)
    if kind == CINDEP:
        return all(_independent(_slice(t, zs, z), xs, ys)
                   for z in value_tuples(t.signature, zs))
    raise BindingError(f"unknown atom kind {kind!r}")
