"""
Seeded random corpora: CO formulas, fragment formulas and inequality systems.

Every generator takes a random.Random so a corpus is fixed by its seed.
"""

import random
from fractions import Fraction
from typing import List, Optional

from causal_multiteams.core.signature import Signature
from causal_multiteams.errors import NotSynthesizableError
from causal_multiteams.geometry.inequalities import IneqClass, IneqSystem, LinIneq, ProbabilitySet
from causal_multiteams.geometry.synth import synth_ineq
from causal_multiteams.syntax.ast import (
    COMPARATORS,
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
)
from causal_multiteams.syntax.fragments import FragmentLabel

BOUNDS = tuple(Fraction(p, q) for p, q in ((0, 1), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (1, 1)))


class FormulaSampler:
    """Random formulas within a fragment over a fixed signature."""

    def __init__(self, sig: Signature, rng: random.Random, fragment: FragmentLabel = FragmentLabel.PCO):
        self.sig = sig
        self.rng = rng
        self.supset = fragment in (FragmentLabel.P_SUPSET, FragmentLabel.PCO)
        self.boxright = fragment in (FragmentLabel.P_BOXRIGHT, FragmentLabel.PCO)
        self.comparisons = fragment != FragmentLabel.P_MINUS

    def literal(self) -> Lit:
        var = self.rng.choice(self.sig.variables)
        return Lit(var, self.rng.choice(self.sig.range_of(var)), self.rng.random() < 0.7)

    def assignment(self):
        count = self.rng.randint(1, min(2, len(self.sig.variables)))
        variables = self.rng.sample(list(self.sig.variables), count)
        pairs = [(var, self.rng.choice(self.sig.range_of(var))) for var in variables]
        if self.rng.random() < 0.1:
            var = pairs[0][0]
            pairs.append((var, self.rng.choice(self.sig.range_of(var))))
        return tuple(pairs)

    def co(self, depth: int) -> Formula:
        if depth <= 0:
            return self.literal()
        kinds = ["lit", "and", "or"]
        if self.supset:
            kinds.append("implies")
        if self.boxright:
            kinds.append("cf")
        kind = self.rng.choice(kinds)
        if kind == "lit":
            return self.literal()
        if kind == "and":
            return And(self.co(depth - 1), self.co(depth - 1))
        if kind == "or":
            return Or(self.co(depth - 1), self.co(depth - 1))
        if kind == "implies":
            return Implies(self.co(depth - 1), self.co(depth - 1))
        return Counterfactual(self.assignment(), self.co(depth - 1))

    def prob(self, depth: int, given: Optional[Formula] = None) -> Prob:
        return Prob(self.co(depth), given)

    def atom(self, depth: int) -> Formula:
        arg_depth = max(0, depth - 1)
        given = None
        if self.supset and self.rng.random() < 0.2:
            given = self.co(arg_depth)
        op = self.rng.choice(COMPARATORS)
        if self.comparisons and self.rng.random() < 0.4:
            return CompAtom(self.prob(arg_depth, given), op, self.prob(arg_depth, given))
        return EvalAtom(self.prob(arg_depth, given), op, self.rng.choice(BOUNDS))

    def pco(self, depth: int) -> Formula:
        if depth <= 0:
            return self.literal() if self.rng.random() < 0.2 else self.atom(0)
        kinds = ["atom", "and", "gor"]
        if self.supset:
            kinds.append("implies")
        if self.boxright:
            kinds.append("cf")
        kind = self.rng.choice(kinds)
        if kind == "atom":
            return self.atom(depth)
        if kind == "and":
            return And(self.pco(depth - 1), self.pco(depth - 1))
        if kind == "gor":
            return GOr(self.pco(depth - 1), self.pco(depth - 1))
        if kind == "implies":
            return Implies(self.co(depth - 1), self.pco(depth - 1))
        return Counterfactual(self.assignment(), self.pco(depth - 1))


def random_co_formulas(sig: Signature, count: int, seed: int, depth: int = 4) -> List[Formula]:
    sampler = FormulaSampler(sig, random.Random(seed))
    return [sampler.co(sampler.rng.randint(0, depth)) for _ in range(count)]


def random_formulas(sig: Signature, fragment: FragmentLabel, count: int, seed: int,
                    depth: int = 3) -> List[Formula]:
    sampler = FormulaSampler(sig, random.Random(seed), fragment)
    return [sampler.pco(sampler.rng.randint(0, depth)) for _ in range(count)]


def _coefficients(rng: random.Random, n: int, klass: IneqClass, max_coeff: int) -> List[int]:
    if klass == IneqClass.MONIC:
        values = [0, 1]
    elif klass == IneqClass.SIGNED_MONIC:
        values = [0, 1, -1]
    else:
        values = [0, rng.randint(1, max_coeff), -rng.randint(1, max_coeff)]
    coeffs = [rng.choice(values) for _ in range(n)]
    if not any(coeffs):
        coeffs[rng.randrange(n)] = values[1]
    return coeffs


def random_ineq(rng: random.Random, n: int, klass: IneqClass, max_coeff: int = 5,
                max_denominator: int = 6, attempts: int = 200) -> LinIneq:
    """An inequality of class <= klass that synth can handle."""
    states = Signature.single("S", n)
    for _ in range(attempts):
        coeffs = _coefficients(rng, n, klass, max_coeff)
        if klass != IneqClass.MONIC and rng.random() < 0.5:
            bound = Fraction(0)
        else:
            q = rng.randint(1, max_denominator)
            bound = Fraction(rng.randint(-q, 2 * q), q)
        e = LinIneq.make(coeffs, rng.choice(("<=", ">=", "<", ">")), bound)
        try:
            synth_ineq(e, states)
        except NotSynthesizableError:
            continue
        return e
    raise NotSynthesizableError(f"no synthesizable {klass.label} inequality after {attempts} attempts")


def random_system_set(rng: random.Random, n: int, klass: IneqClass, max_systems: int = 2,
                      max_ineqs: int = 2) -> ProbabilitySet:
    systems = []
    for _ in range(rng.randint(1, max_systems)):
        ineqs = tuple(random_ineq(rng, n, klass) for _ in range(rng.randint(1, max_ineqs)))
        systems.append(IneqSystem(n, ineqs))
    return ProbabilitySet(n, tuple(systems))


def random_sets(n: int, klass: IneqClass, count: int, seed: int) -> List[ProbabilitySet]:
    rng = random.Random(seed)
    return [random_system_set(rng, n, klass) for _ in range(count)]
