"""
Exact linear inequalities over the probability simplex and their unions.

A point is a tuple of Fractions indexed by the canonical state enumeration.
The simplex constraints (entries >= 0, sum 1) are never stored as
inequalities; member() checks them.
"""

import itertools
import math
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple

from causal_multiteams.errors import DimensionMismatchError, ZeroCoefficientError
from causal_multiteams.syntax.ast import compare

Point = Tuple[Fraction, ...]

INEQ_COMPARATORS = ("<=", ">=", "<", ">")
_FLIP = {">=": "<", "<=": ">", ">": "<=", "<": ">="}


class IneqClass(IntEnum):
    MONIC = 1
    SIGNED_MONIC = 2
    SIGNED_BINARY = 3
    GENERAL = 4

    @classmethod
    def parse(cls, name: str) -> "IneqClass":
        try:
            return cls[name.strip().upper().replace("-", "_")]
        except KeyError:
            raise ValueError(f"unknown inequality class {name!r}")

    @property
    def label(self) -> str:
        return self.name.lower().replace("_", "-")


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class LinIneq:
    """a . eps cmp b, kept in canonical form by make()."""

    coeffs: Tuple[Fraction, ...]
    cmp: str
    bound: Fraction

    @classmethod
    def make(cls, coeffs: Sequence, cmp: str, bound) -> "LinIneq":
        """Clear coefficient denominators and divide by their gcd (positive scale only)."""
        if cmp not in INEQ_COMPARATORS:
            raise ValueError(f"inequality comparator must be one of {INEQ_COMPARATORS}, got {cmp!r}")
        coeffs = [Fraction(c) for c in coeffs]
        bound = Fraction(bound)
        if any(coeffs):
            scale = Fraction(reduce(_lcm, (c.denominator for c in coeffs), 1))
            ints = [int(c * scale) for c in coeffs]
            divisor = reduce(math.gcd, (abs(i) for i in ints if i), 0)
            scale /= divisor
            coeffs = [c * scale for c in coeffs]
            bound *= scale
        return cls(tuple(coeffs), cmp, bound)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def lhs(self, point: Point) -> Fraction:
        return sum((a * p for a, p in zip(self.coeffs, point)), Fraction(0))

    def holds(self, point: Point) -> bool:
        return compare(self.lhs(point), self.cmp, self.bound)

    def negated(self) -> "LinIneq":
        return LinIneq(self.coeffs, _FLIP[self.cmp], self.bound)

    def __str__(self) -> str:
        terms = []
        for i, a in enumerate(self.coeffs):
            if a:
                terms.append(f"{a}*e{i + 1}")
        lhs = " + ".join(terms) if terms else "0"
        return f"{lhs} {self.cmp} {self.bound}"


def classify_ineq(e: LinIneq) -> IneqClass:
    values = set(e.coeffs)
    if values <= {0, 1}:
        return IneqClass.MONIC
    if values <= {0, 1, -1}:
        return IneqClass.SIGNED_MONIC
    positives = {a for a in values if a > 0}
    negatives = {a for a in values if a < 0}
    if len(positives) <= 1 and len(negatives) <= 1:
        return IneqClass.SIGNED_BINARY
    return IneqClass.GENERAL


def eliminate_variable(e: LinIneq, idx: int) -> LinIneq:
    """Substitute eps_idx = 1 - sum of the others; idx is 0-based."""
    pivot = e.coeffs[idx]
    if pivot == 0:
        raise ZeroCoefficientError(f"coefficient {idx} is zero, nothing to eliminate")
    coeffs = [0 if m == idx else a - pivot for m, a in enumerate(e.coeffs)]
    return LinIneq.make(coeffs, e.cmp, e.bound - pivot)


@dataclass(frozen=True)
class IneqSystem:
    """Conjunction of inequalities; no inequalities means the whole simplex."""

    n: int
    ineqs: Tuple[LinIneq, ...] = ()

    def __post_init__(self):
        for e in self.ineqs:
            if e.n != self.n:
                raise DimensionMismatchError(f"inequality over {e.n} states in a system over {self.n}")

    def holds(self, point: Point) -> bool:
        return all(e.holds(point) for e in self.ineqs)

    @property
    def is_whole(self) -> bool:
        return not self.ineqs


@dataclass(frozen=True)
class ProbabilitySet:
    """Union of inequality systems inside the simplex; no systems means empty."""

    n: int
    systems: Tuple[IneqSystem, ...] = ()

    def __post_init__(self):
        for system in self.systems:
            if system.n != self.n:
                raise DimensionMismatchError(f"system over {system.n} states in a set over {self.n}")

    @classmethod
    def whole(cls, n: int) -> "ProbabilitySet":
        return cls(n, (IneqSystem(n),))

    @classmethod
    def empty(cls, n: int) -> "ProbabilitySet":
        return cls(n, ())

    @classmethod
    def of(cls, *ineqs: LinIneq) -> "ProbabilitySet":
        """Single-system set."""
        if not ineqs:
            raise ValueError("use ProbabilitySet.whole(n) for the unconstrained set")
        return cls(ineqs[0].n, (IneqSystem(ineqs[0].n, tuple(ineqs)),))

    def inequalities(self) -> Iterable[LinIneq]:
        return (e for system in self.systems for e in system.ineqs)


def in_simplex(point: Point) -> bool:
    return all(p >= 0 for p in point) and sum(point, Fraction(0)) == 1


def member(point: Sequence, s: ProbabilitySet) -> bool:
    point = tuple(Fraction(p) for p in point)
    if len(point) != s.n:
        raise DimensionMismatchError(f"point of length {len(point)} against a set over {s.n} states")
    if not in_simplex(point):
        return False
    return any(system.holds(point) for system in s.systems)


def _check_dims(*sets: ProbabilitySet) -> int:
    dims = {s.n for s in sets}
    if len(dims) != 1:
        raise DimensionMismatchError(f"sets over different dimensions: {sorted(dims)}")
    return dims.pop()


def union(*sets: ProbabilitySet) -> ProbabilitySet:
    n = _check_dims(*sets)
    return ProbabilitySet(n, tuple(system for s in sets for system in s.systems))


def intersect(*sets: ProbabilitySet) -> ProbabilitySet:
    n = _check_dims(*sets)
    result = sets[0]
    for other in sets[1:]:
        result = ProbabilitySet(n, tuple(
            IneqSystem(n, a.ineqs + b.ineqs)
            for a, b in itertools.product(result.systems, other.systems)
        ))
    return result


def complement(s: ProbabilitySet) -> ProbabilitySet:
    """Complement inside the simplex; each system turns into a union of flipped inequalities."""
    parts = [ProbabilitySet(s.n, tuple(IneqSystem(s.n, (e.negated(),)) for e in system.ineqs))
             for system in s.systems]
    if not parts:
        return ProbabilitySet.whole(s.n)
    return intersect(*parts)


def set_algebra(op: str, *args: ProbabilitySet) -> ProbabilitySet:
    if op == "complement":
        if len(args) != 1:
            raise ValueError("complement takes exactly one set")
        return complement(args[0])
    if op == "union":
        return union(*args)
    if op == "intersect":
        return intersect(*args)
    raise ValueError(f"unknown set operation {op!r}")


def classify_set(s: ProbabilitySet) -> IneqClass:
    return max((classify_ineq(e) for e in s.inequalities()), default=IneqClass.MONIC)


def simplex_grid(n: int, max_denominator: int) -> List[Point]:
    """Every point of the simplex whose entries share a denominator <= N."""
    seen = set()
    points: List[Point] = []
    for d in range(1, max_denominator + 1):
        for cuts in itertools.combinations_with_replacement(range(d + 1), n - 1):
            bounds = (0,) + cuts + (d,)
            point = tuple(Fraction(bounds[i + 1] - bounds[i], d) for i in range(n))
            if point not in seen:
                seen.add(point)
                points.append(point)
    return points


def first_disagreement(a: ProbabilitySet, b: ProbabilitySet, max_denominator: int) -> Optional[Point]:
    n = _check_dims(a, b)
    for point in simplex_grid(n, max_denominator):
        if member(point, a) != member(point, b):
            return point
    return None


def points_agree(a: ProbabilitySet, b: ProbabilitySet, max_denominator: int) -> bool:
    return first_disagreement(a, b, max_denominator) is None


def prune(s: ProbabilitySet, max_denominator: int) -> ProbabilitySet:
    """
    Heuristic simplification on the N-grid: drop systems with no grid point
    and systems whose grid points another kept system already covers. The
    result agrees with s on the grid, not necessarily everywhere.
    """
    grid = simplex_grid(s.n, max_denominator)
    covered = [frozenset(i for i, p in enumerate(grid) if system.holds(p)) for system in s.systems]
    kept: List[int] = []
    for i, points in enumerate(covered):
        if not points:
            continue
        if any(points <= covered[j] for j in kept):
            continue
        kept = [j for j in kept if not covered[j] <= points]
        kept.append(i)
    return ProbabilitySet(s.n, tuple(s.systems[i] for i in sorted(kept)))
