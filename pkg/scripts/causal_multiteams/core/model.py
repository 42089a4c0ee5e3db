"""
Causal multiteams: a multiset of assignments plus a function component.

Multiplicities stand in for the Key column of a multiteam; they are the only
thing any formula can observe about duplicated rows.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Tuple

from causal_multiteams.core.laws import (
    FunctionComponent,
    Intervention,
    apply_intervention,
    normalize_intervention,
)
from causal_multiteams.core.signature import Assignment, Signature
from causal_multiteams.errors import (
    DimensionMismatchError,
    EmptyMultiteamError,
    InconsistentInterventionError,
    ModelValidationError,
)
from causal_multiteams.semantics.rows import row_satisfies

logger = logging.getLogger(__name__)

ProbabilityVector = Tuple[Fraction, ...]


class Multiteam:
    """Assignment -> positive count. Immutable and hashable."""

    __slots__ = ("_counts", "_hash")

    def __init__(self, counts: Mapping[Assignment, int] = None):
        cleaned = Counter()
        for row, count in (counts or {}).items():
            if count < 0:
                raise ModelValidationError(f"negative count {count} for {row!r}")
            if count:
                cleaned[tuple(row)] += count
        self._counts = cleaned
        self._hash = None

    @classmethod
    def of_rows(cls, rows: Iterable[Assignment]) -> "Multiteam":
        return cls(Counter(tuple(r) for r in rows))

    def count(self, row: Assignment) -> int:
        return self._counts.get(row, 0)

    def items(self) -> Iterator[Tuple[Assignment, int]]:
        return iter(self._counts.items())

    @property
    def support(self) -> FrozenSet[Assignment]:
        return frozenset(self._counts)

    @property
    def size(self) -> int:
        """|T^-| counted with multiplicity."""
        return sum(self._counts.values())

    @property
    def is_empty(self) -> bool:
        return not self._counts

    def scaled(self, k: int) -> "Multiteam":
        return Multiteam({row: c * k for row, c in self._counts.items()})

    def as_counter(self) -> Counter:
        return Counter(self._counts)

    def __eq__(self, other) -> bool:
        return isinstance(other, Multiteam) and self._counts == other._counts

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._counts.items()))
        return self._hash

    def __repr__(self) -> str:
        inner = ", ".join(f"{row}: {c}" for row, c in sorted(self._counts.items(), key=repr))
        return f"Multiteam({{{inner}}})"


@dataclass(frozen=True)
class CausalMultiteam:
    signature: Signature
    multiteam: Multiteam
    laws: FunctionComponent

    @property
    def size(self) -> int:
        return self.multiteam.size

    @property
    def is_empty(self) -> bool:
        return self.multiteam.is_empty

    def rows(self) -> List[Tuple[Assignment, int]]:
        """(row, count) pairs in canonical state order."""
        return sorted(self.multiteam.items(), key=lambda item: self.signature.index_of(item[0]))


def validate(t: CausalMultiteam) -> List[str]:
    """Return every violated invariant; an empty list means the model is valid."""
    sig = t.signature
    violations: List[str] = []

    for row, _ in t.multiteam.items():
        if len(row) != len(sig.variables):
            violations.append(f"row {row!r} does not assign every variable")
            continue
        for var, value in zip(sig.variables, row):
            if value not in sig.range_of(var):
                violations.append(f"row {row!r}: {var}={value!r} outside Ran({var})")

    for law in t.laws.laws:
        if law.arguments != sig.others(law.variable):
            violations.append(f"F_{law.variable} is not stored over W_{law.variable}")
            continue
        if law.is_constant:
            violations.append(f"F_{law.variable} is constant")
        bad = [out for out in law.outputs if out not in sig.range_of(law.variable)]
        if bad:
            violations.append(f"F_{law.variable} outputs {bad[0]!r} outside Ran({law.variable})")

    if not t.laws.is_acyclic:
        violations.append("parent graph has a cycle")

    if not violations:
        for row, _ in t.multiteam.items():
            for law in t.laws.laws:
                expected = law.evaluate(sig, row)
                actual = sig.value(row, law.variable)
                if expected != actual:
                    violations.append(
                        f"row {sig.as_dict(row)} incompatible at {law.variable}: "
                        f"F_{law.variable} gives {expected!r}"
                    )
    return violations


def ensure_valid(t: CausalMultiteam) -> CausalMultiteam:
    violations = validate(t)
    if violations:
        raise ModelValidationError("invalid causal multiteam", violations)
    return t


def observe(t: CausalMultiteam, alpha) -> CausalMultiteam:
    """T^alpha: keep the rows whose singleton satisfies alpha."""
    kept = {
        row: count for row, count in t.multiteam.items()
        if row_satisfies(t.signature, t.laws, row, alpha)
    }
    return CausalMultiteam(t.signature, Multiteam(kept), t.laws)


def intervene(t: CausalMultiteam, assignment: Intervention) -> CausalMultiteam:
    """T_{X=x}: counts of coinciding images add, so the size is preserved."""
    fixed = normalize_intervention(t.signature, assignment)
    if fixed is None:
        raise InconsistentInterventionError(f"inconsistent intervention {list(assignment)}")
    images: Counter = Counter()
    for row, count in t.multiteam.items():
        images[apply_intervention(t.signature, t.laws, row, fixed)] += count
    return CausalMultiteam(t.signature, Multiteam(images), t.laws.without(fixed))


def probability(t: CausalMultiteam, alpha) -> Fraction:
    """P_T(alpha) as an exact rational."""
    if t.is_empty:
        raise EmptyMultiteamError("P_T is undefined on the empty multiteam")
    return Fraction(observe(t, alpha).size, t.size)


def probability_vector(t: CausalMultiteam) -> ProbabilityVector:
    if t.is_empty:
        raise EmptyMultiteamError("the empty multiteam has no probability vector")
    total = t.size
    return tuple(Fraction(t.multiteam.count(state), total) for state in t.signature.states)


def is_rescaling(s: CausalMultiteam, t: CausalMultiteam) -> bool:
    if s.signature != t.signature:
        raise DimensionMismatchError("rescaling is only defined within one signature")
    if s.laws != t.laws:
        return False
    if s.is_empty or t.is_empty:
        return s.is_empty and t.is_empty
    return probability_vector(s) == probability_vector(t)


def support(t: CausalMultiteam) -> CausalMultiteam:
    """Team(T): the set of rows, each kept once."""
    return CausalMultiteam(t.signature, Multiteam({row: 1 for row in t.multiteam.support}), t.laws)


def rescale(t: CausalMultiteam, k: int) -> CausalMultiteam:
    if k < 1:
        raise ValueError("rescaling factor must be at least 1")
    return CausalMultiteam(t.signature, t.multiteam.scaled(k), t.laws)


def with_laws(t: CausalMultiteam, laws: FunctionComponent) -> CausalMultiteam:
    """Swap the function component; the result must still be compatible."""
    return ensure_valid(CausalMultiteam(t.signature, t.multiteam, laws))


def is_submultiteam(s: CausalMultiteam, t: CausalMultiteam) -> bool:
    if s.signature != t.signature or s.laws != t.laws:
        return False
    return all(count <= t.multiteam.count(row) for row, count in s.multiteam.items())


def from_counts(sig: Signature, counts: Mapping[Tuple, int], laws: FunctionComponent = None) -> CausalMultiteam:
    """Convenience constructor from row tuples (in signature order)."""
    return CausalMultiteam(sig, Multiteam(dict(counts)), laws or FunctionComponent.empty())
