"""Signatures, assignments and the canonical state enumeration."""

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from causal_multiteams.errors import BindingError, SignatureError

Value = Union[int, str]
# An assignment is a tuple of values aligned with Signature.variables.
Assignment = Tuple[Value, ...]


@dataclass(frozen=True)
class Signature:
    """Ordered variables with ordered finite ranges.

    The variable order fixes the tuple W and the value order inside each
    range fixes the lexicographic enumeration s_1..s_n of all assignments.
    """

    variables: Tuple[str, ...]
    ranges: Tuple[Tuple[Value, ...], ...]

    def __post_init__(self):
        if len(self.variables) != len(self.ranges):
            raise SignatureError("every variable needs exactly one range")
        if len(set(self.variables)) != len(self.variables):
            raise SignatureError(f"duplicate variable names in {list(self.variables)}")
        for name, values in zip(self.variables, self.ranges):
            if not values:
                raise SignatureError(f"range of {name} is empty")
            if len(set(values)) != len(values):
                raise SignatureError(f"range of {name} repeats a value")

    @classmethod
    def from_mapping(cls, order: Sequence[str], ranges: Mapping[str, Sequence[Value]]) -> "Signature":
        missing = [v for v in order if v not in ranges]
        if missing:
            raise SignatureError(f"no range given for {missing}")
        extra = [v for v in ranges if v not in order]
        if extra:
            raise SignatureError(f"ranges given for undeclared variables {extra}")
        return cls(tuple(order), tuple(tuple(ranges[v]) for v in order))

    @classmethod
    def single(cls, name: str, size: int) -> "Signature":
        """One variable with values 1..size, so states are indexed like epsilons."""
        return cls((name,), (tuple(range(1, size + 1)),))

    @cached_property
    def _positions(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.variables)}

    def position(self, var: str) -> int:
        try:
            return self._positions[var]
        except KeyError:
            raise BindingError(f"unknown variable {var!r}")

    def range_of(self, var: str) -> Tuple[Value, ...]:
        return self.ranges[self.position(var)]

    def has_variable(self, var: str) -> bool:
        return var in self._positions

    def coerce(self, var: str, raw: Value) -> Value:
        """Match a parsed value against Ran(var), tolerating int/str spelling."""
        values = self.range_of(var)
        if raw in values:
            return raw
        for candidate in values:
            if str(candidate) == str(raw):
                return candidate
        raise BindingError(f"value {raw!r} is not in the range of {var}")

    def others(self, var: str) -> Tuple[str, ...]:
        """W_V: every variable except var, in signature order."""
        return tuple(v for v in self.variables if v != var)

    @cached_property
    def states(self) -> Tuple[Assignment, ...]:
        return tuple(itertools.product(*self.ranges))

    @cached_property
    def _state_index(self) -> Dict[Assignment, int]:
        return {state: i for i, state in enumerate(self.states)}

    @property
    def size(self) -> int:
        """n = |B_sigma|."""
        total = 1
        for values in self.ranges:
            total *= len(values)
        return total

    def index_of(self, row: Assignment) -> int:
        try:
            return self._state_index[row]
        except KeyError:
            raise BindingError(f"{row!r} is not an assignment of this signature")

    def value(self, row: Assignment, var: str) -> Value:
        return row[self.position(var)]

    def project(self, row: Assignment, variables: Iterable[str]) -> Tuple[Value, ...]:
        return tuple(row[self.position(v)] for v in variables)

    def as_dict(self, row: Assignment) -> Dict[str, Value]:
        return dict(zip(self.variables, row))

    def row(self, values: Mapping[str, Value]) -> Assignment:
        """Build an assignment from a full variable -> value mapping."""
        missing = [v for v in self.variables if v not in values]
        if missing:
            raise BindingError(f"assignment misses {missing}")
        return tuple(self.coerce(v, values[v]) for v in self.variables)

    def to_dict(self) -> Dict[str, object]:
        return {
            "order": list(self.variables),
            "ranges": {v: list(r) for v, r in zip(self.variables, self.ranges)},
        }


def enumerate_assignments(sig: Signature) -> List[Assignment]:
    """All assignments of sig in lexicographic (variable, value) order."""
    return list(sig.states)
