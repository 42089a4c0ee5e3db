"""
Function components (structural equations) and row-level interventions.

A Law stores F_V over the maximal argument tuple W_V (all other variables in
signature order). Tables given over a shorter declared argument list are
extended at construction; arguments left out are dummies by construction.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from causal_multiteams.core.signature import Assignment, Signature, Value
from causal_multiteams.errors import (
    BindingError,
    InconsistentInterventionError,
    InvalidLawsError,
)

logger = logging.getLogger(__name__)

# An intervention X=x as written: (variable, value) pairs, duplicates allowed.
Intervention = Tuple[Tuple[str, Value], ...]


@dataclass(frozen=True)
class Law:
    """F_V as a total table over Ran(W_V), outputs in product order."""

    variable: str
    arguments: Tuple[str, ...]
    argument_ranges: Tuple[Tuple[Value, ...], ...]
    outputs: Tuple[Value, ...]

    @cached_property
    def _lookup(self) -> Dict[Tuple[Value, ...], Value]:
        inputs = itertools.product(*self.argument_ranges)
        return dict(zip(inputs, self.outputs))

    def inputs(self) -> List[Tuple[Value, ...]]:
        return list(itertools.product(*self.argument_ranges))

    def __call__(self, args: Tuple[Value, ...]) -> Value:
        return self._lookup[args]

    def evaluate(self, sig: Signature, row: Assignment) -> Value:
        return self._lookup[sig.project(row, self.arguments)]

    @property
    def is_constant(self) -> bool:
        return len(set(self.outputs)) <= 1

    @cached_property
    def parents(self) -> FrozenSet[str]:
        """Arguments whose value changes the output for some fixing of the rest."""
        found = set()
        for position, name in enumerate(self.arguments):
            groups: Dict[Tuple[Value, ...], set] = {}
            for args, out in self._lookup.items():
                rest = args[:position] + args[position + 1:]
                groups.setdefault(rest, set()).add(out)
            if any(len(outs) > 1 for outs in groups.values()):
                found.add(name)
        return frozenset(found)


def make_law(sig: Signature, variable: str, declared: Sequence[str],
             table: Mapping[Tuple[Value, ...], Value]) -> Law:
    """
    Build the maximal representative of F_V from a table over declared args.

    Args:
        sig: Signature the law lives in
        variable: The endogenous variable V
        declared: Declared argument list, a subset of W_V
        table: declared-argument tuple -> output value, total over their ranges

    Raises:
        InvalidLawsError: unknown/duplicate arguments, partial table, bad values
    """
    if not sig.has_variable(variable):
        raise InvalidLawsError(f"law for unknown variable {variable!r}")
    if variable in declared:
        raise InvalidLawsError(f"F_{variable} cannot take {variable} as an argument")
    if len(set(declared)) != len(declared):
        raise InvalidLawsError(f"F_{variable} repeats an argument")
    for name in declared:
        if not sig.has_variable(name):
            raise InvalidLawsError(f"F_{variable} uses unknown argument {name!r}")

    declared_ranges = [sig.range_of(name) for name in declared]
    for args in itertools.product(*declared_ranges):
        if args not in table:
            raise InvalidLawsError(f"F_{variable} is undefined on {dict(zip(declared, args))}")
        if table[args] not in sig.range_of(variable):
            raise InvalidLawsError(f"F_{variable} outputs {table[args]!r} outside Ran({variable})")

    arguments = sig.others(variable)
    ranges = tuple(sig.range_of(name) for name in arguments)
    picks = [arguments.index(name) for name in declared]
    outputs = tuple(
        table[tuple(args[i] for i in picks)]
        for args in itertools.product(*ranges)
    )
    return Law(variable, arguments, ranges, outputs)


@dataclass(frozen=True)
class FunctionComponent:
    """The laws of a causal multiteam, one per endogenous variable."""

    laws: Tuple[Law, ...] = ()

    @classmethod
    def build(cls, sig: Signature, laws: Iterable[Law]) -> "FunctionComponent":
        by_var = {}
        for law in laws:
            if law.variable in by_var:
                raise InvalidLawsError(f"two laws for {law.variable}")
            if law.arguments != sig.others(law.variable):
                raise InvalidLawsError(f"F_{law.variable} is not stored over W_{law.variable}")
            by_var[law.variable] = law
        ordered = tuple(by_var[v] for v in sig.variables if v in by_var)
        return cls(ordered)

    @classmethod
    def empty(cls) -> "FunctionComponent":
        return cls(())

    @cached_property
    def _by_variable(self) -> Dict[str, Law]:
        return {law.variable: law for law in self.laws}

    @property
    def endogenous(self) -> Tuple[str, ...]:
        return tuple(law.variable for law in self.laws)

    def is_endogenous(self, var: str) -> bool:
        return var in self._by_variable

    def get(self, var: str) -> Optional[Law]:
        return self._by_variable.get(var)

    def __len__(self) -> int:
        return len(self.laws)

    def without(self, variables: Iterable[str]) -> "FunctionComponent":
        """F restricted to V minus the given variables (the laws after do(X=x))."""
        drop = set(variables)
        return FunctionComponent(tuple(law for law in self.laws if law.variable not in drop))

    @cached_property
    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        for law in self.laws:
            g.add_node(law.variable)
            for parent in sorted(law.parents):
                g.add_edge(parent, law.variable)
        return g

    @cached_property
    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.graph)

    @cached_property
    def topological_order(self) -> Tuple[str, ...]:
        """Endogenous variables, parents before children."""
        order = list(nx.lexicographical_topological_sort(self.graph))
        return tuple(v for v in order if self.is_endogenous(v))


def parents(laws: FunctionComponent, v: str) -> FrozenSet[str]:
    """PA_V: the non-dummy arguments of F_V."""
    law = laws.get(v)
    if law is None:
        raise InvalidLawsError(f"{v} is not endogenous")
    return law.parents


def causal_graph(laws: FunctionComponent) -> nx.DiGraph:
    """The parent graph G_T, edges PA_V -> V."""
    return laws.graph.copy()


def normalize_intervention(sig: Signature, assignment: Iterable[Tuple[str, Value]]) -> Optional[Dict[str, Value]]:
    """Return the intervention as a dict, or None when it is inconsistent."""
    fixed: Dict[str, Value] = {}
    for var, value in assignment:
        if not sig.has_variable(var):
            raise BindingError(f"unknown variable {var!r} in intervention")
        if var in fixed and fixed[var] != value:
            return None
        fixed[var] = value
    return fixed


def apply_intervention(sig: Signature, laws: FunctionComponent, row: Assignment,
                       fixed: Mapping[str, Value]) -> Assignment:
    """s^F_{X=x}: overwrite X, then recompute the remaining endogenous
    variables in topological order."""
    values = list(row)
    for var, value in fixed.items():
        values[sig.position(var)] = value
    remaining = laws.without(fixed)
    for var in laws.topological_order:
        if var in fixed:
            continue
        law = remaining.get(var)
        values[sig.position(var)] = law.evaluate(sig, tuple(values))
    return tuple(values)


def intervene_row(sig: Signature, laws: FunctionComponent, row: Assignment,
                  assignment: Intervention) -> Tuple[Assignment, FunctionComponent]:
    """Row-level intervention returning the new row and the restricted laws."""
    fixed = normalize_intervention(sig, assignment)
    if fixed is None:
        raise InconsistentInterventionError(f"inconsistent intervention {list(assignment)}")
    return apply_intervention(sig, laws, row, fixed), laws.without(fixed)
