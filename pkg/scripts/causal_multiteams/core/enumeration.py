"""
Exhaustive enumeration of function components and causal multiteams.

Counts-of-rows enumeration over a fixed law system reaches every rational
point of the simplex with denominator <= max_size that the laws allow, which
is what makes bounded oracle checks meaningful.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, List, Optional

from causal_multiteams.core.laws import FunctionComponent, Law
from causal_multiteams.core.model import CausalMultiteam, Multiteam, validate
from causal_multiteams.core.signature import Signature
from causal_multiteams.errors import GuardExceededError, InvalidLawsError
from causal_multiteams.utils.config import get_settings

logger = logging.getLogger(__name__)

ALL_LAWS = "all_laws"
FIXED_LAWS = "fixed_laws"
NO_LAWS = "no_laws"


@dataclass(frozen=True)
class LawMode:
    """Which function components an enumeration ranges over."""

    kind: str
    laws: Optional[FunctionComponent] = None

    @classmethod
    def all_laws(cls) -> "LawMode":
        return cls(ALL_LAWS)

    @classmethod
    def no_laws(cls) -> "LawMode":
        return cls(NO_LAWS)

    @classmethod
    def fixed(cls, laws: FunctionComponent) -> "LawMode":
        return cls(FIXED_LAWS, laws)

    @classmethod
    def parse(cls, name: str, laws: Optional[FunctionComponent] = None) -> "LawMode":
        aliases = {"all": ALL_LAWS, "all_laws": ALL_LAWS, "fixed": FIXED_LAWS,
                   "fixed_laws": FIXED_LAWS, "none": NO_LAWS, "no_laws": NO_LAWS}
        kind = aliases.get(name.replace("-", "_"))
        if kind is None:
            raise ValueError(f"unknown law mode {name!r}")
        if kind == FIXED_LAWS and laws is None:
            raise ValueError("fixed_laws needs a function component")
        return cls(kind, laws if kind == FIXED_LAWS else None)


def check_state_guard(sig: Signature) -> None:
    limit = get_settings().max_states
    if sig.size > limit:
        raise GuardExceededError(f"|B_sigma| = {sig.size} exceeds CML_MAX_STATES = {limit}")


def _candidate_tables(sig: Signature, var: str) -> List[Law]:
    arguments = sig.others(var)
    ranges = tuple(sig.range_of(name) for name in arguments)
    cells = 1
    for values in ranges:
        cells *= len(values)
    laws = []
    for outputs in itertools.product(sig.range_of(var), repeat=cells):
        if len(set(outputs)) > 1:
            laws.append(Law(var, arguments, ranges, tuple(outputs)))
    return laws


def enumerate_function_components(sig: Signature) -> List[FunctionComponent]:
    """F_sigma: every acyclic choice of non-constant laws, deterministic order."""
    check_state_guard(sig)
    limit = get_settings().max_law_candidates
    space = 1
    for var in sig.variables:
        cells = sig.size // len(sig.range_of(var))
        space *= 1 + len(sig.range_of(var)) ** cells
        if space > limit:
            raise GuardExceededError(
                f"law candidate space exceeds CML_MAX_LAW_CANDIDATES = {limit}"
            )

    options = [[None] + _candidate_tables(sig, var) for var in sig.variables]
    components = []
    for choice in itertools.product(*options):
        component = FunctionComponent(tuple(law for law in choice if law is not None))
        if component.is_acyclic:
            components.append(component)
    logger.info("[ENUM] %d function components over %d candidates", len(components), space)
    return components


def _law_systems(sig: Signature, mode: LawMode) -> List[FunctionComponent]:
    if mode.kind == NO_LAWS:
        return [FunctionComponent.empty()]
    if mode.kind == FIXED_LAWS:
        violations = validate(CausalMultiteam(sig, Multiteam(), mode.laws))
        if violations:
            raise InvalidLawsError(f"fixed laws do not fit the signature: {'; '.join(violations)}")
        return [mode.laws]
    return enumerate_function_components(sig)


def enumerate_models(sig: Signature, max_size: int, mode: LawMode) -> Iterator[CausalMultiteam]:
    """
    Yield every valid causal multiteam with at most max_size rows.

    Order: law systems in enumeration order, then size 0..max_size, then
    multisets of compatible states in lexicographic index order.
    """
    check_state_guard(sig)
    if max_size < 0:
        raise ValueError("max_size must be non-negative")
    for laws in _law_systems(sig, mode):
        compatible = [
            state for state in sig.states
            if all(law.evaluate(sig, state) == sig.value(state, law.variable) for law in laws.laws)
        ]
        for size in range(max_size + 1):
            for combo in itertools.combinations_with_replacement(compatible, size):
                yield CausalMultiteam(sig, Multiteam(Counter(combo)), laws)
