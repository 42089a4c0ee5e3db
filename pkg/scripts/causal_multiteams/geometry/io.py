"""
Inequality-system files.

    {"n": 3, "systems": [{"ineqs": [{"coeffs": ["1", "-1", "0"], "cmp": "<=", "b": "1/3"}]}]}

Rationals are strings "p/q" (plain integers and decimals are accepted on input).
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Union

from causal_multiteams.errors import ModelFileError
from causal_multiteams.geometry.inequalities import (
    IneqSystem,
    LinIneq,
    ProbabilitySet,
    classify_set,
)
from causal_multiteams.syntax.printer import format_number

PathLike = Union[str, Path]


def _rational(raw) -> Fraction:
    try:
        return Fraction(str(raw).strip())
    except (ValueError, ZeroDivisionError):
        raise ModelFileError(f"not a rational number: {raw!r}")


def probability_set_from_dict(data: Dict[str, Any]) -> ProbabilitySet:
    try:
        n = int(data["n"])
        systems = []
        for system in data.get("systems", []):
            ineqs = []
            for entry in system.get("ineqs", []):
                coeffs = [_rational(c) for c in entry["coeffs"]]
                if len(coeffs) != n:
                    raise ModelFileError(f"inequality has {len(coeffs)} coefficients, expected {n}")
                ineqs.append(LinIneq.make(coeffs, entry["cmp"], _rational(entry.get("b", 0))))
            systems.append(IneqSystem(n, tuple(ineqs)))
    except KeyError as e:
        raise ModelFileError(f"inequality file misses the {e.args[0]!r} field")
    except (TypeError, ValueError) as e:
        if isinstance(e, ModelFileError):
            raise
        raise ModelFileError(f"malformed inequality file: {e}")
    return ProbabilitySet(n, tuple(systems))


def probability_set_to_dict(s: ProbabilitySet, with_class: bool = False) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "n": s.n,
        "systems": [
            {"ineqs": [
                {"coeffs": [format_number(a) for a in e.coeffs], "cmp": e.cmp, "b": format_number(e.bound)}
                for e in system.ineqs
            ]}
            for system in s.systems
        ],
    }
    if with_class:
        data["class"] = classify_set(s).label
    return data


def load_probability_set(path: PathLike) -> ProbabilitySet:
    path = Path(path)
    if not path.exists():
        raise ModelFileError(f"file not found: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ModelFileError(f"{path} is not valid JSON: {e}")
    return probability_set_from_dict(data)


def save_probability_set(s: ProbabilitySet, path: PathLike) -> str:
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(probability_set_to_dict(s, with_class=True), f, indent=2)
    return str(path)
