"""
Model and signature files.

Model file (JSON):
    {"signature": {"order": [...], "ranges": {var: [values...]}},
     "rows": [{"values": {var: val}, "count": int}],
     "functions": {var: {"args": [vars...], "table": [{"in": {arg: val}, "out": val}]}}}

A signature file is either the bare {"order", "ranges"} object or any model
file. Loading runs validate and rejects invalid models with the violations.
"""

import json
import logging
from collections import Counter
from pathlib import Path
from typing import Any, Dict, Union

from causal_multiteams.core.laws import FunctionComponent, make_law
from causal_multiteams.core.model import CausalMultiteam, Multiteam, validate
from causal_multiteams.core.signature import Signature
from causal_multiteams.errors import CausalMultiteamError, ModelFileError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _read_json(path: PathLike) -> Dict[str, Any]:
    path = Path(path)
    if not path.exists():
        raise ModelFileError(f"file not found: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ModelFileError(f"{path} is not valid JSON: {e}")


def signature_from_dict(data: Dict[str, Any]) -> Signature:
    if "signature" in data:
        data = data["signature"]
    try:
        return Signature.from_mapping(data["order"], data["ranges"])
    except KeyError as e:
        raise ModelFileError(f"signature misses the {e.args[0]!r} field")


def laws_from_dict(sig: Signature, functions: Dict[str, Any]) -> FunctionComponent:
    laws = []
    for var, law_data in functions.items():
        args = list(law_data.get("args", []))
        table = {}
        for entry in law_data.get("table", []):
            inputs = entry["in"]
            key = tuple(sig.coerce(arg, inputs[arg]) for arg in args)
            table[key] = sig.coerce(var, entry["out"])
        laws.append(make_law(sig, var, args, table))
    return FunctionComponent.build(sig, laws)


def model_from_dict(data: Dict[str, Any]) -> CausalMultiteam:
    """Build and validate a causal multiteam from its JSON object."""
    try:
        sig = signature_from_dict(data)
        counts: Counter = Counter()
        for entry in data.get("rows", []):
            count = int(entry.get("count", 1))
            if count < 1:
                raise ModelFileError(f"row count must be positive, got {count}")
            counts[sig.row(entry["values"])] += count
        laws = laws_from_dict(sig, data.get("functions", {}))
    except ModelFileError:
        raise
    except (CausalMultiteamError, KeyError, TypeError) as e:
        raise ModelFileError(f"malformed model: {e}")

    model = CausalMultiteam(sig, Multiteam(counts), laws)
    violations = validate(model)
    if violations:
        raise ModelFileError("model does not validate", violations)
    return model


def load_model(path: PathLike) -> CausalMultiteam:
    model = model_from_dict(_read_json(path))
    logger.info("[LOAD] %s: %d rows, %d laws", path, model.size, len(model.laws))
    return model


def load_signature(path: PathLike) -> Signature:
    try:
        return signature_from_dict(_read_json(path))
    except CausalMultiteamError as e:
        if isinstance(e, ModelFileError):
            raise
        raise ModelFileError(str(e))


def laws_to_dict(sig: Signature, laws: FunctionComponent) -> Dict[str, Any]:
    """Laws over their parents only, the compact form of the file format."""
    functions = {}
    for law in laws.laws:
        args = [name for name in law.arguments if name in law.parents]
        table, seen = [], set()
        for inputs in law.inputs():
            key = tuple(value for name, value in zip(law.arguments, inputs) if name in law.parents)
            if key in seen:
                continue
            seen.add(key)
            table.append({"in": dict(zip(args, key)), "out": law(inputs)})
        functions[law.variable] = {"args": args, "table": table}
    return functions


def model_to_dict(t: CausalMultiteam) -> Dict[str, Any]:
    """Inverse of model_from_dict; rows in canonical state order."""
    return {
        "signature": t.signature.to_dict(),
        "rows": [{"values": t.signature.as_dict(row), "count": count} for row, count in t.rows()],
        "functions": laws_to_dict(t.signature, t.laws),
    }
