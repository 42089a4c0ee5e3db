"""
Batch Utilities

Helpers for splitting an enumerated model stream into batches for parallel
checking, plus summaries of the batch plan.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, TypeVar

T = TypeVar("T")


def create_batches(items: Sequence[T], batch_size: int = 64) -> List[List[Tuple[int, T]]]:
    """
    Split items into batches, keeping each item's position in the stream.

    Args:
        items: Items in enumeration order
        batch_size: Number of items per batch (default: 64)

    Returns:
        List of batches of (index, item) pairs
    """
    if batch_size < 1:
        raise ValueError("batch_size must be at least 1")
    indexed = list(enumerate(items))
    return [indexed[i:i + batch_size] for i in range(0, len(indexed), batch_size)]


def validate_batch_structure(batches: List[List[Tuple[int, Any]]]) -> Dict[str, Any]:
    """
    Validate the structure of a batch plan.

    Indices must cover 0..total-1 exactly once and stay increasing across
    batches, otherwise "first counterexample" is not well defined.
    """
    total_items = sum(len(batch) for batch in batches)
    indices = [index for batch in batches for index, _ in batch]

    return {
        'total_batches': len(batches),
        'total_items': total_items,
        'max_batch_size': max((len(batch) for batch in batches), default=0),
        'min_batch_size': min((len(batch) for batch in batches), default=0),
        'is_valid': indices == list(range(total_items)),
        'batch_sizes': [len(batch) for batch in batches],
    }


def format_batch_summary(batches: List[List[Tuple[int, Any]]], workers: int) -> str:
    """Create a one-paragraph summary of a batch plan."""
    validation = validate_batch_structure(batches)
    summary = (
        f"[BATCH] {validation['total_items']} models in "
        f"{validation['total_batches']} batches "
        f"(sizes {validation['min_batch_size']}-{validation['max_batch_size']}), "
        f"{workers} workers"
    )
    if not validation['is_valid']:
        summary += " [invalid plan]"
    return summary


def save_batch_metadata(batches: List[List[Tuple[int, Any]]], output_path: Path, report: Dict[str, Any]) -> str:
    """
    Save a report together with its batch plan as indented JSON.

    Returns:
        Path to the saved file
    """
    metadata = dict(report)
    metadata['batches'] = [
        {
            'batch_number': number,
            'model_count': len(batch),
            'first_index': batch[0][0] if batch else None,
            'last_index': batch[-1][0] if batch else None,
        }
        for number, batch in enumerate(batches, 1)
    ]

    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, 'w', encoding='utf-8') as f:
        json.dump(metadata, f, indent=2)

    return str(output_path)
