"""
Exhaustive oracle checks over enumerated causal multiteams.

Models are enumerated once, split into batches and checked on a thread
pool. Each batch reports its first disagreement; the smallest enumeration
index over all batches is the counterexample, so the result does not depend
on scheduling.
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from causal_multiteams.core.enumeration import NO_LAWS, FIXED_LAWS, LawMode, enumerate_models
from causal_multiteams.core.loader import model_to_dict
from causal_multiteams.core.model import CausalMultiteam, probability_vector, validate
from causal_multiteams.core.signature import Signature
from causal_multiteams.errors import OracleModeError
from causal_multiteams.geometry.inequalities import ProbabilitySet, member
from causal_multiteams.semantics.evaluate import EvalConfig, satisfies
from causal_multiteams.syntax.ast import Formula, has_counterfactual
from causal_multiteams.syntax.printer import to_text
from causal_multiteams.utils.batching import create_batches, format_batch_summary, save_batch_metadata
from causal_multiteams.utils.config import get_settings

logger = logging.getLogger(__name__)

Check = Callable[[CausalMultiteam], bool]


class OracleProgress:
    """Shared tally of a run: batches finished, models checked, batches that disagreed."""

    def __init__(self, batch_count: int):
        self.batch_count = batch_count
        self.batches_done = 0
        self.models_checked = 0
        self.disagreements = 0
        self._lock = threading.Lock()

    def record(self, models: int, disagreed: bool) -> None:
        with self._lock:
            self.batches_done += 1
            self.models_checked += models
            if disagreed:
                self.disagreements += 1

    def snapshot(self) -> Dict[str, int]:
        with self._lock:
            return {
                "batches_done": self.batches_done,
                "batch_count": self.batch_count,
                "models_checked": self.models_checked,
                "disagreements": self.disagreements,
            }


@dataclass
class Counterexample:
    index: int
    model: CausalMultiteam
    left: bool
    right: bool
    left_check: Check = field(repr=False, compare=False, default=None)
    right_check: Check = field(repr=False, compare=False, default=None)

    def reproduce(self) -> bool:
        """Re-run both checks: the model must validate and the verdicts must still differ."""
        if validate(self.model):
            return False
        left, right = self.left_check(self.model), self.right_check(self.model)
        return (left, right) == (self.left, self.right) and left != right

    def to_dict(self) -> Dict[str, Any]:
        return {"index": self.index, "left": self.left, "right": self.right,
                "model": model_to_dict(self.model)}


@dataclass
class OracleReport:
    passed: bool
    models_checked: int
    counterexample: Optional[Counterexample] = None
    description: str = ""
    batches: List = field(default_factory=list, repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "models_checked": self.models_checked,
            "description": self.description,
            "counterexample": self.counterexample.to_dict() if self.counterexample else None,
        }

    def save(self, output_path: Path) -> str:
        return save_batch_metadata(self.batches, output_path, self.to_dict())


def check_mode(formulas: List[Formula], mode: LawMode) -> None:
    if not any(has_counterfactual(f) for f in formulas):
        return
    if mode.kind == NO_LAWS:
        raise OracleModeError("counterfactual formulas need all_laws (or fixed_laws) enumeration")
    if mode.kind == FIXED_LAWS:
        logger.warning("[ORACLE] counterfactual formula checked under fixed laws only; "
                       "the verdict covers that function component alone")


def _check_batch(batch, left: Check, right: Check,
                 progress: OracleProgress) -> Optional[Tuple[int, CausalMultiteam, bool, bool]]:
    for checked, (index, model) in enumerate(batch, 1):
        lv, rv = left(model), right(model)
        if lv != rv:
            progress.record(checked, disagreed=True)
            return index, model, lv, rv
    progress.record(len(batch), disagreed=False)
    return None


def run_checks(models: List[CausalMultiteam], left: Check, right: Check, description: str = "",
               workers: Optional[int] = None, batch_size: Optional[int] = None) -> OracleReport:
    """Compare two verdict functions on every model; the earliest disagreement wins."""
    settings = get_settings()
    workers = workers or settings.workers
    batches = create_batches(models, batch_size or settings.batch_size)
    logger.info(format_batch_summary(batches, workers))

    progress = OracleProgress(len(batches))
    found: List[Tuple[int, CausalMultiteam, bool, bool]] = []
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(_check_batch, batch, left, right, progress) for batch in batches]
        for future in as_completed(futures):
            result = future.result()
            if result is not None:
                found.append(result)

    status = progress.snapshot()
    logger.info("[ORACLE] %s: %d/%d batches, %d models evaluated, %d batches disagreed",
                description or "check", status["batches_done"], status["batch_count"],
                status["models_checked"], status["disagreements"])

    if not found:
        return OracleReport(True, len(models), None, description, batches)
    index, model, lv, rv = min(found, key=lambda item: item[0])
    counterexample = Counterexample(index, model, lv, rv, left, right)
    return OracleReport(False, index + 1, counterexample, description, batches)


def equiv(f: Formula, g: Formula, sig: Signature, max_size: int, mode: LawMode,
          cfg: Optional[EvalConfig] = None, workers: Optional[int] = None,
          batch_size: Optional[int] = None) -> OracleReport:
    """f and g agree on every enumerated model."""
    check_mode([f, g], mode)
    cfg = cfg or EvalConfig.from_settings()
    models = list(enumerate_models(sig, max_size, mode))
    return run_checks(
        models,
        lambda t: satisfies(t, f, cfg),
        lambda t: satisfies(t, g, cfg),
        f"equiv {to_text(f)} | {to_text(g)}",
        workers, batch_size,
    )


def check_set_agreement(f: Formula, s: ProbabilitySet, sig: Signature, max_size: int, mode: LawMode,
                        cfg: Optional[EvalConfig] = None, workers: Optional[int] = None,
                        batch_size: Optional[int] = None) -> OracleReport:
    """
    f holds on a nonempty model iff its probability vector lies in s; on an
    empty model f must hold.
    """
    check_mode([f], mode)
    cfg = cfg or EvalConfig.from_settings()
    models = list(enumerate_models(sig, max_size, mode))

    def in_set(t: CausalMultiteam) -> bool:
        return True if t.is_empty else member(probability_vector(t), s)

    return run_checks(
        models,
        lambda t: satisfies(t, f, cfg),
        in_set,
        f"set agreement {to_text(f)}",
        workers, batch_size,
    )
