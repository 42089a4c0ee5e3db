"""
The exhaustive oracle, its batch plan and the settings it reads.
"""

import json
import random
from fractions import Fraction

import pytest

from causal_multiteams.core.enumeration import LawMode
from causal_multiteams.core.model import Multiteam
from causal_multiteams.errors import ConfigError, GuardExceededError, OracleModeError
from causal_multiteams.geometry.inequalities import IneqClass, LinIneq, ProbabilitySet, classify_ineq
from causal_multiteams.oracle.corpus import random_formulas, random_ineq, random_sets
from causal_multiteams.oracle.equivalence import OracleProgress, check_set_agreement, equiv
from causal_multiteams.syntax.fragments import FragmentLabel, classify_fragment
from causal_multiteams.syntax.parser import parse
from causal_multiteams.utils.batching import (
    create_batches,
    format_batch_summary,
    validate_batch_structure,
)
from causal_multiteams.utils.config import get_settings

NONE = LawMode.no_laws()
ALL = LawMode.all_laws()


# == 1. Equivalence =========================================================

class TestEquiv:
    def test_conditional_is_an_observation(self, xy):
        f = parse("Y=0 => Pr(X=1) >= Pr(X=0)", xy)
        g = parse("Pr(X=1 | Y=0) >= Pr(X=0 | Y=0)", xy)
        report = equiv(f, g, xy, 4, NONE)
        assert report.passed
        assert report.counterexample is None

    def test_models_checked_when_passing(self, x_only):
        # sizes 0..2 over two states: 1 + 2 + 3 models
        report = equiv(parse("Pr(X=1) > 0", x_only), parse("Pr(X=0) < 1", x_only), x_only, 2, NONE)
        assert report.passed
        assert report.models_checked == 6

    def test_first_counterexample(self, x_only):
        report = equiv(parse("Pr(X=1) >= 1/2", x_only), parse("X=1", x_only), x_only, 3, NONE)
        assert not report.passed
        cex = report.counterexample
        assert cex.index == 4
        assert report.models_checked == 5
        assert cex.model.multiteam == Multiteam({(0,): 1, (1,): 1})
        assert (cex.left, cex.right) == (True, False)
        assert cex.reproduce()

    def test_counterexample_does_not_depend_on_scheduling(self, x_only):
        f, g = parse("Pr(X=1) >= 1/2", x_only), parse("X=1", x_only)
        reports = [equiv(f, g, x_only, 4, NONE, workers=w, batch_size=b) for w, b in ((1, 64), (4, 1), (3, 2))]
        assert len({r.counterexample.index for r in reports}) == 1

    def test_counterfactuals_need_laws(self, xy):
        f = parse("[X:=1] Pr(Y=1) >= 1/2", xy)
        with pytest.raises(OracleModeError):
            equiv(f, f, xy, 2, NONE)

    def test_fixed_laws_warns(self, xy, y_copies_x, caplog):
        f = parse("[X:=1] Pr(Y=1) >= 1", xy)
        with caplog.at_level("WARNING"):
            assert equiv(f, parse("X=0 or X=1", xy), xy, 2, LawMode.fixed(y_copies_x)).passed
        assert "[ORACLE]" in caplog.text

    def test_all_laws_tells_laws_apart(self, xy):
        f = parse("Pr([X:=1] Y=1) >= 1", xy)
        g = parse("Pr(Y=1) >= 1", xy)
        report = equiv(f, g, xy, 1, ALL)
        assert not report.passed
        assert report.counterexample.reproduce()

    def test_report_dict(self, x_only):
        report = equiv(parse("Pr(X=1) >= 1/2", x_only), parse("X=1", x_only), x_only, 2, NONE)
        data = report.to_dict()
        assert data["passed"] is False
        assert data["counterexample"]["index"] == 4
        assert data["counterexample"]["model"]

    def test_report_save(self, x_only, tmp_path):
        report = equiv(parse("Pr(X=1) >= 1/2", x_only), parse("X=1", x_only), x_only, 3, NONE, batch_size=3)
        path = report.save(tmp_path / "reports" / "equiv.json")
        with open(path, encoding="utf-8") as f:
            saved = json.load(f)
        assert saved["models_checked"] == 5
        assert saved["batches"][0] == {"batch_number": 1, "model_count": 3, "first_index": 0, "last_index": 2}

    def test_state_guard(self, xy, monkeypatch):
        monkeypatch.setenv("CML_MAX_STATES", "3")
        f = parse("Pr(X=1) >= 1/2", xy)
        with pytest.raises(GuardExceededError):
            equiv(f, f, xy, 1, NONE)


# == 2. Set agreement =======================================================

class TestSetAgreement:
    def test_matching_set(self, xy):
        s = ProbabilitySet.of(LinIneq.make((0, 0, 1, 1), ">=", Fraction(1, 2)))
        assert check_set_agreement(parse("Pr(X=1) >= 1/2", xy), s, xy, 4, NONE).passed

    def test_wrong_index(self, xy):
        s = ProbabilitySet.of(LinIneq.make((1, 0, 0, 0), ">=", Fraction(1, 2)))
        report = check_set_agreement(parse("Pr(X=1) >= 1/2", xy), s, xy, 4, NONE)
        assert not report.passed
        assert report.counterexample.reproduce()

    def test_comparison_cancels_overlap(self, xy):
        s = ProbabilitySet.of(LinIneq.make((0, -1, 1, 0), ">=", 0))
        assert check_set_agreement(parse("Pr(X=1) >= Pr(Y=1)", xy), s, xy, 4, NONE).passed


# == 3. Corpora =============================================================

class TestCorpus:
    def test_formulas_are_reproducible(self, xy):
        assert random_formulas(xy, FragmentLabel.PCO, 10, seed=4) == random_formulas(xy, FragmentLabel.PCO, 10, seed=4)

    @pytest.mark.parametrize("label", [FragmentLabel.P_MINUS, FragmentLabel.P, FragmentLabel.P_SUPSET,
                                       FragmentLabel.P_BOXRIGHT, FragmentLabel.PCO])
    def test_formulas_stay_in_fragment(self, xy, label):
        for f in random_formulas(xy, label, 30, seed=7):
            assert classify_fragment(f).within(label), f

    @pytest.mark.parametrize("klass", [IneqClass.MONIC, IneqClass.SIGNED_MONIC, IneqClass.SIGNED_BINARY])
    def test_sets_stay_in_class(self, klass):
        for s in random_sets(3, klass, 20, seed=5):
            assert all(classify_ineq(e) <= klass for e in s.inequalities())

    def test_ineq_dimension(self):
        assert random_ineq(random.Random(1), 4, IneqClass.MONIC).n == 4


# == 4. Batching and settings ===============================================

class TestBatching:
    def test_create_batches_keeps_indices(self):
        batches = create_batches(list("abcde"), 2)
        assert batches == [[(0, "a"), (1, "b")], [(2, "c"), (3, "d")], [(4, "e")]]

    def test_bad_batch_size(self):
        with pytest.raises(ValueError):
            create_batches([1, 2], 0)

    def test_validate(self):
        validation = validate_batch_structure(create_batches(range(7), 3))
        assert validation["is_valid"]
        assert validation["batch_sizes"] == [3, 3, 1]
        assert not validate_batch_structure([[(1, "x")], [(0, "y")]])["is_valid"]

    def test_summary(self):
        summary = format_batch_summary(create_batches(range(5), 2), 4)
        assert summary.startswith("[BATCH] 5 models in 3 batches")
        assert "invalid" not in summary

    def test_progress_tally(self):
        progress = OracleProgress(3)
        progress.record(4, disagreed=False)
        progress.record(2, disagreed=True)
        assert progress.snapshot() == {
            "batches_done": 2, "batch_count": 3, "models_checked": 6, "disagreements": 1,
        }

    def test_progress_is_logged(self, x_only, caplog):
        with caplog.at_level("INFO", logger="causal_multiteams.oracle.equivalence"):
            equiv(parse("X=1", x_only), parse("X=1", x_only), x_only, 2, NONE, batch_size=2)
        assert "3/3 batches, 6 models evaluated, 0 batches disagreed" in caplog.text


class TestSettings:
    def test_defaults(self):
        settings = get_settings()
        assert settings.max_states == 64
        assert settings.split_bound == 12
        assert settings.conditional_rhs == "delta"

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("CML_WORKERS", "2")
        monkeypatch.setenv("CML_CONDITIONAL_RHS", "Gamma")
        settings = get_settings()
        assert settings.workers == 2
        assert settings.conditional_rhs == "gamma"

    @pytest.mark.parametrize("name, value", [
        ("CML_WORKERS", "many"),
        ("CML_BATCH_SIZE", "0"),
        ("CML_CONDITIONAL_RHS", "epsilon"),
        ("CML_LOG_LEVEL", "LOUD"),
    ])
    def test_bad_values(self, monkeypatch, name, value):
        monkeypatch.setenv(name, value)
        with pytest.raises(ConfigError):
            get_settings()
