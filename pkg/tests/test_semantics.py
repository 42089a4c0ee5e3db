"""
Satisfaction for CO and PCO.

Core claims:
    - CO is flat: row-wise, split-search and causal-team evaluation agree
    - every formula holds on the empty multiteam
    - verdicts are invariant under rescaling the counts
    - law-free fragments do not look at the laws
    - PCO is not flat: a concrete witness exists
"""

import pytest

from causal_multiteams.core.enumeration import LawMode, enumerate_models
from causal_multiteams.core.model import from_counts, rescale
from causal_multiteams.errors import SplitBoundExceededError
from causal_multiteams.oracle.corpus import random_co_formulas, random_formulas
from causal_multiteams.semantics.evaluate import (
    SPLIT_SEARCH,
    EvalConfig,
    eval_co,
    eval_ct,
    eval_pco,
    non_flatness_witness,
    satisfies,
)
from causal_multiteams.semantics.rows import row_satisfies, satisfying_states
from causal_multiteams.syntax.ast import Lit, bottom
from causal_multiteams.syntax.fragments import FragmentLabel, classify_fragment
from causal_multiteams.syntax.parser import parse

ROWWISE = EvalConfig()
SPLIT = EvalConfig(co_strategy=SPLIT_SEARCH)


# -- Helpers -----------------------------------------------------------------

def _models(sig, max_size, mode=None):
    return list(enumerate_models(sig, max_size, mode or LawMode.all_laws()))


# == 1. CO ==================================================================

class TestCO:
    def test_example_counterfactual(self, sum_chain):
        alpha = parse("[Y:=1] Z!=5", sum_chain.signature)
        assert eval_co(sum_chain, alpha, ROWWISE)
        assert eval_co(sum_chain, alpha, SPLIT)

    def test_example_counterfactual_fails(self, sum_chain):
        alpha = parse("[Y:=3] Z!=5", sum_chain.signature)
        assert not eval_co(sum_chain, alpha, ROWWISE)

    def test_empty_multiteam(self, xy):
        empty = from_counts(xy, {})
        assert eval_co(empty, bottom(xy), ROWWISE)
        assert eval_co(empty, bottom(xy), SPLIT)

    def test_tensor_split(self, x_only):
        t = from_counts(x_only, {(0,): 1, (1,): 1})
        assert eval_co(t, parse("X=0 or X=1", x_only), SPLIT)
        assert not eval_co(t, parse("X=0", x_only), SPLIT)

    def test_tensor_is_not_classical_on_teams(self, x_only):
        t = from_counts(x_only, {(0,): 1, (1,): 1})
        assert not eval_co(t, parse("X=0 or X=0", x_only), SPLIT)

    def test_inconsistent_counterfactual_is_true(self, xy):
        t = from_counts(xy, {(0, 0): 1})
        alpha = parse("[X:=0,X:=1] Y=1", xy)
        assert eval_co(t, alpha, ROWWISE)
        assert eval_co(t, alpha, SPLIT)

    def test_selective_implication(self, xy):
        t = from_counts(xy, {(0, 0): 2, (1, 1): 1})
        assert eval_co(t, parse("X=1 => Y=1", xy), ROWWISE)
        assert not eval_co(t, parse("X=0 => Y=1", xy), ROWWISE)

    def test_split_bound(self, x_only):
        t = from_counts(x_only, {(0,): 13})
        with pytest.raises(SplitBoundExceededError):
            eval_co(t, Lit("X", 0), SPLIT)

    def test_causal_team_overlap(self, x_only):
        t = from_counts(x_only, {(0,): 1, (1,): 1})
        assert eval_ct(t, parse("X=0 or X=1", x_only), ROWWISE)
        assert eval_ct(from_counts(x_only, {}), bottom(x_only), ROWWISE)

    def test_row_satisfaction_under_laws(self, xy, y_copies_x):
        alpha = parse("[X:=1] Y=1", xy)
        assert satisfying_states(xy, y_copies_x, alpha) == [0, 1, 2, 3]
        assert not row_satisfies(xy, y_copies_x.without(["Y"]), (0, 0), alpha)


# == 2. PCO =================================================================

class TestPCO:
    def test_example_after_intervention(self, sum_chain):
        phi = parse("[Y:=1] Pr(Z=3) >= 1/2", sum_chain.signature)
        assert eval_pco(sum_chain, phi, ROWWISE)
        assert not eval_pco(sum_chain, parse("[Y:=1] Pr(Z=3) > 1/2", sum_chain.signature), ROWWISE)

    def test_example_observation(self, sum_chain):
        sig = sum_chain.signature
        assert satisfies(sum_chain, parse("Pr(Z=3) == 1/3", sig))
        assert satisfies(sum_chain, parse("X!=0 => Pr(Z=5) == 3/5", sig))

    def test_empty_model_atom(self, x_only):
        assert eval_pco(from_counts(x_only, {}), parse("Pr(X=1) > 0", x_only), ROWWISE)

    def test_comparison(self, xy):
        t = from_counts(xy, {(0, 0): 1, (1, 1): 3})
        assert eval_pco(t, parse("Pr(X=1) >= Pr(X=0)", xy), ROWWISE)
        assert not eval_pco(t, parse("Pr(X=1) <= Pr(X=0)", xy), ROWWISE)

    def test_global_disjunction(self, x_only):
        t = from_counts(x_only, {(0,): 1, (1,): 1})
        assert eval_pco(t, parse("Pr(X=1) > 1/2 gor Pr(X=0) >= 1/2", x_only), ROWWISE)

    def test_observation_to_nothing(self, xy):
        t = from_counts(xy, {(0, 0): 1})
        assert eval_pco(t, parse("X=1 => Pr(Y=1) >= 1", xy), ROWWISE)

    def test_conditional_atom(self, xy):
        t = from_counts(xy, {(0, 0): 1, (0, 1): 3, (1, 0): 2})
        assert eval_pco(t, parse("Pr(Y=1 | X=0) == 3/4", xy), ROWWISE)
        assert eval_pco(t, parse("Pr(Y=1 | X=1) == 0", xy), ROWWISE)

    def test_mixed_conditions_use_their_own_scopes(self, xy):
        t = from_counts(xy, {(0, 0): 1, (0, 1): 3, (1, 0): 2})
        phi = parse("Pr(Y=1 | X=0) > Pr(Y=1 | X=1)", xy)
        # 3/4 on the X=0 rows against 0 on the X=1 rows
        assert eval_pco(t, phi, EvalConfig(conditional_rhs="delta"))
        # the left condition on both sides compares 3/4 with 3/4
        assert not eval_pco(t, phi, EvalConfig(conditional_rhs="gamma"))

    def test_mixed_conditions_with_empty_scope(self, xy):
        t = from_counts(xy, {(0, 1): 1})
        assert eval_pco(t, parse("Pr(Y=0 | X=0) > Pr(Y=1 | X=1)", xy), ROWWISE)

    def test_left_condition_reading_ignores_right_scope(self, xy):
        # no X=1 rows, but the left condition alone decides: 0 > 1 fails
        t = from_counts(xy, {(0, 1): 1})
        phi = parse("Pr(Y=0 | X=0) > Pr(Y=1 | X=1)", xy)
        assert not eval_pco(t, phi, EvalConfig(conditional_rhs="gamma"))
        assert eval_pco(t, phi, EvalConfig(conditional_rhs="delta"))

    def test_conditional_reading_from_environment(self, monkeypatch):
        monkeypatch.setenv("CML_CONDITIONAL_RHS", "gamma")
        assert EvalConfig.from_settings().conditional_rhs == "gamma"

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            EvalConfig(co_strategy="guess")

    def test_non_flatness_witness(self):
        witness = non_flatness_witness()
        assert satisfies(witness.model, witness.formula)
        assert witness.refuting_row in witness.model.multiteam.support
        assert not satisfies(witness.singleton, witness.formula)


# == 3. Invariants over enumerated models ===================================

class TestInvariants:
    def test_empty_multiteam_property(self, xy):
        empty = [m for m in _models(xy, 0)]
        for phi in random_formulas(xy, FragmentLabel.PCO, 100, seed=11):
            assert all(satisfies(t, phi) for t in empty)

    def test_rescaling_invariance(self, xy):
        models = [t for t in _models(xy, 2) if not t.is_empty]
        for phi in random_formulas(xy, FragmentLabel.PCO, 40, seed=5):
            for t in models:
                verdict = satisfies(t, phi)
                assert all(satisfies(rescale(t, k), phi) == verdict for k in (2, 3))

    def test_law_free_fragments_ignore_laws(self, xy):
        laws_of = {}
        for t in _models(xy, 2):
            laws_of.setdefault(t.multiteam, []).append(t)
        formulas = [f for label in (FragmentLabel.P_MINUS, FragmentLabel.P, FragmentLabel.P_SUPSET)
                    for f in random_formulas(xy, label, 30, seed=3)]
        for phi in formulas:
            assert classify_fragment(phi).within(FragmentLabel.P_SUPSET)
            for variants in laws_of.values():
                assert len({satisfies(t, phi) for t in variants}) == 1

    def test_flatness_small(self, xy):
        models = _models(xy, 3)
        for alpha in random_co_formulas(xy, 60, seed=2):
            for t in models:
                assert eval_co(t, alpha, ROWWISE) == eval_co(t, alpha, SPLIT)

    @pytest.mark.slow
    def test_flatness(self, xy):
        models = _models(xy, 5)
        for alpha in random_co_formulas(xy, 500, seed=1, depth=4):
            for t in models:
                assert eval_co(t, alpha, ROWWISE) == eval_co(t, alpha, SPLIT), alpha

    @pytest.mark.slow
    def test_transfer_to_causal_teams(self, xy):
        models = _models(xy, 5)
        for alpha in random_co_formulas(xy, 500, seed=1, depth=4):
            for t in models:
                assert eval_co(t, alpha, ROWWISE) == eval_ct(t, alpha, ROWWISE), alpha

    @pytest.mark.slow
    def test_empty_and_rescaling_full(self, xy):
        models = _models(xy, 3)
        for phi in random_formulas(xy, FragmentLabel.PCO, 500, seed=4):
            for t in models:
                verdict = satisfies(t, phi)
                if t.is_empty:
                    assert verdict
                else:
                    assert all(satisfies(rescale(t, k), phi) == verdict for k in (2, 3, 5))

