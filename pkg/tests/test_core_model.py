"""
Signatures, laws, causal multiteams and model enumeration.

Core claims:
    - assignments are enumerated lexicographically in (variable, value) order
    - parents are the non-dummy arguments of a law
    - validate reports compatibility, constant-law and cycle violations
    - observe keeps rows, intervene maps them and preserves the size
    - probabilities are exact; the worked example gives 1/3 and 1/2
    - enumerate_models yields only valid models, in a fixed order
"""

import json
from fractions import Fraction

import pytest

from causal_multiteams.core.enumeration import (
    LawMode,
    enumerate_function_components,
    enumerate_models,
)
from causal_multiteams.core.laws import FunctionComponent, causal_graph, make_law, parents
from causal_multiteams.core.loader import load_model, model_from_dict, model_to_dict
from causal_multiteams.core.model import (
    CausalMultiteam,
    Multiteam,
    from_counts,
    intervene,
    is_rescaling,
    is_submultiteam,
    observe,
    probability,
    probability_vector,
    rescale,
    support,
    validate,
)
from causal_multiteams.core.signature import Signature, enumerate_assignments
from causal_multiteams.errors import (
    BindingError,
    EmptyMultiteamError,
    GuardExceededError,
    InconsistentInterventionError,
    InvalidLawsError,
    ModelFileError,
    SignatureError,
)
from causal_multiteams.syntax.ast import And, Lit, bottom, top


# == 1. Signatures ==========================================================

class TestSignature:
    def test_two_binary_variables(self, xy):
        assert enumerate_assignments(xy) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_single_value(self):
        sig = Signature.from_mapping(["X"], {"X": [0]})
        assert enumerate_assignments(sig) == [(0,)]

    def test_example_signature_size(self, sum_chain):
        states = enumerate_assignments(sum_chain.signature)
        assert len(states) == 45
        assert states[0] == (0, 1, 1)

    def test_value_order_follows_declaration(self):
        sig = Signature.from_mapping(["X"], {"X": [2, 0, 1]})
        assert enumerate_assignments(sig) == [(2,), (0,), (1,)]

    def test_duplicate_values_rejected(self):
        with pytest.raises(SignatureError):
            Signature.from_mapping(["X"], {"X": [0, 0]})

    def test_empty_range_rejected(self):
        with pytest.raises(SignatureError):
            Signature.from_mapping(["X"], {"X": []})

    def test_missing_range_rejected(self):
        with pytest.raises(SignatureError):
            Signature.from_mapping(["X", "Y"], {"X": [0]})

    def test_unknown_variable(self, xy):
        with pytest.raises(BindingError):
            xy.position("Q")

    def test_coerce_tolerates_string_spelling(self, xy):
        assert xy.coerce("X", "1") == 1
        with pytest.raises(BindingError):
            xy.coerce("X", 7)


# == 2. Laws and parents ====================================================

class TestLaws:
    def test_sum_law_parents(self, sum_chain):
        assert parents(sum_chain.laws, "Z") == frozenset({"X", "Y"})

    def test_dummy_argument_dropped(self):
        sig = Signature.from_mapping(["X", "Y", "Z"], {"X": [0, 1, 2], "Y": [1, 2, 3], "Z": [0, 1]})
        law = make_law(sig, "Y", ["X", "Z"], {(x, z): x + 1 for x in (0, 1, 2) for z in (0, 1)})
        assert law.parents == frozenset({"X"})

    def test_declared_table_extended_to_all_arguments(self, sum_chain):
        law = sum_chain.laws.get("Y")
        assert law.arguments == ("X", "Z")
        assert law((2, 5)) == 3

    def test_parents_of_exogenous_variable(self, sum_chain):
        with pytest.raises(InvalidLawsError):
            parents(sum_chain.laws, "X")

    def test_partial_table_rejected(self, xy):
        with pytest.raises(InvalidLawsError):
            make_law(xy, "Y", ["X"], {(0,): 1})

    def test_output_outside_range_rejected(self, xy):
        with pytest.raises(InvalidLawsError):
            make_law(xy, "Y", ["X"], {(0,): 0, (1,): 2})

    def test_causal_graph_and_order(self, sum_chain):
        graph = causal_graph(sum_chain.laws)
        assert set(graph.edges) == {("X", "Y"), ("X", "Z"), ("Y", "Z")}
        assert sum_chain.laws.topological_order == ("Y", "Z")


# == 3. Validation ==========================================================

class TestValidate:
    def test_example_is_valid(self, sum_chain):
        assert validate(sum_chain) == []

    def test_incompatible_row(self, sum_chain):
        counts = sum_chain.multiteam.as_counter()
        counts[(0, 2, 1)] += 1
        bad = CausalMultiteam(sum_chain.signature, Multiteam(counts), sum_chain.laws)
        violations = validate(bad)
        assert any("incompatible at Y" in v for v in violations)

    def test_cycle(self, xy):
        fx = make_law(xy, "X", ["Y"], {(0,): 0, (1,): 1})
        fy = make_law(xy, "Y", ["X"], {(0,): 0, (1,): 1})
        t = from_counts(xy, {(0, 0): 1}, FunctionComponent.build(xy, [fx, fy]))
        assert any("cycle" in v for v in validate(t))

    def test_constant_law(self, xy):
        law = make_law(xy, "Y", ["X"], {(0,): 1, (1,): 1})
        t = from_counts(xy, {(0, 1): 1}, FunctionComponent.build(xy, [law]))
        assert any("constant" in v for v in validate(t))


# == 4. Observation and intervention ========================================

class TestObserveIntervene:
    def test_observe_example(self, sum_chain):
        observed = observe(sum_chain, Lit("X", 1))
        assert observed.multiteam == Multiteam({(1, 2, 3): 2})
        assert observed.laws == sum_chain.laws

    def test_observe_top_and_bottom(self, sum_chain):
        sig = sum_chain.signature
        assert observe(sum_chain, top(sig)) == sum_chain
        assert observe(sum_chain, bottom(sig)).is_empty

    def test_observe_composes(self, sum_chain):
        a, b = Lit("X", 0, False), Lit("Z", 5, False)
        twice = observe(observe(sum_chain, a), b)
        assert twice.multiteam == observe(sum_chain, And(a, b)).multiteam

    def test_intervene_example(self, sum_chain):
        after = intervene(sum_chain, (("Y", 1),))
        assert after.multiteam == Multiteam({(0, 1, 1): 1, (1, 1, 2): 2, (2, 1, 3): 3})
        assert after.laws.endogenous == ("Z",)
        assert probability(after, Lit("Z", 3)) == Fraction(1, 2)

    def test_intervene_all_variables(self, sum_chain):
        after = intervene(sum_chain, (("X", 2), ("Y", 3), ("Z", 5)))
        assert after.multiteam == Multiteam({(2, 3, 5): 6})
        assert len(after.laws) == 0

    def test_intervene_exogenous_only(self, xy):
        t = from_counts(xy, {(0, 0): 1, (0, 1): 2})
        after = intervene(t, (("X", 1),))
        assert after.multiteam == Multiteam({(1, 0): 1, (1, 1): 2})

    def test_intervene_preserves_size(self, sum_chain):
        for value in (1, 2, 3):
            assert intervene(sum_chain, (("Y", value),)).size == sum_chain.size

    def test_inconsistent_intervention(self, sum_chain):
        with pytest.raises(InconsistentInterventionError):
            intervene(sum_chain, (("Y", 1), ("Y", 2)))

    def test_repeated_consistent_intervention(self, sum_chain):
        once = intervene(sum_chain, (("Y", 2),))
        assert intervene(sum_chain, (("Y", 2), ("Y", 2))) == once


# == 5. Probabilities =======================================================

class TestProbability:
    def test_example_probability(self, sum_chain):
        assert probability(sum_chain, Lit("Z", 3)) == Fraction(1, 3)

    def test_vector(self, xy):
        t = from_counts(xy, {(0, 0): 1, (1, 1): 1})
        half = Fraction(1, 2)
        assert probability_vector(t) == (half, 0, 0, half)

    def test_vector_sums_to_one(self, sum_chain):
        assert sum(probability_vector(sum_chain)) == 1

    def test_top_has_probability_one(self, sum_chain):
        assert probability(sum_chain, top(sum_chain.signature)) == 1

    def test_empty_multiteam(self, xy):
        with pytest.raises(EmptyMultiteamError):
            probability(from_counts(xy, {}), Lit("X", 0))
        with pytest.raises(EmptyMultiteamError):
            probability_vector(from_counts(xy, {}))


# == 6. Rescaling and submultiteams =========================================

class TestRescaling:
    def test_uniform_doubling(self, xy):
        s = from_counts(xy, {(0, 0): 1, (1, 1): 1})
        assert is_rescaling(s, rescale(s, 2))

    def test_different_laws(self, xy, y_copies_x):
        s = from_counts(xy, {(0, 0): 1, (1, 1): 1})
        t = from_counts(xy, {(0, 0): 1, (1, 1): 1}, y_copies_x)
        assert not is_rescaling(s, t)

    def test_both_empty(self, xy):
        assert is_rescaling(from_counts(xy, {}), from_counts(xy, {}))

    def test_different_distribution(self, xy):
        s = from_counts(xy, {(0, 0): 1, (1, 1): 1})
        t = from_counts(xy, {(0, 0): 1, (1, 1): 2})
        assert not is_rescaling(s, t)

    def test_support_is_submultiteam(self, sum_chain):
        team = support(sum_chain)
        assert team.size == 3
        assert is_submultiteam(team, sum_chain)
        assert not is_submultiteam(sum_chain, team)


# == 7. Enumeration =========================================================

class TestEnumeration:
    def test_one_binary_variable(self, x_only):
        models = list(enumerate_models(x_only, 2, LawMode.no_laws()))
        assert [dict(m.multiteam.items()) for m in models] == [
            {}, {(0,): 1}, {(1,): 1}, {(0,): 2}, {(0,): 1, (1,): 1}, {(1,): 2},
        ]

    def test_function_components_of_two_binary_variables(self, xy):
        components = enumerate_function_components(xy)
        # empty, two laws for X, two laws for Y; both at once would be a cycle
        assert len(components) == 5
        assert all(c.is_acyclic for c in components)

    def test_size_zero_gives_one_empty_model_per_law_system(self, xy):
        models = list(enumerate_models(xy, 0, LawMode.all_laws()))
        assert len(models) == 5
        assert all(m.is_empty for m in models)

    def test_every_model_validates(self, xy):
        for model in enumerate_models(xy, 3, LawMode.all_laws()):
            assert validate(model) == []

    def test_fixed_laws(self, xy, y_copies_x):
        models = list(enumerate_models(xy, 2, LawMode.fixed(y_copies_x)))
        assert all(m.laws == y_copies_x for m in models)
        # only (0,0) and (1,1) are compatible with Y = X
        assert len(models) == 6

    def test_fixed_laws_must_be_acyclic(self, xy, y_copies_x):
        x_copies_y = make_law(xy, "X", ["Y"], {(0,): 0, (1,): 1})
        cyclic = FunctionComponent.build(xy, list(y_copies_x.laws) + [x_copies_y])
        with pytest.raises(InvalidLawsError, match="cycle"):
            list(enumerate_models(xy, 1, LawMode.fixed(cyclic)))

    def test_order_is_deterministic(self, xy):
        first = list(enumerate_models(xy, 2, LawMode.all_laws()))
        second = list(enumerate_models(xy, 2, LawMode.all_laws()))
        assert first == second

    def test_state_guard(self, xy, monkeypatch):
        monkeypatch.setenv("CML_MAX_STATES", "3")
        with pytest.raises(GuardExceededError):
            list(enumerate_models(xy, 1, LawMode.no_laws()))

    def test_law_mode_parse(self, y_copies_x):
        assert LawMode.parse("all") == LawMode.all_laws()
        assert LawMode.parse("fixed", y_copies_x).laws == y_copies_x
        with pytest.raises(ValueError):
            LawMode.parse("fixed")
        with pytest.raises(ValueError):
            LawMode.parse("sometimes")


# == 8. Model files =========================================================

class TestModelFiles:
    def test_example_file(self, sum_chain):
        assert sum_chain.size == 6
        assert sum_chain.laws.endogenous == ("Y", "Z")

    def test_dict_form_reloads(self, sum_chain):
        assert model_from_dict(model_to_dict(sum_chain)) == sum_chain

    def test_invalid_row_lists_violations(self, sum_chain):
        data = model_to_dict(sum_chain)
        data["rows"].append({"values": {"X": 0, "Y": 2, "Z": 1}, "count": 1})
        with pytest.raises(ModelFileError) as info:
            model_from_dict(data)
        assert info.value.violations

    def test_missing_file(self, tmp_path):
        with pytest.raises(ModelFileError):
            load_model(tmp_path / "absent.json")

    def test_broken_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ModelFileError):
            load_model(path)

    def test_string_values(self, tmp_path):
        path = tmp_path / "weather.json"
        path.write_text(json.dumps({
            "signature": {"order": ["W"], "ranges": {"W": ["rain", "sun"]}},
            "rows": [{"values": {"W": "sun"}, "count": 3}],
        }))
        model = load_model(path)
        assert probability(model, Lit("W", "sun")) == 1
