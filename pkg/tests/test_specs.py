import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nextviz.dataset import ColumnMeta
from nextviz.specs import (
    EncodingError,
    FilterPredicate,
    SpecError,
    VizSpec,
    auto_encode,
    canonicalize,
    encodable,
    spec_diff,
    spec_from_json,
    validate_spec,
)

SCHEMA = [
    ColumnMeta("SATAverage", "quantitative", "measure", 100, 700, 1500, "mean"),
    ColumnMeta("AverageCost", "quantitative", "measure", 100, 9000, 60000, "mean"),
    ColumnMeta("MedianEarnings", "quantitative", "measure", 100, 1, 2, "mean"),
    ColumnMeta("FundingModel", "nominal", "dimension", 2),
    ColumnMeta("Region", "nominal", "dimension", 8),
    ColumnMeta("Year", "temporal", "dimension", 13, 0.0, 4e8),
]
LOOKUP = {m.name: m for m in SCHEMA}


def test_two_measures_become_a_scatter():
    spec = auto_encode(("SATAverage", "AverageCost"), SCHEMA)
    assert spec.mark == "scatter"
    # alphabetic tie-break puts AverageCost on x
    assert spec.x_attr == "AverageCost" and spec.y_attr == "SATAverage"
    assert spec.agg is None


def test_third_dimension_lands_on_color():
    spec = auto_encode(("SATAverage", "AverageCost", "FundingModel"), SCHEMA)
    assert spec.mark == "scatter"
    assert spec.color_attr == "FundingModel"


def test_single_dimension_is_a_count_bar():
    spec = auto_encode(("Region",), SCHEMA)
    assert spec.mark == "bar" and spec.agg == "count"
    assert spec.x_attr == "Region" and spec.y_attr is None


def test_single_measure_is_a_histogram():
    spec = auto_encode(("SATAverage",), SCHEMA)
    assert spec.mark == "histogram" and spec.agg == "count"


def test_temporal_dimension_takes_a_line():
    assert auto_encode(("Year",), SCHEMA).mark == "line"
    spec = auto_encode(("Year", "SATAverage"), SCHEMA)
    assert spec.mark == "line"
    assert spec.x_attr == "Year" and spec.y_attr == "SATAverage"


def test_dimension_plus_measure_is_a_bar_with_default_agg():
    spec = auto_encode(("Region", "SATAverage"), SCHEMA)
    assert spec.mark == "bar" and spec.agg == "mean"


def test_unsupported_combinations_raise():
    with pytest.raises(EncodingError):
        auto_encode(("SATAverage", "AverageCost", "MedianEarnings"), SCHEMA)
    with pytest.raises(EncodingError):
        auto_encode(("Region", "FundingModel"), SCHEMA)
    with pytest.raises(EncodingError):
        auto_encode(tuple(LOOKUP), SCHEMA)
    with pytest.raises(SpecError):
        auto_encode(("Nope",), SCHEMA)
    assert not encodable(("Region", "FundingModel"), SCHEMA)


def test_encoding_is_deterministic_and_idempotent():
    for attrs in [("SATAverage",), ("Region", "SATAverage"), ("SATAverage", "AverageCost")]:
        first = auto_encode(attrs, SCHEMA)
        again = auto_encode(first.attrs, SCHEMA, first.filters)
        assert first == again


def test_canonical_key_ignores_attribute_order():
    a = auto_encode(("SATAverage", "AverageCost"), SCHEMA)
    b = auto_encode(("AverageCost", "SATAverage"), SCHEMA)
    assert canonicalize(a) == canonicalize(b)


def test_canonical_key_separates_filter_values():
    base = auto_encode(("SATAverage",), SCHEMA)
    f1 = base.with_filters([FilterPredicate("FundingModel", "Private")])
    f2 = base.with_filters([FilterPredicate("FundingModel", "Public")])
    assert canonicalize(f1) != canonicalize(f2)


def test_canonical_key_matches_structural_equality_on_random_specs():
    # 1000 random permuted spec pairs: key equality iff structural equality
    rng = np.random.default_rng(7)
    names = list(LOOKUP)
    specs = []
    for _ in range(1000):
        while True:
            k = int(rng.integers(1, 4))
            attrs = list(rng.choice(names, size=k, replace=False))
            if encodable(attrs, SCHEMA):
                break
        filters = []
        if rng.random() < 0.5:
            filters.append(FilterPredicate("FundingModel", rng.choice(["Private", "Public"])))
        perm = list(attrs)
        rng.shuffle(perm)
        specs.append(
            (auto_encode(attrs, SCHEMA, filters), auto_encode(perm, SCHEMA, filters))
        )
    for original, permuted in specs:
        assert original == permuted
        assert canonicalize(original) == canonicalize(permuted)
    keys = [canonicalize(s) for s, _ in specs]
    for i in range(0, 1000, 37):
        for j in range(0, 1000, 41):
            assert (keys[i] == keys[j]) == (specs[i][0] == specs[j][0])


def test_diff_reports_added_attribute():
    current = auto_encode(("SATAverage", "AverageCost"), SCHEMA)
    rec = auto_encode(("SATAverage", "AverageCost", "FundingModel"), SCHEMA)
    diff = spec_diff(current, rec)
    assert diff.added == ("FundingModel",)
    assert not diff.removed and not diff.swapped


def test_diff_of_identical_specs_is_empty():
    spec = auto_encode(("Region", "SATAverage"), SCHEMA)
    assert spec_diff(spec, spec).is_empty()


def test_diff_folds_single_replacement_into_a_swap():
    current = auto_encode(("SATAverage", "AverageCost"), SCHEMA)
    rec = auto_encode(("SATAverage", "MedianEarnings"), SCHEMA)
    diff = spec_diff(current, rec)
    assert diff.swapped == (("AverageCost", "MedianEarnings"),)
    assert not diff.added and not diff.removed


def test_diff_filter_value_swap():
    base = auto_encode(("SATAverage",), SCHEMA)
    a = base.with_filters([FilterPredicate("FundingModel", "Private")])
    b = base.with_filters([FilterPredicate("FundingModel", "Public")])
    diff = spec_diff(a, b)
    assert diff.swapped_filters == (
        (FilterPredicate("FundingModel", "Private"), FilterPredicate("FundingModel", "Public")),
    )


def test_diff_from_empty_view_adds_everything():
    rec = auto_encode(("Region",), SCHEMA, [FilterPredicate("FundingModel", "Public")])
    diff = spec_diff(None, rec)
    assert diff.added == ("Region",)
    assert diff.added_filters == (FilterPredicate("FundingModel", "Public"),)


@st.composite
def spec_pairs(draw):
    names = list(LOOKUP)
    out = []
    for _ in range(2):
        while True:
            attrs = draw(st.sets(st.sampled_from(names), min_size=1, max_size=3))
            if encodable(attrs, SCHEMA):
                break
        filters = []
        if draw(st.booleans()):
            filters.append(
                FilterPredicate("FundingModel", draw(st.sampled_from(["Private", "Public"])))
            )
        if draw(st.booleans()):
            filters.append(FilterPredicate("Region", draw(st.sampled_from(["East", "West"]))))
        out.append(auto_encode(attrs, SCHEMA, filters))
    return out


@settings(max_examples=150, deadline=None)
@given(spec_pairs())
def test_diff_symmetry_property(pair):
    a, b = pair
    forward = spec_diff(a, b)
    backward = spec_diff(b, a)
    assert forward.added == backward.removed
    assert forward.removed == backward.added
    assert set(forward.swapped) == {(y, x) for x, y in backward.swapped}
    assert forward.added_filters == backward.removed_filters
    assert not set(forward.added) & set(forward.removed)
    assert spec_diff(a, a).is_empty()


def test_json_round_trip():
    spec = auto_encode(
        ("SATAverage", "AverageCost", "FundingModel"),
        SCHEMA,
        [FilterPredicate("Region", "East")],
    )
    blob = json.dumps(spec.to_json())
    back = spec_from_json(json.loads(blob), SCHEMA)
    assert back == spec


def test_spec_from_json_rejects_bad_shapes():
    with pytest.raises(SpecError):
        spec_from_json({"attrs": "SATAverage"}, SCHEMA)
    with pytest.raises(SpecError):
        spec_from_json({"attrs": ["SATAverage"], "filters": [{"attr": "SATAverage", "value": 1}]}, SCHEMA)
    with pytest.raises(SpecError):
        spec_from_json({"attrs": ["SATAverage", "Nope"]}, SCHEMA)
    with pytest.raises(EncodingError):
        spec_from_json({"attrs": ["SATAverage", "AverageCost", "MedianEarnings"]}, SCHEMA)


def test_validate_spec_checks_channel_consistency():
    good = auto_encode(("Region", "SATAverage"), SCHEMA)
    validate_spec(good, SCHEMA)
    tampered = VizSpec(good.attrs, good.filters, "scatter", good.channels, good.agg)
    with pytest.raises(SpecError):
        validate_spec(tampered, SCHEMA)
