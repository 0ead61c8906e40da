import json

import numpy as np
import pytest

from nextviz.actions import ENHANCE, FILTER, SIMILARITY
from nextviz.dataset import from_columns
from nextviz.recommend import (
    RecommenderConfig,
    applicable_categories,
    flatten_baseline,
    generate_category,
    recommend,
    recset_from_json,
)
from nextviz.specs import FilterPredicate, auto_encode

from fuzzing import random_dataset, random_view


def kinds(categories):
    return [c.kind for c in categories]


def test_empty_view_shows_exactly_the_overview_categories(cars, college):
    for ds in (cars, college):
        assert kinds(applicable_categories(None, ds.columns)) == ["correlation", "distribution"]
        recset = recommend(None, ds)
        assert [c.category.kind for c in recset.categories] == ["correlation", "distribution"]


def test_single_measure_view_has_enhance_but_no_correlation(cars):
    for measure in cars.measures:
        view = auto_encode((measure,), cars.schema)
        ks = kinds(applicable_categories(view, cars.columns))
        assert "enhance" in ks and "correlation" not in ks and "distribution" not in ks


def test_single_dimension_view_has_pivot_but_no_distribution(cars):
    for dim in cars.dimensions:
        view = auto_encode((dim,), cars.schema)
        ks = kinds(applicable_categories(view, cars.columns))
        assert "pivot" in ks and "distribution" not in ks and "correlation" not in ks


def test_similarity_only_for_comparable_marks(cars):
    bar = auto_encode(("Cylinders", "MPG"), cars.schema)
    scatter = auto_encode(("Horsepower", "Weight"), cars.schema)
    assert "similarity" in kinds(applicable_categories(bar, cars.columns))
    assert "similarity" not in kinds(applicable_categories(scatter, cars.columns))


def test_filter_category_modes(cars):
    # no filter in the view: drill-down candidates
    view = auto_encode(("Cylinders", "Horsepower"), cars.schema)
    cat = generate_category(FILTER, view, cars, k=100)
    assert cat is not None
    assert all(len(item.spec.filters) == 1 for item in cat.items)
    assert all(item.diff.added_filters for item in cat.items)

    # filter in place: value swaps only, attribute fixed
    filtered = view.with_filters([FilterPredicate("Origin", "USA")])
    cat = generate_category(FILTER, filtered, cars, k=100)
    assert cat is not None
    for item in cat.items:
        assert item.spec.filter_attrs == {"Origin"}
        assert item.spec.filters[0].value != "USA"
        assert item.diff.swapped_filters


def test_k_truncates_without_padding(cars):
    view = auto_encode(("Cylinders", "Horsepower"), cars.schema)
    big = generate_category(ENHANCE, view, cars, k=100)
    small = generate_category(ENHANCE, view, cars, k=2)
    assert len(small.items) == 2
    assert len(big.items) < 100  # all candidates, no padding
    assert [i.key for i in small.items] == [i.key for i in big.items[:2]]


def test_items_sorted_by_score_with_lexicographic_ties(college):
    view = auto_encode(("SATAverage", "AverageCost"), college.schema)
    recset = recommend(view, college)
    for cat in recset.categories:
        ascending = not cat.items[0].score.higher_is_better
        values = [i.score.value for i in cat.items]
        assert values == sorted(values, reverse=not ascending)
        for a, b in zip(cat.items, cat.items[1:]):
            if a.score.value == b.score.value:
                assert a.key < b.key


def test_cost_sat_scatter_state_has_filter_and_enhance_rows(college):
    view = auto_encode(("SATAverage", "AverageCost"), college.schema)
    recset = recommend(view, college)
    by_kind = {c.category.kind: c for c in recset.categories}
    assert "filter" in by_kind and "enhance" in by_kind
    enhance_specs = [item.spec for item in by_kind["enhance"].items]
    assert any(s.color_attr == "FundingModel" for s in enhance_specs)


def test_cross_category_dedup(college, cars):
    rng = np.random.default_rng(17)
    datasets = [college, cars]
    for ds in datasets:
        for attrs in [("SATAverage",) if ds is college else ("MPG",), None]:
            view = auto_encode(attrs, ds.schema) if attrs else None
            recset = recommend(view, ds, RecommenderConfig(k=8))
            seen = set()
            for cat in recset.categories:
                assert cat.items  # no empty categories
                for item in cat.items:
                    assert item.key not in seen
                    seen.add(item.key)
    # fuzzed views as well
    for _ in range(10):
        ds = random_dataset(rng)
        view = random_view(rng, ds)
        recset = recommend(view, ds, RecommenderConfig(k=5))
        seen = set()
        for cat in recset.categories:
            assert cat.items
            for item in cat.items:
                assert item.key not in seen
                seen.add(item.key)


def test_similarity_direction_toggle(cars):
    view = auto_encode(("Cylinders", "MPG"), cars.schema)
    near = recommend(view, cars, RecommenderConfig(k=500, similarity_direction="similar"))
    far = recommend(view, cars, RecommenderConfig(k=500, similarity_direction="different"))
    sim_near = [c for c in near.categories if c.category.kind == "similarity"][0]
    sim_far = [c for c in far.categories if c.category.kind == "similarity"][0]
    assert [i.key for i in sim_far.items] == [i.key for i in reversed(sim_near.items)]


def test_category_order_seed_shuffles_display_only(college):
    view = auto_encode(("SATAverage",), college.schema)
    plain = recommend(view, college)
    shuffled = recommend(view, college, RecommenderConfig(category_order_seed=13))
    again = recommend(view, college, RecommenderConfig(category_order_seed=13))
    assert [c.category.kind for c in shuffled.categories] == [
        c.category.kind for c in again.categories
    ]
    assert sorted(kinds(c.category for c in shuffled.categories)) == sorted(
        kinds(c.category for c in plain.categories)
    )
    by_kind_plain = {c.category.kind: c.items for c in plain.categories}
    by_kind_shuffled = {c.category.kind: c.items for c in shuffled.categories}
    assert by_kind_plain == by_kind_shuffled


def test_flatten_baseline_preserves_multiset_and_is_seeded(college):
    view = auto_encode(("SATAverage", "AverageCost"), college.schema)
    categorized = recommend(view, college)
    flat_a = flatten_baseline(categorized, seed=7)
    flat_b = flatten_baseline(categorized, seed=7)
    assert flat_a == flat_b
    assert flat_a.mode == "baseline" and not flat_a.categories
    assert sorted(i.key for i in flat_a.items) == sorted(
        i.key for i in categorized.all_items()
    )

    orders = {tuple(i.key for i in flatten_baseline(categorized, seed=s).items) for s in range(100)}
    assert len(orders) == 100  # distinct permutations across 100 seeds


def test_flatten_requires_categorized_input(college):
    flat = recommend(None, college, RecommenderConfig(baseline=True, baseline_seed=3))
    assert flat.mode == "baseline"
    with pytest.raises(ValueError):
        flatten_baseline(flat, seed=1)


def test_enabled_kinds_filter(college):
    view = auto_encode(("SATAverage",), college.schema)
    only_enhance = recommend(
        view, college, RecommenderConfig(enabled_kinds=frozenset({"enhance"}))
    )
    assert [c.category.kind for c in only_enhance.categories] == ["enhance"]


def test_recommend_is_deterministic_end_to_end(cars):
    view = auto_encode(("Cylinders", "MPG"), cars.schema, [FilterPredicate("Origin", "USA")])
    config = RecommenderConfig(k=6, baseline=True, baseline_seed=11)
    a = recommend(view, cars, config)
    b = recommend(view, cars, config)
    assert a == b


def test_recommendation_set_json_round_trip(cars):
    view = auto_encode(("Cylinders", "MPG"), cars.schema, [FilterPredicate("Origin", "USA")])
    for config in (RecommenderConfig(k=4), RecommenderConfig(k=4, baseline=True, baseline_seed=2)):
        recset = recommend(view, cars, config)
        wire = json.loads(json.dumps(recset.to_json()))
        assert recset_from_json(wire, cars.schema) == recset


def test_value_swap_surfaces_other_subpopulations(medals):
    # age histogram filtered to one country: the filter row offers every
    # other country, and the planted outlier population ranks highest
    view = auto_encode(("Age",), medals.schema, [FilterPredicate("Country", "Russia")])
    recset = recommend(view, medals, RecommenderConfig(k=50))
    filter_cat = [c for c in recset.categories if c.category.kind == "filter"][0]
    values = [item.spec.filters[0].value for item in filter_cat.items]
    assert "Italy" in values
    assert values[0] == "Italy"  # oldest medalists deviate most


def test_gating_soundness_on_fuzz_corpus():
    rng = np.random.default_rng(23)
    for _ in range(15):
        ds = random_dataset(rng)
        view = random_view(rng, ds)
        recset = recommend(view, ds, RecommenderConfig(k=4))
        admitted = {c.kind for c in applicable_categories(view, ds.columns)}
        for cat in recset.categories:
            assert cat.category.kind in admitted
            assert 1 <= len(cat.items) <= 4
