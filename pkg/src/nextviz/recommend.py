"""Category orchestration: gating, ranking, dedup, and the baseline mode.

Builds the full recommendation response for a (dataset, current view)
pair: decide which categories apply, enumerate and score their candidates,
rank and truncate to top-k, suppress cross-category duplicates, and
optionally flatten everything into the shuffled single-list baseline.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from . import actions
from .actions import (
    CATEGORY_BY_KIND,
    CATEGORY_PRECEDENCE,
    CORRELATION,
    DISTRIBUTION,
    ENHANCE,
    FILTER,
    GENERALIZE,
    PIVOT,
    SIMILARITY,
    ActionCategory,
)
from .dataset import ColumnMeta, Dataset
from .objectives import InterestingnessScore
from .scoring import ScoringConfig, score_viz
from .specs import (
    FilterPredicate,
    SpecDiff,
    VizSpec,
    canonicalize,
    spec_diff,
    spec_from_json,
)


@dataclass(frozen=True)
class RecommenderConfig:
    """Knobs shared by the library API, the CLI, and the HTTP service."""

    k: int = 10
    metric: str = "spearman"  # spearman | mi
    mi_bins: int = 10
    cardinality_cap: int = 50
    silhouette_cap: int = 2000
    similarity_direction: str = "similar"  # similar | different
    category_order_seed: int | None = None
    baseline: bool = False
    baseline_seed: int = 0
    enabled_kinds: frozenset[str] | None = None  # None = all categories on

    @property
    def scoring(self) -> ScoringConfig:
        return ScoringConfig(self.metric, self.mi_bins, self.silhouette_cap)


DEFAULT_CONFIG = RecommenderConfig()


@dataclass(frozen=True)
class RecommendationItem:
    spec: VizSpec
    score: InterestingnessScore
    diff: SpecDiff
    key: str

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "spec": self.spec.to_json(),
            "score": {
                "value": self.score.value,
                "objective": self.score.objective,
                "higher_is_better": self.score.higher_is_better,
            },
            "diff": self.diff.to_json(),
        }


@dataclass(frozen=True)
class RecommendationCategory:
    category: ActionCategory
    items: tuple[RecommendationItem, ...]
    k: int

    def to_json(self) -> dict:
        return {
            "category": self.category.to_json(),
            "k": self.k,
            "items": [item.to_json() for item in self.items],
        }


@dataclass(frozen=True)
class RecommendationSet:
    mode: str  # categorized | baseline
    categories: tuple[RecommendationCategory, ...] = ()
    items: tuple[RecommendationItem, ...] = ()  # baseline flat list

    def all_items(self) -> tuple[RecommendationItem, ...]:
        if self.mode == "baseline":
            return self.items
        return tuple(item for cat in self.categories for item in cat.items)

    def to_json(self) -> dict:
        out: dict = {"mode": self.mode}
        if self.mode == "baseline":
            out["items"] = [item.to_json() for item in self.items]
        else:
            out["categories"] = [cat.to_json() for cat in self.categories]
        return out


def applicable_categories(
    view: VizSpec | None, schema: Sequence[ColumnMeta]
) -> list[ActionCategory]:
    """Context gating: overview categories only for an empty view,
    operational categories plus similarity once any attribute is selected."""
    if view is None or not view.attrs:
        return [CORRELATION, DISTRIBUTION]
    out = []
    n_attrs = len(view.attrs)
    if 1 <= n_attrs <= 2 and n_attrs < len(schema):
        out.append(ENHANCE)
    out.append(FILTER)
    if n_attrs >= 2 or view.filters:
        out.append(GENERALIZE)
    if n_attrs < len(schema):
        out.append(PIVOT)
    if view.mark in actions.COMPARABLE_MARKS:
        out.append(SIMILARITY)
    return out


def _enumerate(
    cat: ActionCategory,
    view: VizSpec | None,
    ds: Dataset,
    config: RecommenderConfig,
) -> list[VizSpec]:
    schema = ds.columns
    cap = config.cardinality_cap
    if cat.kind == "enhance":
        return actions.enhance(view, schema)
    if cat.kind == "filter":
        # Consolidated action: swap values when a filter exists, else drill down.
        if view.filters:
            return actions.filter_swap(view, schema, ds)
        return actions.filter_add(view, schema, ds, cap)
    if cat.kind == "generalize":
        return actions.generalize(view, schema)
    if cat.kind == "pivot":
        return actions.pivot(view, schema)
    if cat.kind == "similarity":
        return actions.similarity_candidates(view, schema, ds, cap)
    if cat.kind == "correlation":
        return actions.correlation_candidates(schema)
    if cat.kind == "distribution":
        return actions.distribution_candidates(schema, cap)
    raise ValueError(f"unknown category kind {cat.kind!r}")


def generate_category(
    cat: ActionCategory,
    view: VizSpec | None,
    ds: Dataset,
    k: int = 10,
    config: RecommenderConfig = DEFAULT_CONFIG,
    exclude: frozenset[str] = frozenset(),
) -> RecommendationCategory | None:
    """Enumerate, score, rank, and truncate one category.

    Candidates with undefined scores are dropped, as are canonical keys
    already claimed by a higher-precedence category. Returns None instead
    of an empty category.
    """
    scored: list[tuple[InterestingnessScore, str, VizSpec]] = []
    memo: dict = {}
    for candidate in _enumerate(cat, view, ds, config):
        key = canonicalize(candidate)
        if key in exclude:
            continue
        score = score_viz(candidate, view, ds, cat, config.scoring, memo)
        if score is None:
            continue
        scored.append((score, key, candidate))
    if not scored:
        return None

    ascending = scored[0][0].higher_is_better is False
    if cat.kind == "similarity" and config.similarity_direction == "different":
        ascending = not ascending
    scored.sort(key=lambda t: (t[0].value if ascending else -t[0].value, t[1]))

    items = tuple(
        RecommendationItem(spec, score, spec_diff(view, spec), key)
        for score, key, spec in scored[:k]
    )
    return RecommendationCategory(cat, items, k)


def recommend(
    view: VizSpec | None, ds: Dataset, config: RecommenderConfig = DEFAULT_CONFIG
) -> RecommendationSet:
    """Full recommendation pass over all applicable categories.

    Categories are generated in fixed precedence order so that a spec
    appearing in two categories is kept only by the higher-precedence one.
    Display order defaults to that same precedence; a category_order_seed
    shuffles it (the per-user randomization hook). Baseline mode flattens
    the result afterwards.
    """
    applicable = {c.kind for c in applicable_categories(view, ds.columns)}
    if config.enabled_kinds is not None:
        applicable &= config.enabled_kinds

    categories: list[RecommendationCategory] = []
    claimed: set[str] = set()
    for cat in CATEGORY_PRECEDENCE:
        if cat.kind not in applicable:
            continue
        generated = generate_category(cat, view, ds, config.k, config, frozenset(claimed))
        if generated is None:
            continue
        categories.append(generated)
        claimed.update(item.key for item in generated.items)

    if config.category_order_seed is not None:
        rng = random.Random(config.category_order_seed)
        _fisher_yates(categories, rng)

    result = RecommendationSet("categorized", tuple(categories))
    if config.baseline:
        return flatten_baseline(result, config.baseline_seed)
    return result


def _fisher_yates(items: list, rng: random.Random) -> None:
    for i in range(len(items) - 1, 0, -1):
        j = rng.randrange(i + 1)
        items[i], items[j] = items[j], items[i]


def flatten_baseline(recset: RecommendationSet, seed: int) -> RecommendationSet:
    """Strip category structure: one flat list, order shuffled by the seed.

    The multiset of recommendations is exactly the categorized output's;
    only labels and ordering change.
    """
    if recset.mode != "categorized":
        raise ValueError("flatten_baseline expects a categorized set")
    items = [item for cat in recset.categories for item in cat.items]
    _fisher_yates(items, random.Random(seed))
    return RecommendationSet("baseline", (), tuple(items))


def recset_from_json(obj: dict, schema) -> RecommendationSet:
    """Inverse of RecommendationSet.to_json (charts are not part of the
    value; they are a serialization add-on)."""

    def predicate(raw: dict) -> FilterPredicate:
        return FilterPredicate(raw["attr"], raw["value"])

    def item(raw: dict) -> RecommendationItem:
        score = raw["score"]
        diff = raw["diff"]
        return RecommendationItem(
            spec=spec_from_json(raw["spec"], schema),
            score=InterestingnessScore(
                score["value"], score["objective"], score["higher_is_better"]
            ),
            diff=SpecDiff(
                added=tuple(diff["added"]),
                removed=tuple(diff["removed"]),
                swapped=tuple((a, b) for a, b in diff["swapped"]),
                added_filters=tuple(predicate(f) for f in diff["added_filters"]),
                removed_filters=tuple(predicate(f) for f in diff["removed_filters"]),
                swapped_filters=tuple(
                    (predicate(old), predicate(new)) for old, new in diff["swapped_filters"]
                ),
            ),
            key=raw["key"],
        )

    if obj["mode"] == "baseline":
        return RecommendationSet("baseline", (), tuple(item(o) for o in obj["items"]))
    categories = tuple(
        RecommendationCategory(
            CATEGORY_BY_KIND[raw["category"]["kind"]],
            tuple(item(o) for o in raw["items"]),
            raw["k"],
        )
        for raw in obj["categories"]
    )
    return RecommendationSet("categorized", categories)
