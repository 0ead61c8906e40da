"""Scoring dispatch: route a candidate spec to the right objective.

The objective is picked from the candidate's chart type and filter state,
with three category-level overrides: the similarity family always scores
distance to the current view, the distribution overview scores skew, and
the correlation overview scores dependence between the two measures.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import objectives
from .actions import ActionCategory
from .dataset import Dataset, aggregate
from .objectives import InterestingnessScore
from .specs import VizSpec


@dataclass(frozen=True)
class ScoringConfig:
    metric: str = "spearman"  # spearman | mi
    mi_bins: int = 10
    silhouette_cap: int = 2000


DEFAULT_SCORING = ScoringConfig()


def _strided(n: int, cap: int) -> np.ndarray:
    """Deterministic stride subsample of range(n) with at most cap members."""
    if n <= cap:
        return np.arange(n)
    step = int(np.ceil(n / cap))
    return np.arange(0, n, step)


def _dependence(ds: Dataset, spec: VizSpec, config: ScoringConfig) -> float | None:
    """|rank correlation| or mutual information of an uncolored scatter."""
    x, y = spec.x_attr, spec.y_attr
    if not spec.filters and config.metric == "spearman":
        r = ds.measure_correlation(x, y)
        return None if r is None else abs(r)
    mask = ds.filter_mask(spec.filters)
    keep = mask & ~ds.null_mask(x) & ~ds.null_mask(y)
    xs = ds.numeric_values(x, keep)
    ys = ds.numeric_values(y, keep)
    if config.metric == "mi":
        return objectives.mutual_information(xs, ys, config.mi_bins)
    r = objectives.spearman(xs, ys)
    return None if r is None else abs(r)


def _separability(ds: Dataset, spec: VizSpec, config: ScoringConfig) -> float | None:
    # straight from the column arrays; converting 50k points through the
    # chart payload would dominate the scoring cost
    x, y, color = spec.x_attr, spec.y_attr, spec.color_attr
    mask = ds.filter_mask(spec.filters)
    mask &= ~ds.null_mask(x) & ~ds.null_mask(y) & ~ds.null_mask(color)
    if not mask.any():
        return None
    xs = ds.numeric_values(x, mask)
    ys = ds.numeric_values(y, mask)
    codes = ds.dimension_codes(color, mask)
    idx = _strided(xs.size, config.silhouette_cap)
    points = np.column_stack(
        [objectives.minmax_scaled(xs[idx]), objectives.minmax_scaled(ys[idx])]
    )
    return objectives.separability(points, codes[idx])


def _distribution_skew(ds: Dataset, spec: VizSpec) -> float | None:
    """Skew of the shown distribution: raw values for a measure histogram,
    per-category counts for a dimension count chart."""
    attr = spec.x_attr
    if ds.meta(attr).role == "measure":
        mask = ds.filter_mask(spec.filters)
        return objectives.skewness(ds.numeric_values(attr, mask))
    agg = aggregate(ds, spec)
    if agg.is_empty:
        return None
    return objectives.skewness(np.asarray(agg.y_values, dtype=float))


def score_viz(
    candidate: VizSpec,
    current: VizSpec | None,
    ds: Dataset,
    category: ActionCategory | None = None,
    config: ScoringConfig = DEFAULT_SCORING,
    memo: dict | None = None,
) -> InterestingnessScore | None:
    """Score one candidate; None means the candidate should be dropped.

    Dispatch table (category overrides first, then chart type):
      similarity            -> euclidean distance to the current view (asc)
      distribution          -> skew
      correlation           -> dependence of the measure pair
      colored scatter       -> separability
      uncolored scatter     -> dependence
      bar/line/histogram    -> deviation when filtered, else non-uniformity

    memo, when given, caches shared reference aggregates (the current view,
    the unfiltered counterpart of filtered charts) across one ranking pass.
    """
    kind = category.kind if category is not None else None

    if kind == "similarity":
        if current is None:
            return None
        dist = objectives.euclidean_similarity(
            aggregate(ds, candidate), _memoized_aggregate(ds, current, memo)
        )
        if dist is None:
            return None
        return InterestingnessScore(dist, "similarity_distance", higher_is_better=False)

    if kind == "distribution":
        value = _distribution_skew(ds, candidate)
        return None if value is None else InterestingnessScore(value, "skew")

    if kind == "correlation" or candidate.mark == "scatter":
        if candidate.color_attr is not None:
            value = _separability(ds, candidate, config)
            return None if value is None else InterestingnessScore(value, "separability")
        value = _dependence(ds, candidate, config)
        return None if value is None else InterestingnessScore(value, "correlation")

    # bar / line / histogram
    agg = aggregate(ds, candidate)
    if agg.is_empty:
        return None
    if candidate.filters:
        overall = _memoized_aggregate(ds, candidate.with_filters(()), memo)
        value = objectives.deviation(agg, overall)
        return None if value is None else InterestingnessScore(value, "deviation")
    value = objectives.non_uniformity(agg)
    return None if value is None else InterestingnessScore(value, "non_uniformity")


def _memoized_aggregate(ds: Dataset, spec: VizSpec, memo: dict | None):
    if memo is None:
        return aggregate(ds, spec)
    result = memo.get(spec)
    if result is None:
        result = aggregate(ds, spec)
        memo[spec] = result
    return result
