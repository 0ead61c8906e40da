"""Candidate enumeration for the analytical actions.

Each enumerator turns the current view into the set of specs reachable by
one move on the attribute hierarchy (add/remove/swap an attribute) or the
value hierarchy (add/remove/swap a filter), plus the context-independent
overview actions and the same-axes similarity family. Enumeration is
exhaustive and deterministic: results come back sorted by canonical key,
never include the current view, and retain the view's filters everywhere
except in the filter action itself.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .dataset import ColumnMeta, Dataset
from .specs import (
    EncodingError,
    FilterPredicate,
    VizSpec,
    auto_encode,
    canonicalize,
)

DEFAULT_CARDINALITY_CAP = 50

COMPARABLE_MARKS = ("bar", "line", "histogram")


@dataclass(frozen=True)
class ActionCategory:
    """A display category and the underlying actions consolidated into it."""

    kind: str
    sub_kinds: tuple[str, ...]
    context_dependent: bool = True

    def to_json(self) -> dict:
        return {"kind": self.kind, "sub_kinds": list(self.sub_kinds)}


ENHANCE = ActionCategory("enhance", ("enhance",))
FILTER = ActionCategory("filter", ("filter_add", "filter_swap"))
GENERALIZE = ActionCategory("generalize", ("generalize_attribute", "generalize_value"))
PIVOT = ActionCategory("pivot", ("pivot",))
SIMILARITY = ActionCategory("similarity", ("similarity", "difference"))
CORRELATION = ActionCategory("correlation", ("correlation",), context_dependent=False)
DISTRIBUTION = ActionCategory("distribution", ("distribution",), context_dependent=False)

# Fixed precedence: operational context beats generic context. Used both as
# the default display order and as the cross-category deduplication order.
CATEGORY_PRECEDENCE = (ENHANCE, FILTER, GENERALIZE, PIVOT, SIMILARITY, CORRELATION, DISTRIBUTION)
CATEGORY_BY_KIND = {c.kind: c for c in CATEGORY_PRECEDENCE}


def _sorted_unique(view: VizSpec | None, specs: list[VizSpec]) -> list[VizSpec]:
    """Drop the current view and duplicates; order by canonical key."""
    skip = {canonicalize(view)} if view is not None else set()
    out: dict[str, VizSpec] = {}
    for spec in specs:
        key = canonicalize(spec)
        if key not in skip and key not in out:
            out[key] = spec
    return [out[k] for k in sorted(out)]


def filterable_dimensions(
    schema: Sequence[ColumnMeta], cap: int = DEFAULT_CARDINALITY_CAP
) -> list[ColumnMeta]:
    """Dimensions usable in filter/distribution enumeration (cardinality-capped)."""
    return [m for m in schema if m.role == "dimension" and 1 <= m.cardinality <= cap]


def enhance(view: VizSpec, schema: Sequence[ColumnMeta]) -> list[VizSpec]:
    """Add one attribute to the view; filters are retained on every candidate."""
    if not 1 <= len(view.attrs) <= 2:
        return []
    out = []
    for meta in schema:
        if meta.name in view.attrs:
            continue
        try:
            out.append(auto_encode(view.attrs + (meta.name,), schema, view.filters))
        except EncodingError:
            continue
    return _sorted_unique(view, out)


def filter_add(
    view: VizSpec,
    schema: Sequence[ColumnMeta],
    ds: Dataset,
    cap: int = DEFAULT_CARDINALITY_CAP,
) -> list[VizSpec]:
    """Drill down: one candidate per (unfiltered, undisplayed dimension, value)."""
    if not view.attrs:
        return []
    out = []
    for meta in filterable_dimensions(schema, cap):
        if meta.name in view.attrs or meta.name in view.filter_attrs:
            continue
        for value in ds.distinct_values(meta.name):
            predicate = FilterPredicate(meta.name, value)
            out.append(view.with_filters(view.filters + (predicate,)))
    return _sorted_unique(view, out)


def filter_swap(view: VizSpec, schema: Sequence[ColumnMeta], ds: Dataset) -> list[VizSpec]:
    """Swap one filter's value, keeping its attribute and everything else fixed."""
    out = []
    for f in view.filters:
        others = tuple(g for g in view.filters if g is not f)
        for value in ds.distinct_values(f.attribute):
            if value == f.value:
                continue
            out.append(view.with_filters(others + (FilterPredicate(f.attribute, value),)))
    return _sorted_unique(view, out)


def generalize(view: VizSpec, schema: Sequence[ColumnMeta]) -> list[VizSpec]:
    """Roll up: remove one attribute or one filter, re-encoding the remainder."""
    out = []
    if len(view.attrs) >= 2:
        for attr in view.attrs:
            remaining = tuple(a for a in view.attrs if a != attr)
            try:
                out.append(auto_encode(remaining, schema, view.filters))
            except EncodingError:
                continue
    for f in view.filters:
        others = tuple(g for g in view.filters if g is not f)
        out.append(view.with_filters(others))
    return _sorted_unique(view, out)


def pivot(view: VizSpec, schema: Sequence[ColumnMeta]) -> list[VizSpec]:
    """Swap one displayed attribute for one outside the view.

    Attributes carrying a filter are not offered as replacements, so a
    pivot never lands on a spec that both displays and filters one column.
    """
    if not view.attrs:
        return []
    out = []
    for old in view.attrs:
        rest = tuple(a for a in view.attrs if a != old)
        for meta in schema:
            if meta.name in view.attrs or meta.name in view.filter_attrs:
                continue
            try:
                out.append(auto_encode(rest + (meta.name,), schema, view.filters))
            except EncodingError:
                continue
    return _sorted_unique(view, out)


def correlation_candidates(schema: Sequence[ColumnMeta]) -> list[VizSpec]:
    """One uncolored scatter per unordered measure pair."""
    measures = [m.name for m in schema if m.role == "measure"]
    out = []
    for i in range(len(measures)):
        for j in range(i + 1, len(measures)):
            out.append(auto_encode((measures[i], measures[j]), schema))
    return _sorted_unique(None, out)


def distribution_candidates(
    schema: Sequence[ColumnMeta], cap: int = DEFAULT_CARDINALITY_CAP
) -> list[VizSpec]:
    """Univariate overview: a histogram per measure, a count chart per dimension."""
    out = []
    for meta in schema:
        if meta.role == "measure":
            out.append(auto_encode((meta.name,), schema))
    for meta in filterable_dimensions(schema, cap):
        out.append(auto_encode((meta.name,), schema))
    return _sorted_unique(None, out)


def similarity_candidates(
    view: VizSpec,
    schema: Sequence[ColumnMeta],
    ds: Dataset,
    cap: int = DEFAULT_CARDINALITY_CAP,
) -> list[VizSpec]:
    """The comparable family: same mark and x attribute, different y or filters.

    Covers every y choice (count, or any measure that stays encodable) and
    either the view's exact filters or the view's filters plus one extra
    predicate, so retained filters are never dropped. Scatter views have no
    defined similarity metric and yield nothing.
    """
    if view.mark not in COMPARABLE_MARKS or view.x_attr is None:
        return []
    x = view.x_attr
    lookup = {m.name: m for m in schema}

    y_options: list[str | None]
    if view.mark == "histogram":
        y_options = [None]  # count of the binned measure; only filters vary
    else:
        measures = [m.name for m in schema if m.role == "measure"]
        y_options = [None] + measures

    filter_options: list[tuple[FilterPredicate, ...]] = [view.filters]
    filtered_attrs = view.filter_attrs
    for meta in filterable_dimensions(schema, cap):
        if meta.name == x or meta.name in filtered_attrs:
            continue
        for value in ds.distinct_values(meta.name):
            filter_options.append(view.filters + (FilterPredicate(meta.name, value),))

    out = []
    for y in y_options:
        attrs = (x,) if y is None else (x, y)
        if y is not None and (y == x or y not in lookup):
            continue
        for filters in filter_options:
            try:
                candidate = auto_encode(attrs, schema, filters)
            except EncodingError:
                continue
            if candidate.mark != view.mark:
                continue
            out.append(candidate)
    return _sorted_unique(view, out)
