"""Visualization state shared by the current view and every recommendation.

A spec is a small immutable value: which attributes are shown, which filter
predicates apply, and a mark plus channel assignment derived from the
attribute roles. Canonical keys give order-insensitive equality for
deduplication and promote references; diffs drive the changed-label
highlighting in clients.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

if TYPE_CHECKING:
    from .dataset import ColumnMeta

MARKS = ("bar", "histogram", "line", "scatter")


class SpecError(ValueError):
    """The spec references unknown columns or breaks structural rules."""


class EncodingError(SpecError):
    """The attribute combination has no supported mark."""


def _value_token(value) -> str:
    # Stable textual form for a filter value; used in sort keys and canonical keys.
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class FilterPredicate:
    """Equality predicate on one dimension: attribute == value."""

    attribute: str
    value: object

    def sort_key(self) -> tuple[str, str]:
        return (self.attribute, _value_token(self.value))

    def to_json(self) -> dict:
        return {"attr": self.attribute, "value": self.value}


@dataclass(frozen=True)
class VizSpec:
    """One visualization state: 1-3 attributes, filters, mark, channels.

    attrs and filters are kept sorted so structural equality and hashing
    coincide with set semantics. channels maps every attribute to exactly
    one of x/y/color; agg names the y aggregation (None for raw scatter
    points).
    """

    attrs: tuple[str, ...]
    filters: tuple[FilterPredicate, ...]
    mark: str
    channels: tuple[tuple[str, str], ...]
    agg: str | None

    def __post_init__(self):
        object.__setattr__(self, "attrs", tuple(sorted(self.attrs)))
        object.__setattr__(
            self, "filters", tuple(sorted(self.filters, key=FilterPredicate.sort_key))
        )
        object.__setattr__(self, "channels", tuple(sorted(self.channels)))

    # -- channel lookups ---------------------------------------------------
    def channel_of(self, attr: str) -> str | None:
        for name, channel in self.channels:
            if name == attr:
                return channel
        return None

    def attr_on(self, channel: str) -> str | None:
        for name, ch in self.channels:
            if ch == channel:
                return name
        return None

    @property
    def x_attr(self) -> str | None:
        return self.attr_on("x")

    @property
    def y_attr(self) -> str | None:
        return self.attr_on("y")

    @property
    def color_attr(self) -> str | None:
        return self.attr_on("color")

    @property
    def filter_attrs(self) -> frozenset[str]:
        return frozenset(f.attribute for f in self.filters)

    def with_filters(self, filters: Iterable[FilterPredicate]) -> "VizSpec":
        return VizSpec(self.attrs, tuple(filters), self.mark, self.channels, self.agg)

    def to_json(self) -> dict:
        return {
            "attrs": list(self.attrs),
            "filters": [f.to_json() for f in self.filters],
            "mark": self.mark,
            "channels": {name: ch for name, ch in self.channels},
            "agg": self.agg,
        }


@dataclass(frozen=True)
class SpecDiff:
    """Element-wise difference between two specs.

    A lone add paired with a lone remove is folded into a swap; filters on
    the same attribute with different values are reported as value swaps.
    """

    added: tuple[str, ...] = ()
    removed: tuple[str, ...] = ()
    swapped: tuple[tuple[str, str], ...] = ()
    added_filters: tuple[FilterPredicate, ...] = ()
    removed_filters: tuple[FilterPredicate, ...] = ()
    swapped_filters: tuple[tuple[FilterPredicate, FilterPredicate], ...] = ()

    def is_empty(self) -> bool:
        return not (
            self.added
            or self.removed
            or self.swapped
            or self.added_filters
            or self.removed_filters
            or self.swapped_filters
        )

    def to_json(self) -> dict:
        return {
            "added": list(self.added),
            "removed": list(self.removed),
            "swapped": [list(pair) for pair in self.swapped],
            "added_filters": [f.to_json() for f in self.added_filters],
            "removed_filters": [f.to_json() for f in self.removed_filters],
            "swapped_filters": [
                [old.to_json(), new.to_json()] for old, new in self.swapped_filters
            ],
        }


# --------------------------------------------------------------------------
# Encoding rules
# --------------------------------------------------------------------------

def _meta_lookup(schema) -> Mapping[str, "ColumnMeta"]:
    if isinstance(schema, Mapping):
        return schema
    return {meta.name: meta for meta in schema}


def auto_encode(
    attrs: Iterable[str],
    schema: Sequence["ColumnMeta"] | Mapping[str, "ColumnMeta"],
    filters: Iterable[FilterPredicate] = (),
) -> VizSpec:
    """Assign mark and channels from attribute roles.

    Supported combinations: one measure (histogram of counts), one dimension
    (count bar, or count line when temporal), dimension + measure (bar, or
    line when temporal), two measures (scatter), and two measures plus a
    dimension (scatter colored by the dimension). Anything else raises
    EncodingError. Filters are carried through unchanged.
    """
    lookup = _meta_lookup(schema)
    names = sorted(set(attrs))
    if not 1 <= len(names) <= 3:
        raise EncodingError(f"need 1-3 attributes, got {len(names)}")
    for name in names:
        if name not in lookup:
            raise SpecError(f"unknown attribute {name!r}")

    measures = [n for n in names if lookup[n].role == "measure"]
    dims = [n for n in names if lookup[n].role == "dimension"]

    def temporal(name: str) -> bool:
        return lookup[name].dtype == "temporal"

    if len(measures) == 1 and not dims:
        m = measures[0]
        return VizSpec(tuple(names), tuple(filters), "histogram", ((m, "x"),), "count")
    if len(dims) == 1 and not measures:
        d = dims[0]
        mark = "line" if temporal(d) else "bar"
        return VizSpec(tuple(names), tuple(filters), mark, ((d, "x"),), "count")
    if len(measures) == 1 and len(dims) == 1:
        d, m = dims[0], measures[0]
        mark = "line" if temporal(d) else "bar"
        channels = ((d, "x"), (m, "y"))
        return VizSpec(tuple(names), tuple(filters), mark, channels, lookup[m].default_agg)
    if len(measures) == 2 and not dims:
        x, y = sorted(measures)
        return VizSpec(tuple(names), tuple(filters), "scatter", ((x, "x"), (y, "y")), None)
    if len(measures) == 2 and len(dims) == 1:
        x, y = sorted(measures)
        channels = ((x, "x"), (y, "y"), (dims[0], "color"))
        return VizSpec(tuple(names), tuple(filters), "scatter", channels, None)
    raise EncodingError(
        f"unsupported combination: {len(measures)} measure(s) + {len(dims)} dimension(s)"
    )


def encodable(attrs: Iterable[str], schema) -> bool:
    """True when auto_encode accepts the attribute set."""
    try:
        auto_encode(attrs, schema)
    except SpecError:
        return False
    return True


def canonicalize(spec: VizSpec) -> str:
    """Order-insensitive stable key: mark, sorted attrs, sorted filters."""
    attrs = ",".join(spec.attrs)
    filters = ";".join(f"{f.attribute}={_value_token(f.value)}" for f in spec.filters)
    return f"{spec.mark}|{attrs}|{filters}"


def spec_diff(current: VizSpec | None, rec: VizSpec) -> SpecDiff:
    """Describe how ``rec`` differs from ``current`` (None means empty view)."""
    cur_attrs = set(current.attrs) if current else set()
    added = sorted(set(rec.attrs) - cur_attrs)
    removed = sorted(cur_attrs - set(rec.attrs))
    swapped: tuple[tuple[str, str], ...] = ()
    if len(added) == 1 and len(removed) == 1:
        swapped = ((removed[0], added[0]),)
        added, removed = [], []

    cur_filters = {f.attribute: f for f in current.filters} if current else {}
    rec_filters = {f.attribute: f for f in rec.filters}
    added_f, removed_f, swapped_f = [], [], []
    for attr in sorted(set(cur_filters) | set(rec_filters)):
        before, after = cur_filters.get(attr), rec_filters.get(attr)
        if before == after:
            continue
        if before is None:
            added_f.append(after)
        elif after is None:
            removed_f.append(before)
        else:
            swapped_f.append((before, after))
    return SpecDiff(
        added=tuple(added),
        removed=tuple(removed),
        swapped=swapped,
        added_filters=tuple(added_f),
        removed_filters=tuple(removed_f),
        swapped_filters=tuple(swapped_f),
    )


# --------------------------------------------------------------------------
# Wire format
# --------------------------------------------------------------------------

def spec_from_json(obj, schema) -> VizSpec:
    """Parse the JSON form and normalize through auto_encode.

    Mark and channels are always re-derived from the attribute roles, so a
    client cannot submit an inconsistent encoding.
    """
    if not isinstance(obj, Mapping):
        raise SpecError("spec must be a JSON object")
    attrs = obj.get("attrs")
    if not isinstance(attrs, (list, tuple)) or not all(isinstance(a, str) for a in attrs):
        raise SpecError("attrs must be a list of column names")
    if len(set(attrs)) != len(attrs):
        raise SpecError("attrs must not repeat")
    filters = []
    seen = set()
    for item in obj.get("filters", []) or []:
        if not isinstance(item, Mapping) or "attr" not in item or "value" not in item:
            raise SpecError("each filter needs attr and value")
        attr = item["attr"]
        if attr in seen:
            raise SpecError(f"duplicate filter on {attr!r}")
        if not isinstance(item["value"], (str, int, float)) or isinstance(item["value"], bool):
            raise SpecError(f"filter value for {attr!r} must be a string or number")
        seen.add(attr)
        filters.append(FilterPredicate(attr, item["value"]))
    lookup = _meta_lookup(schema)
    for f in filters:
        meta = lookup.get(f.attribute)
        if meta is None:
            raise SpecError(f"unknown filter attribute {f.attribute!r}")
        if meta.role != "dimension":
            raise SpecError(f"filter attribute {f.attribute!r} is not a dimension")
    return auto_encode(attrs, lookup, filters)


def validate_spec(spec: VizSpec, schema) -> None:
    """Check a spec against a schema; raises SpecError when inconsistent."""
    lookup = _meta_lookup(schema)
    for f in spec.filters:
        meta = lookup.get(f.attribute)
        if meta is None:
            raise SpecError(f"unknown filter attribute {f.attribute!r}")
        if meta.role != "dimension":
            raise SpecError(f"filter attribute {f.attribute!r} is not a dimension")
    reencoded = auto_encode(spec.attrs, lookup, spec.filters)
    if reencoded.mark != spec.mark or reencoded.channels != spec.channels:
        raise SpecError("mark/channels inconsistent with attribute roles")
