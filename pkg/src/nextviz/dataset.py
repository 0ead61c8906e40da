"""Tabular data loading, schema inference, and aggregation for chart specs.

A Dataset is an immutable snapshot: columns are parsed once into numpy
arrays (float values for quantitative/ordinal/temporal columns, integer
category codes for dimensions) so that query evaluation over any spec is a
couple of vectorized passes. All reads are pure and safely shareable.
"""
from __future__ import annotations

import csv
import io
import json
import math
import threading
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from typing import Iterable, Mapping, Sequence

import numpy as np

from .objectives import spearman
from .specs import SpecError, VizSpec

HISTOGRAM_BINS = 10
DEFAULT_NULL_TOKENS = frozenset({"", "na", "n/a", "nan", "null", "none"})

# Accepted date layouts for temporal columns. Plain numbers (including
# year-like integers) are always classified as numeric, never temporal.
DATE_FORMATS = (
    "%Y-%m-%d",
    "%Y/%m/%d",
    "%m/%d/%Y",
    "%Y-%m-%dT%H:%M:%S",
    "%Y-%m-%d %H:%M:%S",
    "%Y-%m",
)


class DatasetError(ValueError):
    """Raised for unusable input: empty files, duplicate or unknown columns."""


@dataclass(frozen=True)
class ColumnMeta:
    """Per-column metadata driving encoding, enumeration, and scoring."""

    name: str
    dtype: str  # quantitative | nominal | ordinal | temporal
    role: str  # measure | dimension
    cardinality: int
    min: float | None = None
    max: float | None = None
    default_agg: str = "count"  # mean | sum | count

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dtype": self.dtype,
            "role": self.role,
            "cardinality": self.cardinality,
            "min": self.min,
            "max": self.max,
            "default_agg": self.default_agg,
        }


@dataclass(frozen=True)
class AggregatedData:
    """Materialized data behind one spec.

    For bar/line/histogram charts, x_labels holds group labels or bin
    labels and y_values the aggregated series. For scatter, x_labels and
    y_values are the raw point coordinates and series_key the per-point
    color label (None when uncolored). n_underlying counts the rows that
    passed the filters with non-null values in every referenced column.
    """

    x_labels: tuple
    y_values: tuple
    series_key: tuple | None
    n_underlying: int

    @property
    def is_empty(self) -> bool:
        return self.n_underlying == 0

    def to_json(self) -> dict:
        return {
            "x": list(self.x_labels),
            "y": list(self.y_values),
            "color": list(self.series_key) if self.series_key is not None else None,
            "n": self.n_underlying,
        }


@dataclass(frozen=True)
class LoadOptions:
    delimiter: str = ","
    null_tokens: frozenset[str] = DEFAULT_NULL_TOKENS
    # Per-column overrides: name -> {"dtype": ..., "role": ..., "default_agg": ...}
    schema_overrides: Mapping[str, Mapping[str, str]] | None = None


@dataclass
class _Column:
    """Internal storage for one parsed column."""

    meta: ColumnMeta
    numeric: np.ndarray | None  # float values (quantitative/ordinal/temporal)
    null_mask: np.ndarray  # True where the cell is null
    codes: np.ndarray | None = None  # dimension category codes, -1 for null
    categories: tuple = ()  # sorted distinct display values
    category_index: Mapping = field(default_factory=dict)


def _parse_float(token: str) -> float | None:
    try:
        value = float(token)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def _parse_date(token: str) -> datetime | None:
    for fmt in DATE_FORMATS:
        try:
            return datetime.strptime(token, fmt)
        except ValueError:
            continue
    return None


_EPOCH = datetime(1970, 1, 1)


def _naive_epoch(dt: datetime) -> float:
    # Naive datetimes are taken as UTC; avoids local-timezone drift.
    return (dt.replace(tzinfo=None) - _EPOCH).total_seconds()


def _display_number(value: float):
    # Integral floats surface as ints so filter values and labels read naturally.
    if float(value).is_integer():
        return int(value)
    return float(value)


def _iso_label(epoch: float) -> str:
    dt = _EPOCH + timedelta(seconds=epoch)
    if dt.hour == dt.minute == dt.second == 0:
        return dt.strftime("%Y-%m-%d")
    return dt.strftime("%Y-%m-%dT%H:%M:%S")


def _measure_threshold(row_count: int) -> float:
    return max(12.0, 0.01 * row_count)


def _classify_cells(cells: list) -> tuple[str, list]:
    """Decide the base kind of a raw column and parse its cells.

    Returns one of ("numeric", values) with floats, ("temporal", values)
    with epoch seconds, or ("nominal", values) with strings; nulls stay None.
    """
    non_null = [c for c in cells if c is not None]
    if not non_null:
        return "nominal", [None] * len(cells)

    if all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in non_null):
        return "numeric", [float(c) if c is not None else None for c in cells]
    if all(isinstance(c, datetime) for c in non_null):
        return "temporal", [_naive_epoch(c) if c is not None else None for c in cells]

    texts = [str(c) for c in non_null]
    floats = [_parse_float(t) for t in texts]
    if all(v is not None for v in floats):
        it = iter(floats)
        return "numeric", [next(it) if c is not None else None for c in cells]
    dates = [_parse_date(t) for t in texts]
    if all(d is not None for d in dates):
        it = iter(dates)
        return "temporal", [_naive_epoch(next(it)) if c is not None else None for c in cells]
    it = iter(texts)
    return "nominal", [next(it) if c is not None else None for c in cells]


def _build_column(
    name: str,
    cells: list,
    row_count: int,
    override: Mapping[str, str] | None = None,
) -> _Column:
    kind, values = _classify_cells(cells)
    override = override or {}

    if kind == "numeric":
        arr = np.array([v if v is not None else np.nan for v in values], dtype=float)
        nulls = np.isnan(arr)
        distinct = np.unique(arr[~nulls])
        cardinality = int(distinct.size)
        is_measure = cardinality > _measure_threshold(row_count)
        dtype = "quantitative" if is_measure else "ordinal"
        role = "measure" if is_measure else "dimension"
        dtype = override.get("dtype", dtype)
        role = override.get("role", role)
        if role == "measure":
            dtype = "quantitative"
            agg = override.get("default_agg", "mean")
            meta = ColumnMeta(
                name,
                dtype,
                role,
                cardinality,
                float(distinct[0]) if cardinality else None,
                float(distinct[-1]) if cardinality else None,
                agg,
            )
            return _Column(meta, arr, nulls)
        categories = tuple(_display_number(v) for v in distinct)
        index = {c: i for i, c in enumerate(categories)}
        codes = np.full(row_count, -1, dtype=np.int64)
        if cardinality:
            codes[~nulls] = np.searchsorted(distinct, arr[~nulls])
        meta = ColumnMeta(name, dtype, role, cardinality, None, None, "count")
        return _Column(meta, arr, nulls, codes, categories, index)

    if kind == "temporal":
        arr = np.array([v if v is not None else np.nan for v in values], dtype=float)
        nulls = np.isnan(arr)
        distinct = np.unique(arr[~nulls])
        cardinality = int(distinct.size)
        categories = tuple(_iso_label(v) for v in distinct)
        index = {c: i for i, c in enumerate(categories)}
        codes = np.full(row_count, -1, dtype=np.int64)
        if cardinality:
            codes[~nulls] = np.searchsorted(distinct, arr[~nulls])
        meta = ColumnMeta(
            name,
            "temporal",
            "dimension",
            cardinality,
            float(distinct[0]) if cardinality else None,
            float(distinct[-1]) if cardinality else None,
            "count",
        )
        return _Column(meta, arr, nulls, codes, categories, index)

    nulls = np.array([v is None for v in values], dtype=bool)
    present = sorted({v for v in values if v is not None})
    categories = tuple(present)
    index = {c: i for i, c in enumerate(categories)}
    codes = np.array([index[v] if v is not None else -1 for v in values], dtype=np.int64)
    meta = ColumnMeta(name, "nominal", "dimension", len(categories), None, None, "count")
    return _Column(meta, None, nulls, codes, categories, index)


class Dataset:
    """Immutable columnar table plus inferred metadata."""

    def __init__(self, name: str, columns: Sequence[_Column], row_count: int):
        self.name = name
        self._columns = {col.meta.name: col for col in columns}
        self._order = tuple(col.meta.name for col in columns)
        self.row_count = row_count
        self._corr_lock = threading.Lock()
        self._corr_cache: np.ndarray | None = None
        # memoized predicate masks; entries are read-only once stored
        self._mask_lock = threading.Lock()
        self._mask_cache: dict[tuple, np.ndarray] = {}

    # -- schema ------------------------------------------------------------
    @property
    def columns(self) -> tuple[ColumnMeta, ...]:
        return tuple(self._columns[n].meta for n in self._order)

    @property
    def schema(self) -> dict[str, ColumnMeta]:
        return {n: self._columns[n].meta for n in self._order}

    def meta(self, name: str) -> ColumnMeta:
        col = self._columns.get(name)
        if col is None:
            raise DatasetError(f"unknown column {name!r}")
        return col.meta

    @property
    def measures(self) -> tuple[str, ...]:
        return tuple(n for n in self._order if self._columns[n].meta.role == "measure")

    @property
    def dimensions(self) -> tuple[str, ...]:
        return tuple(n for n in self._order if self._columns[n].meta.role == "dimension")

    # -- cell access -------------------------------------------------------
    def _column(self, name: str) -> _Column:
        col = self._columns.get(name)
        if col is None:
            raise DatasetError(f"unknown column {name!r}")
        return col

    def distinct_values(self, name: str) -> tuple:
        """Sorted distinct non-null values of a dimension."""
        col = self._column(name)
        if col.meta.role != "dimension":
            raise DatasetError(f"{name!r} is not a dimension")
        return col.categories

    def numeric_values(self, name: str, mask: np.ndarray | None = None) -> np.ndarray:
        """Non-null float values of a quantitative/temporal column."""
        col = self._column(name)
        if col.numeric is None:
            raise DatasetError(f"{name!r} has no numeric form")
        keep = ~col.null_mask
        if mask is not None:
            keep = keep & mask
        return col.numeric[keep]

    def null_mask(self, name: str) -> np.ndarray:
        return self._column(name).null_mask

    def dimension_codes(self, name: str, mask: np.ndarray) -> np.ndarray:
        """Category codes of a dimension under a row mask (nulls must be
        excluded by the caller's mask)."""
        col = self._column(name)
        if col.codes is None:
            raise DatasetError(f"{name!r} is not a dimension")
        return col.codes[mask]

    def _predicate_mask(self, attribute: str, value) -> np.ndarray:
        col = self._column(attribute)
        if col.meta.role != "dimension":
            raise SpecError(f"filter attribute {attribute!r} is not a dimension")
        key = (attribute, value)
        with self._mask_lock:
            cached = self._mask_cache.get(key)
        if cached is not None:
            return cached
        code = col.category_index.get(value)
        if code is None and isinstance(value, (int, float)) and not isinstance(value, bool):
            code = col.category_index.get(_display_number(float(value)))
        if code is None:
            mask = np.zeros(self.row_count, dtype=bool)
        else:
            mask = col.codes == code
        with self._mask_lock:
            if len(self._mask_cache) < 2048:
                self._mask_cache[key] = mask
        return mask

    def filter_mask(self, filters: Iterable) -> np.ndarray:
        """Conjunction of the filter predicates; unknown values match nothing."""
        mask: np.ndarray | None = None
        for f in filters:
            predicate = self._predicate_mask(f.attribute, f.value)
            if mask is None:
                mask = predicate.copy()
            else:
                mask &= predicate
        if mask is None:
            return np.ones(self.row_count, dtype=bool)
        return mask

    # -- correlation cache ---------------------------------------------------
    def correlations(self) -> np.ndarray:
        """Pairwise rank correlation of the measures; symmetric, unit diagonal.

        Computed lazily on first use, then memoized (write-once under a lock).
        Undefined pairs (constant or near-empty columns) hold NaN.
        """
        with self._corr_lock:
            if self._corr_cache is not None:
                return self._corr_cache
            measures = self.measures
            m = len(measures)
            matrix = np.full((m, m), np.nan)
            np.fill_diagonal(matrix, 1.0)
            for i in range(m):
                for j in range(i + 1, m):
                    a, b = self._column(measures[i]), self._column(measures[j])
                    keep = ~(a.null_mask | b.null_mask)
                    r = spearman(a.numeric[keep], b.numeric[keep])
                    if r is not None:
                        matrix[i, j] = matrix[j, i] = r
            self._corr_cache = matrix
            return matrix

    def measure_correlation(self, a: str, b: str) -> float | None:
        measures = list(self.measures)
        try:
            i, j = measures.index(a), measures.index(b)
        except ValueError:
            raise DatasetError(f"{a!r}/{b!r} are not both measures") from None
        r = self.correlations()[i, j]
        return None if np.isnan(r) else float(r)


# --------------------------------------------------------------------------
# Loading
# --------------------------------------------------------------------------

def load_csv(source, options: LoadOptions | None = None, name: str = "") -> Dataset:
    """Load a CSV byte stream (header row required) into a Dataset.

    Cells matching a null token are kept as null markers; rows are never
    dropped at load time. Raises DatasetError for an empty file, duplicate
    column names, or zero data rows.
    """
    options = options or LoadOptions()
    if isinstance(source, bytes):
        text = source.decode("utf-8-sig")
    elif isinstance(source, str):
        text = source
    else:
        raw = source.read()
        text = raw.decode("utf-8-sig") if isinstance(raw, bytes) else raw

    reader = csv.reader(io.StringIO(text), delimiter=options.delimiter)
    rows = [row for row in reader if row]
    if not rows:
        raise DatasetError("empty file")
    header = [h.strip() for h in rows[0]]
    if len(set(header)) != len(header):
        dupes = sorted({h for h in header if header.count(h) > 1})
        raise DatasetError(f"duplicate column names: {dupes}")
    data_rows = rows[1:]
    if not data_rows:
        raise DatasetError("no data rows")

    n_cols = len(header)
    cells: list[list] = [[] for _ in range(n_cols)]
    for row in data_rows:
        for i in range(n_cols):
            token = row[i].strip() if i < len(row) else ""
            cells[i].append(None if token.lower() in options.null_tokens else token)

    overrides = dict(options.schema_overrides or {})
    columns = [
        _build_column(header[i], cells[i], len(data_rows), overrides.get(header[i]))
        for i in range(n_cols)
    ]
    return Dataset(name, columns, len(data_rows))


def from_columns(
    name: str,
    columns: Mapping[str, Sequence],
    schema_overrides: Mapping[str, Mapping[str, str]] | None = None,
) -> Dataset:
    """Build a Dataset from already-typed columns (lists or arrays)."""
    lengths = {len(v) for v in columns.values()}
    if not columns or lengths == {0}:
        raise DatasetError("no data rows")
    if len(lengths) != 1:
        raise DatasetError("columns differ in length")
    row_count = lengths.pop()
    overrides = dict(schema_overrides or {})
    built = []
    for col_name, values in columns.items():
        cells = [None if _is_null(v) else v for v in values]
        built.append(_build_column(col_name, cells, row_count, overrides.get(col_name)))
    return Dataset(name, built, row_count)


def _is_null(v) -> bool:
    if v is None:
        return True
    if isinstance(v, float) and math.isnan(v):
        return True
    return False


def infer_schema(columns: Mapping[str, Sequence]) -> list[ColumnMeta]:
    """Infer ColumnMeta for raw columns (cells may be strings or typed)."""
    if not columns:
        raise DatasetError("need at least one column")
    lengths = {len(v) for v in columns.values()}
    if len(lengths) != 1:
        raise DatasetError("columns differ in length")
    row_count = lengths.pop()
    out = []
    for name, values in columns.items():
        cells = [None if _is_null(v) else v for v in values]
        out.append(_build_column(name, cells, row_count).meta)
    return out


def load_schema_overrides(text: str | bytes) -> dict[str, dict[str, str]]:
    """Parse a sidecar schema file: {"column": {"dtype"/"role"/"default_agg": ...}}."""
    obj = json.loads(text)
    if not isinstance(obj, dict):
        raise DatasetError("schema override must be a JSON object")
    allowed = {"dtype", "role", "default_agg"}
    out: dict[str, dict[str, str]] = {}
    for col, fields in obj.items():
        if not isinstance(fields, dict) or not set(fields) <= allowed:
            raise DatasetError(f"bad override for column {col!r}")
        out[col] = {k: str(v) for k, v in fields.items()}
    return out


# --------------------------------------------------------------------------
# Query evaluation
# --------------------------------------------------------------------------

def _histogram_edges(meta: ColumnMeta) -> np.ndarray:
    lo = meta.min if meta.min is not None else 0.0
    hi = meta.max if meta.max is not None else 1.0
    if hi <= lo:
        hi = lo + 1.0
    return np.linspace(lo, hi, HISTOGRAM_BINS + 1)


def _bin_labels(edges: np.ndarray) -> tuple[str, ...]:
    labels = []
    for i in range(len(edges) - 1):
        closer = "]" if i == len(edges) - 2 else ")"
        labels.append(f"[{edges[i]:g}, {edges[i + 1]:g}{closer}")
    return tuple(labels)


def aggregate(ds: Dataset, spec: VizSpec) -> AggregatedData:
    """Evaluate a spec: filters, group-by or binning, then aggregation.

    Rows with nulls in any referenced column are dropped per-visualization.
    Histogram bins are always anchored to the column's full-data min/max so
    filtered and unfiltered views of one measure share bin labels. A filter
    matching nothing yields an empty (flagged) result, not an error.
    """
    for attr in spec.attrs:
        if attr not in ds.schema:
            raise SpecError(f"unknown attribute {attr!r}")
    mask = ds.filter_mask(spec.filters)
    for attr in spec.attrs:
        mask = mask & ~ds.null_mask(attr)
    n = int(mask.sum())
    if n == 0:
        return AggregatedData((), (), None, 0)

    if spec.mark == "scatter":
        return _scatter_points(ds, spec, mask, n)
    if spec.mark == "histogram":
        attr = spec.x_attr
        meta = ds.meta(attr)
        edges = _histogram_edges(meta)
        counts, _ = np.histogram(ds._column(attr).numeric[mask], bins=edges)
        return AggregatedData(_bin_labels(edges), tuple(float(c) for c in counts), None, n)

    # bar / line: group by the x dimension's category codes
    x = spec.x_attr
    col = ds._column(x)
    codes = col.codes[mask]
    k = len(col.categories)
    counts = np.bincount(codes, minlength=k).astype(float)
    if spec.y_attr is None or spec.agg == "count":
        values = counts
    else:
        y = ds._column(spec.y_attr).numeric[mask]
        sums = np.bincount(codes, weights=y, minlength=k)
        if spec.agg == "sum":
            values = sums
        else:  # mean
            with np.errstate(invalid="ignore", divide="ignore"):
                values = np.where(counts > 0, sums / np.maximum(counts, 1.0), np.nan)
    present = counts > 0
    labels = tuple(c for c, keep in zip(col.categories, present) if keep)
    series = tuple(float(v) for v in values[present])
    return AggregatedData(labels, series, None, n)


def _scatter_points(ds: Dataset, spec: VizSpec, mask: np.ndarray, n: int) -> AggregatedData:
    xs = ds._column(spec.x_attr).numeric[mask]
    ys = ds._column(spec.y_attr).numeric[mask]
    color = None
    if spec.color_attr is not None:
        col = ds._column(spec.color_attr)
        color = tuple(col.categories[c] for c in col.codes[mask])
    return AggregatedData(
        tuple(float(v) for v in xs),
        tuple(float(v) for v in ys),
        color,
        n,
    )


def column_stats(ds: Dataset, name: str) -> dict:
    """Summary statistics for one column (distinct values for dimensions)."""
    col = ds._column(name)
    meta = col.meta
    out: dict = {
        "name": name,
        "dtype": meta.dtype,
        "role": meta.role,
        "cardinality": meta.cardinality,
        "nulls": int(col.null_mask.sum()),
    }
    if col.numeric is not None:
        values = col.numeric[~col.null_mask]
        if values.size:
            out["min"] = float(values.min())
            out["max"] = float(values.max())
            out["mean"] = float(values.mean())
            out["std"] = float(values.std())
    if meta.role == "dimension":
        out["values"] = list(col.categories)
    return out
