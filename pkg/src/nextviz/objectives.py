"""Chart-type-aware interestingness objectives.

Every scorer is a deterministic numpy function that returns a float, or
None when the input is degenerate (too few points, zero variance, empty
selection). Callers drop None-scored candidates instead of coercing them
to zero, which would silently outrank legitimately low-scoring charts.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from .dataset import AggregatedData

# Allowed objective labels on a score.
OBJECTIVES = (
    "skew",
    "monotonicity",
    "non_uniformity",
    "deviation",
    "correlation",
    "separability",
    "similarity_distance",
)


@dataclass(frozen=True)
class InterestingnessScore:
    """A finite score plus the objective that produced it.

    higher_is_better is False only for similarity_distance, where ascending
    order means most similar first and the sort can be reversed to surface
    the most dissimilar charts instead.
    """

    value: float
    objective: str
    higher_is_better: bool = True


def _finite_pairs(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    keep = np.isfinite(x) & np.isfinite(y)
    return x[keep], y[keep]


def average_ranks(values: np.ndarray) -> np.ndarray:
    """Fractional ranks, 1-based, ties averaged."""
    values = np.asarray(values, dtype=float)
    n = values.size
    order = np.argsort(values, kind="stable")
    sv = values[order]
    new_group = np.empty(n, dtype=bool)
    new_group[0] = True
    new_group[1:] = sv[1:] != sv[:-1]
    group = np.cumsum(new_group) - 1
    counts = np.bincount(group)
    starts = np.cumsum(counts) - counts
    group_rank = starts + (counts + 1) / 2.0
    ranks = np.empty(n, dtype=float)
    ranks[order] = group_rank[group]
    return ranks


def skewness(values) -> float | None:
    """Absolute adjusted (Fisher-Pearson) sample skewness.

    Needs at least three finite values and nonzero variance; otherwise the
    statistic is undefined and None is returned.
    """
    v = np.asarray(values, dtype=float)
    v = v[np.isfinite(v)]
    n = v.size
    if n < 3:
        return None
    centered = v - v.mean()
    m2 = float(np.mean(centered**2))
    if m2 <= 0.0:
        return None
    m3 = float(np.mean(centered**3))
    g1 = m3 / m2**1.5
    adjusted = g1 * np.sqrt(n * (n - 1)) / (n - 2)
    return abs(float(adjusted))


def spearman(x, y) -> float | None:
    """Rank correlation in [-1, 1]: Pearson correlation of average ranks.

    Identical or exactly mirrored rank vectors short-circuit to +/-1.0 so
    perfectly monotone inputs score exactly at the boundary. Pairs with a
    non-finite member are dropped first; fewer than three surviving pairs
    or a constant vector yields None.
    """
    x, y = _finite_pairs(x, y)
    n = x.size
    if n < 3:
        return None
    if np.all(x == x[0]) or np.all(y == y[0]):
        return None
    rx = average_ranks(x)
    ry = average_ranks(y)
    if np.array_equal(rx, ry):
        return 1.0
    if np.array_equal(rx + ry, np.full(n, float(n + 1))):
        return -1.0
    r = float(np.corrcoef(rx, ry)[0, 1])
    return max(-1.0, min(1.0, r))


def mutual_information(x, y, bins: int = 10) -> float | None:
    """Plug-in mutual information over a bins x bins equal-width histogram.

    Uses natural log. A degenerate marginal (all mass in one bin, e.g. a
    constant input) gives 0.0; no usable pairs gives None.
    """
    if bins < 2:
        raise ValueError("bins must be >= 2")
    x, y = _finite_pairs(x, y)
    if x.size == 0:
        return None
    if np.all(x == x[0]) or np.all(y == y[0]):
        return 0.0
    joint, _, _ = np.histogram2d(x, y, bins=bins)
    total = joint.sum()
    if total <= 0:
        return None
    p = joint / total
    px = p.sum(axis=1)
    py = p.sum(axis=0)
    if np.count_nonzero(px) < 2 or np.count_nonzero(py) < 2:
        return 0.0
    mask = p > 0
    outer = np.outer(px, py)
    mi = float(np.sum(p[mask] * np.log(p[mask] / outer[mask])))
    return max(0.0, mi)


def _l1_normalized(values: np.ndarray) -> np.ndarray | None:
    total = float(np.sum(np.abs(values)))
    if total <= 0.0:
        return None
    return values / total


def non_uniformity(agg: "AggregatedData") -> float | None:
    """L2 distance between the L1-normalized values and a uniform vector."""
    y = np.asarray(agg.y_values, dtype=float)
    if y.size < 2:
        return None
    p = _l1_normalized(y)
    if p is None:
        return None
    uniform = 1.0 / y.size
    return float(np.sqrt(np.sum((p - uniform) ** 2)))


def align_labels(a: "AggregatedData", b: "AggregatedData") -> tuple[np.ndarray, np.ndarray]:
    """Align two charts on the union of their x labels, filling gaps with 0."""
    labels = list(a.x_labels)
    seen = set(labels)
    labels += [lab for lab in b.x_labels if lab not in seen]
    amap = dict(zip(a.x_labels, a.y_values))
    bmap = dict(zip(b.x_labels, b.y_values))
    va = np.array([amap.get(lab, 0.0) for lab in labels], dtype=float)
    vb = np.array([bmap.get(lab, 0.0) for lab in labels], dtype=float)
    return va, vb


def deviation(filtered: "AggregatedData", overall: "AggregatedData") -> float | None:
    """L2 distance between the normalized filtered and overall distributions.

    Vectors are label-aligned first (union of labels, missing entries 0)
    and each L1-normalized, so the score is invariant to positive scaling
    of raw counts. An empty filtered result is undefined.
    """
    if filtered.is_empty or len(filtered.y_values) == 0:
        return None
    va, vb = align_labels(filtered, overall)
    pa = _l1_normalized(va)
    pb = _l1_normalized(vb)
    if pa is None or pb is None:
        return None
    return float(np.sqrt(np.sum((pa - pb) ** 2)))


def minmax_scaled(values: np.ndarray) -> np.ndarray:
    """Scale to [0, 1]; a constant vector collapses to all zeros."""
    values = np.asarray(values, dtype=float)
    lo = values.min()
    span = values.max() - lo
    if span <= 0.0:
        return np.zeros_like(values)
    return (values - lo) / span


def euclidean_similarity(a: "AggregatedData", b: "AggregatedData") -> float | None:
    """Euclidean distance between label-aligned, min-max normalized values.

    0 means identical normalized shapes; the similarity ranking sorts this
    ascending and the difference ranking descending.
    """
    if len(a.y_values) == 0 or len(b.y_values) == 0:
        return None
    va, vb = align_labels(a, b)
    return float(np.sqrt(np.sum((minmax_scaled(va) - minmax_scaled(vb)) ** 2)))


def separability(points, labels) -> float | None:
    """Mean silhouette coefficient of the color classes of a scatterplot.

    points is an (n, 2) array of already-normalized coordinates. Needs at
    least two classes, each with at least two points; otherwise None.
    s(i) = 0 where both cohesion and separation are zero (duplicate points).
    """
    pts = np.asarray(points, dtype=float)
    labs = np.asarray(labels)
    if pts.ndim != 2 or pts.shape[0] != labs.size:
        raise ValueError("points must be (n, 2) aligned with labels")
    classes, codes = np.unique(labs, return_inverse=True)
    k = classes.size
    if k < 2:
        return None
    counts = np.bincount(codes, minlength=k)
    if np.any(counts < 2):
        return None

    # pairwise distances via in-place 2-D ops; the (n, n, 2) broadcast
    # would triple the peak allocation at the 2000-point cap
    acc = None
    for col in range(pts.shape[1]):
        d = pts[:, col][:, None] - pts[:, col][None, :]
        np.multiply(d, d, out=d)
        if acc is None:
            acc = d
        else:
            acc += d
    dist = np.sqrt(acc, out=acc)
    onehot = np.zeros((pts.shape[0], k))
    onehot[np.arange(pts.shape[0]), codes] = 1.0
    sums = dist @ onehot  # per-point summed distance to each class

    own = counts[codes]
    a = sums[np.arange(pts.shape[0]), codes] / (own - 1)
    mean_to = sums / counts
    mean_to[np.arange(pts.shape[0]), codes] = np.inf
    b = mean_to.min(axis=1)
    denom = np.maximum(a, b)
    s = np.where(denom > 0, (b - a) / np.where(denom > 0, denom, 1.0), 0.0)
    return float(np.mean(s))
