"""The interestingness objectives, one per chart situation.

Uneven bars outrank flat ones; filtered charts are ranked by how far they
deviate from the unfiltered distribution; scatterplots by dependence
between the measures; colored scatterplots by how cleanly the color
classes separate; distributions by skew; and the similarity family by
plain euclidean distance to the current view.
"""
import numpy as np

from nextviz import (
    AggregatedData,
    auto_encode,
    deviation,
    mutual_information,
    non_uniformity,
    separability,
    skewness,
    spearman,
)
from nextviz.dataset import aggregate
from nextviz.datasets import load_college
from nextviz.recommend import RecommenderConfig, recommend


def chart(labels, values):
    return AggregatedData(tuple(labels), tuple(values), None, len(values))


flat = chart("abcd", [5, 5, 5, 5])
spiky = chart("abcd", [14, 2, 3, 1])
print(f"non-uniformity: flat={non_uniformity(flat):.3f}  spiky={non_uniformity(spiky):.3f}")

overall = chart("abcd", [10, 10, 10, 10])
shifted = chart("abcd", [1, 1, 1, 17])
print(f"deviation from overall: {deviation(shifted, overall):.3f} (identical would be 0)")

rng = np.random.default_rng(0)
x = rng.normal(0, 1, 400)
print(f"spearman(x, 2x+noise) = {spearman(x, 2 * x + rng.normal(0, 0.4, 400)):+.3f}")
print(f"spearman(x, -x)       = {spearman(x, -x):+.3f}")
print(f"mutual information, independent inputs: "
      f"{mutual_information(x, rng.normal(0, 1, 400)):.3f} nats")

tight = np.vstack([rng.normal([0.2, 0.2], 0.03, (50, 2)),
                   rng.normal([0.8, 0.8], 0.03, (50, 2))])
labels = ["a"] * 50 + ["b"] * 50
print(f"separability of two tight clusters: {separability(tight, labels):.3f}")
print(f"skewness: symmetric={skewness([1, 2, 3, 4, 5]):.3f}  "
      f"lopsided={skewness([1, 1, 1, 2, 9]):.3f}")

# the dispatcher picks the objective from chart type and filter state
print("\nenhance row for the cost-vs-SAT scatter, ranked by separability:")
ds = load_college()
view = auto_encode(("SATAverage", "AverageCost"), ds.schema)
recset = recommend(view, ds, RecommenderConfig(k=6))
for cat in recset.categories:
    if cat.category.kind != "enhance":
        continue
    for item in cat.items:
        print(f"   color={item.spec.color_attr:<16} silhouette={item.score.value:+.3f}")

print("\nthe winning chart's data is one aggregate call away:")
best = recset.categories[0].items[0].spec
agg = aggregate(ds, best)
print(f"   {best.mark} with {agg.n_underlying} points, color classes "
      f"{sorted(set(agg.series_key))}")
