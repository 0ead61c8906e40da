"""End-to-end recommendation passes: gating, ranking, dedup, baseline.

With nothing selected, only the two overview categories appear. Once a
view exists, the operational categories take over (and a chart never shows
up in two categories at once). The baseline mode is the ablation used for
comparisons: identical recommendations, categories stripped, order
shuffled by a seed.
"""
from nextviz import (
    FilterPredicate,
    RecommenderConfig,
    auto_encode,
    flatten_baseline,
    recommend,
)
from nextviz.datasets import load_medals


def describe(recset):
    for cat in recset.categories:
        top = cat.items[0]
        extra = f", top: {'+'.join(top.spec.attrs)} ({top.score.value:+.3f})"
        print(f"   {cat.category.kind:<13} {len(cat.items):>2} items{extra}")


ds = load_medals()
print("empty view -> overview only:")
describe(recommend(None, ds))

view = auto_encode(("Age",), ds.schema)
print("\nage histogram selected -> operational categories:")
describe(recommend(view, ds, RecommenderConfig(k=8)))

filtered = auto_encode(("Age",), ds.schema, [FilterPredicate("Country", "Russia")])
print("\nwith Country=Russia filtered, the filter row swaps values:")
recset = recommend(filtered, ds, RecommenderConfig(k=5))
for cat in recset.categories:
    if cat.category.kind != "filter":
        continue
    for item in cat.items:
        predicate = item.spec.filters[0]
        print(f"   {predicate.attribute}={predicate.value:<14} deviation={item.score.value:.3f}")

print("\nbaseline ablation (same charts, no structure):")
categorized = recommend(view, ds, RecommenderConfig(k=4))
flat = flatten_baseline(categorized, seed=7)
print(f"   categorized: {sum(len(c.items) for c in categorized.categories)} items "
      f"in {len(categorized.categories)} rows")
print(f"   baseline:    {len(flat.items)} items in one shuffled grid")
assert sorted(i.key for i in flat.items) == sorted(i.key for i in categorized.all_items())
print("   multisets match; the seed fixes the permutation")
