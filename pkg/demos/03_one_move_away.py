"""Enumerate the charts reachable by one analytical move.

Operational actions walk the attribute hierarchy (enhance adds, generalize
removes, pivot swaps) or the value hierarchy (filters drill down, roll up,
or swap a value). The overview actions -- correlation and distribution --
ignore the current view entirely, and the similarity family collects every
chart sharing the view's mark and x axis.
"""
from nextviz import (
    FilterPredicate,
    auto_encode,
    correlation_candidates,
    distribution_candidates,
    enhance,
    filter_add,
    filter_swap,
    generalize,
    pivot,
    similarity_candidates,
)
from nextviz.datasets import load_cars

ds = load_cars()
view = auto_encode(("Cylinders", "MPG"), ds.schema, [FilterPredicate("Origin", "USA")])
print(f"current view: {view.mark} of mean MPG by Cylinders, Origin=USA\n")


def show(name, specs, limit=4):
    print(f"{name}: {len(specs)} candidates")
    for spec in specs[:limit]:
        filters = ", ".join(f"{f.attribute}={f.value}" for f in spec.filters) or "none"
        print(f"   {spec.mark:<10} attrs={'+'.join(spec.attrs):<30} filters: {filters}")
    if len(specs) > limit:
        print("   ...")


show("enhance (add one attribute)", enhance(view, ds.columns))
show("filter (swap the value; the attribute stays)", filter_swap(view, ds.columns, ds))
show("generalize (remove an attribute or the filter)", generalize(view, ds.columns))
show("pivot (swap an attribute)", pivot(view, ds.columns))
show("similarity family (same axes, different y or filter)",
     similarity_candidates(view, ds.columns, ds))

bare = auto_encode(("Cylinders", "MPG"), ds.schema)
show("filter on an unfiltered view (drill down)", filter_add(bare, ds.columns, ds))

print()
show("correlation overview", correlation_candidates(ds.columns))
show("distribution overview", distribution_candidates(ds.columns))

# every candidate differs from the view by exactly one move, and filters
# are retained everywhere except inside the filter action itself
for spec in enhance(view, ds.columns) + pivot(view, ds.columns):
    assert set(spec.filters) >= set(view.filters)
print("\nfilter-retention check passed on enhance and pivot candidates")
