"""Visualization specs: automatic encoding, canonical keys, and diffs.

A spec is just attributes plus filters; the mark and channel assignment
follow deterministically from the column roles. Canonical keys make specs
comparable regardless of attribute order, and diffs describe how a
recommendation departs from the current view (the interface paints added
or swapped labels differently from removed ones).
"""
from nextviz import FilterPredicate, auto_encode, canonicalize, spec_diff
from nextviz.datasets import load_college

ds = load_college()

for attrs in [
    ("SATAverage",),
    ("FundingModel",),
    ("Region", "AverageCost"),
    ("SATAverage", "AverageCost"),
    ("SATAverage", "AverageCost", "FundingModel"),
]:
    spec = auto_encode(attrs, ds.schema)
    channels = ", ".join(f"{a}->{c}" for a, c in spec.channels)
    print(f"{'+'.join(attrs):<45} {spec.mark:<10} {channels}")

print()
a = auto_encode(("SATAverage", "AverageCost"), ds.schema)
b = auto_encode(("AverageCost", "SATAverage"), ds.schema)
print("attribute order is irrelevant:", canonicalize(a) == canonicalize(b))
print("canonical key:", canonicalize(a))

print()
current = auto_encode(("SATAverage", "AverageCost"), ds.schema)
enhanced = auto_encode(("SATAverage", "AverageCost", "FundingModel"), ds.schema)
print("enhance diff:", spec_diff(current, enhanced).to_json())

swapped = auto_encode(("SATAverage", "MedianEarnings"), ds.schema)
print("pivot diff:  ", spec_diff(current, swapped).to_json())

filtered = current.with_filters([FilterPredicate("Region", "Pacific")])
other = current.with_filters([FilterPredicate("Region", "Midwest")])
print("filter swap: ", spec_diff(filtered, other).to_json())
