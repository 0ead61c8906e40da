"""Load a CSV, inspect the inferred schema, and query column statistics.

Every column is classified as a measure (quantitative, aggregated on the
y axis) or a dimension (nominal/ordinal/temporal, grouped or filtered).
Numeric columns with few distinct values -- like cylinder counts -- are
treated as ordinal dimensions, and ISO-formatted date columns come out
temporal.
"""
from nextviz import column_stats, load_csv
from nextviz.datasets import cars_csv_bytes

ds = load_csv(cars_csv_bytes(), name="cars")

print(f"{ds.name}: {ds.row_count} rows")
print(f"measures:   {', '.join(ds.measures)}")
print(f"dimensions: {', '.join(ds.dimensions)}")
print()

header = f"{'column':<14} {'dtype':<13} {'role':<10} {'card':>5}  range"
print(header)
print("-" * len(header))
for meta in ds.columns:
    span = ""
    if meta.min is not None:
        span = f"[{meta.min:g}, {meta.max:g}]"
    print(f"{meta.name:<14} {meta.dtype:<13} {meta.role:<10} {meta.cardinality:>5}  {span}")

print()
stats = column_stats(ds, "Horsepower")
print(f"Horsepower: mean={stats['mean']:.1f} std={stats['std']:.1f}")
print(f"Origin values: {column_stats(ds, 'Origin')['values']}")

# the measure-correlation matrix is computed lazily and memoized
matrix = ds.correlations()
print(f"\nrank correlations among {len(ds.measures)} measures:")
for i, name in enumerate(ds.measures):
    row = "  ".join(f"{matrix[i, j]:+.2f}" for j in range(len(ds.measures)))
    print(f"  {name:<13} {row}")
