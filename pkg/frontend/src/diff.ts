// Map a recommendation's diff onto its rendered labels. Added and
// swapped-in elements draw attention in blue; removed and swapped-out ones
// are struck through. Labels untouched by the diff carry no annotation.
import type { FilterJson, RecItem, SpecDiffJson } from "./types.js";

export type DiffKind = "added" | "removed" | "swapped-in" | "swapped-out";

export interface CardLabel {
  text: string;
  kind: DiffKind | null;
}

export function filterText(f: FilterJson): string {
  return `${f.attr}=${f.value}`;
}

function sameFilter(a: FilterJson, b: FilterJson): boolean {
  return a.attr === b.attr && a.value === b.value;
}

/** Labels for one card: every displayed attribute and filter, each with its
 * diff annotation, plus the removed elements (rendered struck-through). */
export function cardLabels(item: RecItem): CardLabel[] {
  const diff: SpecDiffJson = item.diff;
  const swappedIn = new Set(diff.swapped.map(([, to]) => to));
  const labels: CardLabel[] = item.spec.attrs.map((attr) => ({
    text: attr,
    kind: diff.added.includes(attr) ? "added" : swappedIn.has(attr) ? "swapped-in" : null,
  }));
  for (const attr of diff.removed) {
    labels.push({ text: attr, kind: "removed" });
  }
  for (const [from] of diff.swapped) {
    labels.push({ text: from, kind: "swapped-out" });
  }

  const addedFilters = diff.added_filters;
  const swappedInFilters = diff.swapped_filters.map(([, to]) => to);
  for (const f of item.spec.filters) {
    let kind: DiffKind | null = null;
    if (addedFilters.some((g) => sameFilter(f, g))) kind = "added";
    else if (swappedInFilters.some((g) => sameFilter(f, g))) kind = "swapped-in";
    labels.push({ text: filterText(f), kind });
  }
  for (const f of diff.removed_filters) {
    labels.push({ text: filterText(f), kind: "removed" });
  }
  for (const [from] of diff.swapped_filters) {
    labels.push({ text: filterText(from), kind: "swapped-out" });
  }
  return labels;
}

/** The set of texts that must carry an annotation, straight from the diff.
 * Used by tests to check the rendering marks exactly these elements. */
export function annotatedTexts(diff: SpecDiffJson): Set<string> {
  const out = new Set<string>();
  for (const a of diff.added) out.add(a);
  for (const r of diff.removed) out.add(r);
  for (const [from, to] of diff.swapped) {
    out.add(from);
    out.add(to);
  }
  for (const f of diff.added_filters) out.add(filterText(f));
  for (const f of diff.removed_filters) out.add(filterText(f));
  for (const [from, to] of diff.swapped_filters) {
    out.add(filterText(from));
    out.add(filterText(to));
  }
  return out;
}
