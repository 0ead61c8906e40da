import { describe, expect, it } from "vitest";

import { annotatedTexts, cardLabels } from "../src/diff.js";
import type { RecItem, SpecDiffJson } from "../src/types.js";

const EMPTY_DIFF: SpecDiffJson = {
  added: [],
  removed: [],
  swapped: [],
  added_filters: [],
  removed_filters: [],
  swapped_filters: [],
};

function item(spec: Partial<RecItem["spec"]>, diff: Partial<SpecDiffJson>): RecItem {
  return {
    key: "k",
    spec: {
      attrs: [],
      filters: [],
      mark: "bar",
      channels: {},
      agg: "count",
      ...spec,
    },
    score: { value: 0.5, objective: "non_uniformity", higher_is_better: true },
    diff: { ...EMPTY_DIFF, ...diff },
  };
}

describe("cardLabels", () => {
  it("marks an added attribute and nothing else", () => {
    const labels = cardLabels(
      item({ attrs: ["SAT", "Cost", "Funding"] }, { added: ["Funding"] }),
    );
    const byText = new Map(labels.map((l) => [l.text, l.kind]));
    expect(byText.get("Funding")).toBe("added");
    expect(byText.get("SAT")).toBeNull();
    expect(byText.get("Cost")).toBeNull();
    expect(labels).toHaveLength(3);
  });

  it("renders a swap as blue-in plus struck-out", () => {
    const labels = cardLabels(
      item({ attrs: ["SAT", "Earnings"] }, { swapped: [["Cost", "Earnings"]] }),
    );
    const kinds = Object.fromEntries(labels.map((l) => [l.text, l.kind]));
    expect(kinds).toEqual({ SAT: null, Earnings: "swapped-in", Cost: "swapped-out" });
  });

  it("keeps removed attributes visible with strikethrough", () => {
    const labels = cardLabels(item({ attrs: ["SAT"] }, { removed: ["Cost"] }));
    expect(labels).toContainEqual({ text: "Cost", kind: "removed" });
  });

  it("annotates filter adds and value swaps", () => {
    const labels = cardLabels(
      item(
        { attrs: ["Age"], filters: [{ attr: "Country", value: "Italy" }] },
        {
          swapped_filters: [
            [
              { attr: "Country", value: "Russia" },
              { attr: "Country", value: "Italy" },
            ],
          ],
        },
      ),
    );
    const kinds = Object.fromEntries(labels.map((l) => [l.text, l.kind]));
    expect(kinds["Country=Italy"]).toBe("swapped-in");
    expect(kinds["Country=Russia"]).toBe("swapped-out");
  });

  it("identical specs produce zero annotations", () => {
    const labels = cardLabels(item({ attrs: ["A", "B"] }, {}));
    expect(labels.every((l) => l.kind === null)).toBe(true);
  });

  it("annotated label set equals the diff's element set exactly", () => {
    const rec = item(
      {
        attrs: ["SAT", "Funding"],
        filters: [{ attr: "Region", value: "Pacific" }],
      },
      {
        added: ["Funding"],
        added_filters: [{ attr: "Region", value: "Pacific" }],
      },
    );
    const marked = new Set(
      cardLabels(rec)
        .filter((l) => l.kind !== null)
        .map((l) => l.text),
    );
    expect(marked).toEqual(annotatedTexts(rec.diff));
  });
});
