// Scripted end-to-end tests: the real frontend modules drive a live
// recommendation service through the DOM (jsdom) exactly as a browser
// session would — checkbox clicks set the view, a double-click promotes a
// card, the baseline switch strips category structure.
import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { createExplorer } from "../src/app.js";
import { annotatedTexts } from "../src/diff.js";
import type { ExplorerStore } from "../src/state.js";
import type { RecItem } from "../src/types.js";

const PORT = 8900 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let store: ExplorerStore;
let root: HTMLElement;
let recommendationFetches = 0;

const countingFetch: typeof fetch = (input, init) => {
  const url = typeof input === "string" ? input : input instanceof URL ? input.href : input.url;
  if (url.includes("/recommendations")) recommendationFetches += 1;
  return fetch(input, init);
};

async function waitFor(check: () => boolean, timeoutMs = 10_000): Promise<void> {
  const start = Date.now();
  while (!check()) {
    if (Date.now() - start > timeoutMs) throw new Error("timed out waiting for condition");
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
}

async function settled(): Promise<void> {
  await waitFor(() => !store.state.busy);
  await new Promise((resolve) => setTimeout(resolve, 50));
}

beforeAll(async () => {
  server = spawn("python3", [
    "-m",
    "nextviz.cli",
    "serve",
    "--preload",
    "college",
    "--port",
    String(PORT),
  ]);
  await waitFor(() => server.pid !== undefined);
  const deadline = Date.now() + 45_000;
  for (;;) {
    try {
      const resp = await fetch(`${BASE}/datasets`);
      if (resp.ok) break;
    } catch {
      /* not up yet */
    }
    if (Date.now() > deadline) throw new Error("service did not come up");
    await new Promise((resolve) => setTimeout(resolve, 200));
  }

  root = document.createElement("div");
  document.body.appendChild(root);
  store = await createExplorer(root, { baseUrl: BASE, fetchFn: countingFetch });
  await settled();
});

afterAll(() => {
  server?.kill("SIGTERM");
});

function checkbox(attr: string): HTMLInputElement {
  const box = root.querySelector<HTMLInputElement>(`input[data-attr="${attr}"]`);
  if (!box) throw new Error(`no checkbox for ${attr}`);
  return box;
}

function cards(): RecItem[] {
  const recs = store.state.recs!;
  if (recs.mode === "baseline") return recs.items ?? [];
  return (recs.categories ?? []).flatMap((c) => c.items);
}

describe("explorer against a live service", () => {
  it("splits the control panel into measures and dimensions", () => {
    const lists = root.querySelectorAll(".attr-list");
    expect(lists).toHaveLength(2);
    expect(lists[0].querySelectorAll("input")).toHaveLength(10);
    expect(lists[1].querySelectorAll("input")).toHaveLength(6);
  });

  it("shows only the overview categories for an empty view", () => {
    const kinds = [...root.querySelectorAll(".category-row")].map(
      (row) => (row as HTMLElement).dataset.kind,
    );
    expect(kinds).toEqual(["correlation", "distribution"]);
    const forbidden = [...root.querySelectorAll(".menu-entry.forbidden")].map(
      (e) => (e as HTMLElement).dataset.kind,
    );
    expect(forbidden).toContain("enhance");
    expect(forbidden).not.toContain("correlation");
  });

  it("selecting two measures produces the scatter view and operational rows", async () => {
    checkbox("SATAverage").click();
    await settled();
    checkbox("AverageCost").click();
    await settled();

    expect(store.state.currentView?.mark).toBe("scatter");
    expect(store.state.currentKey).toBe("scatter|AverageCost,SATAverage|");
    const kinds = [...root.querySelectorAll(".category-row")].map(
      (row) => (row as HTMLElement).dataset.kind,
    );
    expect(kinds).toContain("enhance");
    expect(kinds).toContain("filter");
    expect(kinds).not.toContain("correlation");
    // every rendered card came from the last server response
    const domKeys = [...root.querySelectorAll(".rec-card")].map(
      (c) => (c as HTMLElement).dataset.key,
    );
    expect(domKeys).toEqual(cards().map((c) => c.key));
  });

  it("double-click promotes: view + control panel sync, exactly one refresh", async () => {
    const enhanceRow = root.querySelector('.category-row[data-kind="enhance"]')!;
    const target = enhanceRow.querySelector<HTMLElement>(".rec-card")!;
    const key = target.dataset.key!;
    const spec = cards().find((c) => c.key === key)!.spec;

    const before = recommendationFetches;
    target.dispatchEvent(new window.Event("dblclick", { bubbles: true }));
    await waitFor(() => store.state.currentKey === key);
    await settled();

    expect(recommendationFetches - before).toBe(1);
    expect(store.state.currentView).toEqual(spec);
    for (const attr of spec.attrs) {
      expect(checkbox(attr).checked).toBe(true);
    }
    expect(store.state.selectedAttrs.slice().sort()).toEqual(spec.attrs.slice().sort());
  });

  it("diff highlighting marks exactly the SpecDiff elements", () => {
    for (const card of root.querySelectorAll(".rec-card")) {
      const key = (card as HTMLElement).dataset.key!;
      const item = cards().find((c) => c.key === key)!;
      const marked = new Set(
        [...card.querySelectorAll(".diff-added, .diff-removed")].map((e) => e.textContent),
      );
      expect(marked).toEqual(annotatedTexts(item.diff));
    }
  });

  it("starring a card round-trips through the service", async () => {
    const card = root.querySelector<HTMLElement>(".rec-card")!;
    const key = card.dataset.key!;
    card.querySelector<HTMLElement>(".star-button")!.click();
    await waitFor(() => store.state.starred.has(key));
    expect([...root.querySelectorAll(".star-button")].some((b) => b.textContent === "*")).toBe(
      true,
    );
  });

  it("baseline mode renders one unlabeled grid", async () => {
    await store.setBaseline(true, 7);
    await settled();
    expect(root.querySelectorAll(".category-label")).toHaveLength(0);
    expect(root.querySelectorAll(".row-scroller")).toHaveLength(0);
    expect(root.querySelectorAll(".baseline-grid")).toHaveLength(1);
    expect(root.querySelectorAll(".baseline-grid .rec-card").length).toBeGreaterThan(0);
    await store.setBaseline(false);
    await settled();
    expect(root.querySelectorAll(".category-label").length).toBeGreaterThan(0);
  });

  it("a stale promote key surfaces a toast and forces a refresh", async () => {
    const before = recommendationFetches;
    await store.promote("bar|NotServed|");
    await settled();
    expect(store.state.error).toMatch(/stale/);
    expect(recommendationFetches - before).toBe(1);
    expect(root.querySelector(".error-toast")?.textContent).toMatch(/stale/);
  });

  it("clearing the selection returns to the overview", async () => {
    root.querySelector<HTMLElement>(".clear-selection")!.click();
    await waitFor(() => store.state.currentView === null);
    await settled();
    const kinds = [...root.querySelectorAll(".category-row")].map(
      (row) => (row as HTMLElement).dataset.kind,
    );
    expect(kinds).toEqual(["correlation", "distribution"]);
  });

  it("an unsupported selection is flagged inline without a server call", async () => {
    checkbox("FundingModel").click();
    await settled();
    const before = recommendationFetches;
    checkbox("Region").click(); // two dimensions: no chart
    await new Promise((resolve) => setTimeout(resolve, 100));
    expect(store.state.error).toMatch(/no chart/);
    expect(recommendationFetches).toBe(before);
    expect(root.querySelector(".error-toast")).not.toBeNull();
  });

  it("adding a filter through the picker flips the filter row to swap mode", async () => {
    checkbox("Region").click(); // back to the single-dimension view
    await settled();

    const attrSelect = root.querySelector<HTMLSelectElement>(".filter-attr")!;
    attrSelect.value = "Locale";
    attrSelect.dispatchEvent(new window.Event("change", { bubbles: true }));
    const valueSelect = root.querySelector<HTMLSelectElement>(".filter-value")!;
    valueSelect.value = "City";
    root.querySelector<HTMLElement>(".filter-apply")!.click();
    await waitFor(() => store.state.filters.length === 1);
    await settled();

    expect(store.state.filters).toEqual([{ attr: "Locale", value: "City" }]);
    const filterRow = root.querySelector('.category-row[data-kind="filter"]');
    expect(filterRow).not.toBeNull();
    const rowItems = (store.state.recs?.categories ?? []).find(
      (c) => c.category.kind === "filter",
    )!.items;
    for (const item of rowItems) {
      // value swaps only: the attribute stays, the value changes
      expect(item.diff.swapped_filters).toHaveLength(1);
      expect(item.spec.filters).toHaveLength(1);
      expect(item.spec.filters[0].attr).toBe("Locale");
      expect(item.spec.filters[0].value).not.toBe("City");
    }
  });
});
