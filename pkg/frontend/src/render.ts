// DOM construction for the four interface areas: control panel, current
// view, category menu, and the recommendation rows. Rendering is a pure
// function of the store state; handlers call back into the store.
import { renderChart } from "./charts.js";
import { cardLabels } from "./diff.js";
import type { ExplorerStore, UiState } from "./state.js";
import type { RecCategory, RecItem } from "./types.js";
import { ALL_CATEGORY_KINDS } from "./types.js";

const CATEGORY_TITLES: Record<string, string> = {
  enhance: "Enhance",
  filter: "Filter",
  generalize: "Generalize",
  pivot: "Pivot",
  similarity: "Similarity",
  correlation: "Correlation",
  distribution: "Distribution",
};

function el(tag: string, className?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderControlPanel(store: ExplorerStore, state: UiState): HTMLElement {
  const panel = el("div", "control-panel");
  panel.appendChild(el("h2", "", "Data"));

  for (const [title, columns] of [
    ["Measures", store.measures],
    ["Dimensions", store.dimensions],
  ] as const) {
    panel.appendChild(el("h3", "", title));
    const list = el("ul", "attr-list");
    for (const col of columns) {
      const item = el("li");
      const label = el("label");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.checked = state.selectedAttrs.includes(col.name);
      box.dataset.attr = col.name;
      box.addEventListener("change", () => void store.toggleAttr(col.name));
      label.appendChild(box);
      label.appendChild(document.createTextNode(` ${col.name}`));
      item.appendChild(label);
      list.appendChild(item);
    }
    panel.appendChild(list);
  }

  panel.appendChild(el("h3", "", "Filters"));
  const active = el("ul", "filter-chips");
  for (const f of state.filters) {
    const chip = el("li", "filter-chip", `${f.attr}=${f.value}`);
    const remove = el("button", "chip-remove", "x");
    remove.addEventListener("click", () => void store.removeFilter(f.attr));
    chip.appendChild(remove);
    active.appendChild(chip);
  }
  panel.appendChild(active);

  const picker = el("div", "filter-picker");
  const attrSelect = document.createElement("select");
  attrSelect.className = "filter-attr";
  attrSelect.appendChild(new Option("add a filter...", ""));
  for (const dim of store.dimensions) {
    if ((dim.stats.values ?? []).length > 0 && dim.cardinality <= 50) {
      attrSelect.appendChild(new Option(dim.name, dim.name));
    }
  }
  const valueSelect = document.createElement("select");
  valueSelect.className = "filter-value";
  valueSelect.disabled = true;
  attrSelect.addEventListener("change", () => {
    valueSelect.innerHTML = "";
    const dim = store.dimensions.find((d) => d.name === attrSelect.value);
    valueSelect.disabled = !dim;
    for (const v of dim?.stats.values ?? []) {
      valueSelect.appendChild(new Option(String(v), String(v)));
    }
  });
  const apply = el("button", "filter-apply", "apply");
  apply.addEventListener("click", () => {
    const dim = store.dimensions.find((d) => d.name === attrSelect.value);
    if (!dim) return;
    const raw = valueSelect.value;
    const values = dim.stats.values ?? [];
    const typed = values.find((v) => String(v) === raw) ?? raw;
    void store.addFilter(dim.name, typed);
  });
  picker.append(attrSelect, valueSelect, apply);
  panel.appendChild(picker);

  const clear = el("button", "clear-selection", "clear selection");
  clear.addEventListener("click", () => void store.clearSelection());
  panel.appendChild(clear);

  if (state.error) {
    panel.appendChild(el("div", "error-toast", state.error));
  }
  return panel;
}

export function renderCurrentView(state: UiState): HTMLElement {
  const area = el("div", "current-view");
  area.appendChild(el("h2", "", "Current View"));
  if (!state.currentView || !state.currentChart) {
    area.appendChild(
      el("p", "empty-view", "nothing selected; overview recommendations below"),
    );
    return area;
  }
  const title = state.currentView.attrs.join(" + ");
  const filters = state.filters.map((f) => `${f.attr}=${f.value}`).join(", ");
  area.appendChild(el("p", "view-title", filters ? `${title} | ${filters}` : title));
  const canvas = document.createElement("canvas");
  canvas.width = 360;
  canvas.height = 220;
  canvas.className = "main-chart";
  renderChart(canvas, state.currentView, state.currentChart);
  area.appendChild(canvas);
  area.appendChild(el("p", "view-mark", `${state.currentView.mark}, n=${state.currentChart.n}`));
  return area;
}

export function renderCategoryMenu(store: ExplorerStore, state: UiState): HTMLElement {
  const menu = el("div", "category-menu");
  menu.appendChild(el("h2", "", "Categories"));
  const applicable = store.applicableKinds();
  for (const kind of ALL_CATEGORY_KINDS) {
    const entry = el("span", "menu-entry", CATEGORY_TITLES[kind]);
    entry.dataset.kind = kind;
    if (state.baseline) {
      entry.classList.add("forbidden");
    } else if (!applicable.has(kind) && (state.toggles[kind] ?? true)) {
      entry.classList.add("forbidden"); // not applicable for this view
    } else {
      entry.classList.add(state.toggles[kind] ?? true ? "enabled" : "disabled");
      entry.addEventListener("click", () => void store.toggleCategory(kind));
    }
    menu.appendChild(entry);
  }
  const baseline = el(
    "button",
    "baseline-toggle",
    state.baseline ? "categorized layout" : "baseline layout",
  );
  baseline.addEventListener("click", () => void store.setBaseline(!state.baseline));
  menu.appendChild(baseline);
  return menu;
}

function card(store: ExplorerStore, item: RecItem): HTMLElement {
  const node = el("div", "rec-card");
  node.dataset.key = item.key;

  const canvas = document.createElement("canvas");
  canvas.width = 170;
  canvas.height = 110;
  if (item.chart) renderChart(canvas, item.spec, item.chart);
  node.appendChild(canvas);

  const labels = el("div", "card-labels");
  for (const label of cardLabels(item)) {
    const span = el("span", "card-label", label.text);
    if (label.kind === "added" || label.kind === "swapped-in") span.classList.add("diff-added");
    if (label.kind === "removed" || label.kind === "swapped-out")
      span.classList.add("diff-removed");
    labels.appendChild(span);
  }
  node.appendChild(labels);

  const footer = el("div", "card-footer");
  footer.appendChild(
    el("span", "score-badge", `${item.score.objective} ${item.score.value.toFixed(3)}`),
  );
  const starBtn = el("button", "star-button", store.state.starred.has(item.key) ? "*" : "o");
  starBtn.title = "star";
  starBtn.addEventListener("click", (event) => {
    event.stopPropagation();
    void store.star(item.key);
  });
  footer.appendChild(starBtn);
  node.appendChild(footer);

  node.addEventListener("dblclick", () => void store.promote(item.key));
  return node;
}

function categoryRow(store: ExplorerStore, cat: RecCategory, state: UiState): HTMLElement {
  const row = el("div", "category-row");
  row.dataset.kind = cat.category.kind;
  const header = el("div", "row-header");
  header.appendChild(el("span", "category-label", CATEGORY_TITLES[cat.category.kind]));
  if (cat.category.kind === "similarity") {
    const flip = el(
      "button",
      "similarity-flip",
      state.similarityDirection === "similar" ? "most similar first" : "most different first",
    );
    flip.addEventListener("click", () =>
      void store.setSimilarityDirection(
        state.similarityDirection === "similar" ? "different" : "similar",
      ),
    );
    header.appendChild(flip);
  }
  row.appendChild(header);
  const scroller = el("div", "row-scroller");
  for (const item of cat.items) scroller.appendChild(card(store, item));
  row.appendChild(scroller);
  return row;
}

export function renderRecommendations(store: ExplorerStore, state: UiState): HTMLElement {
  const panel = el("div", "recommendations");
  if (!state.recs) {
    panel.appendChild(el("p", "empty-view", "loading..."));
    return panel;
  }
  if (state.recs.mode === "baseline") {
    // one unlabeled grid, one scroll context, zero category structure
    const grid = el("div", "baseline-grid");
    for (const item of state.recs.items ?? []) grid.appendChild(card(store, item));
    panel.appendChild(grid);
    return panel;
  }
  for (const cat of state.recs.categories ?? []) {
    panel.appendChild(categoryRow(store, cat, state));
  }
  return panel;
}

export function render(root: HTMLElement, store: ExplorerStore, state: UiState): void {
  root.innerHTML = "";
  root.appendChild(renderControlPanel(store, state));
  const center = el("div", "center-column");
  center.appendChild(renderCurrentView(state));
  center.appendChild(renderCategoryMenu(store, state));
  root.appendChild(center);
  root.appendChild(renderRecommendations(store, state));
}
