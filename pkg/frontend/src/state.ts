// Explorer state and actions. The store is the single source of truth:
// every rendered chart and row mirrors the last server response, nothing
// is re-ranked or recomputed client-side. At most one recommendations
// request is in flight; newer user actions abort a stale one.
import { ApiClient, ApiError } from "./api.js";
import type {
  CategoryKind,
  ColumnMeta,
  FilterJson,
  RecSet,
  SchemaPayload,
  ViewPayload,
  VizSpecJson,
} from "./types.js";
import { ALL_CATEGORY_KINDS } from "./types.js";

export interface UiState {
  datasetId: string | null;
  sessionId: string | null;
  schema: ColumnMeta[];
  rowCount: number;
  selectedAttrs: string[];
  filters: FilterJson[];
  currentView: VizSpecJson | null;
  currentKey: string | null;
  currentChart: ViewPayload["chart"];
  recs: RecSet | null;
  toggles: Record<string, boolean>;
  starred: Set<string>;
  baseline: boolean;
  baselineSeed: number;
  similarityDirection: "similar" | "different";
  k: number;
  error: string | null;
  busy: boolean;
}

type Listener = (state: UiState) => void;

/** Client-side mirror of the encodable attribute combinations; selections
 * outside it are flagged inline without a server round-trip. */
export function encodableSelection(attrs: string[], schema: ColumnMeta[]): string | null {
  if (attrs.length === 0) return null;
  if (attrs.length > 3) return "a view takes at most 3 attributes";
  const roles = new Map(schema.map((c) => [c.name, c.role]));
  const measures = attrs.filter((a) => roles.get(a) === "measure").length;
  const dims = attrs.length - measures;
  const supported =
    (measures === 1 && dims === 0) ||
    (measures === 0 && dims === 1) ||
    (measures === 1 && dims === 1) ||
    (measures === 2 && dims === 0) ||
    (measures === 2 && dims === 1);
  return supported ? null : `${measures} measure(s) + ${dims} dimension(s) has no chart`;
}

export class ExplorerStore {
  state: UiState = {
    datasetId: null,
    sessionId: null,
    schema: [],
    rowCount: 0,
    selectedAttrs: [],
    filters: [],
    currentView: null,
    currentKey: null,
    currentChart: null,
    recs: null,
    toggles: Object.fromEntries(ALL_CATEGORY_KINDS.map((k) => [k, true])),
    starred: new Set(),
    baseline: false,
    baselineSeed: 0,
    similarityDirection: "similar",
    k: 6,
    error: null,
    busy: false,
  };

  private listeners: Listener[] = [];
  private inflight: AbortController | null = null;

  constructor(readonly api: ApiClient) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const l of this.listeners) l(this.state);
  }

  private patch(partial: Partial<UiState>): void {
    this.state = { ...this.state, ...partial };
    this.emit();
  }

  async init(datasetId: string): Promise<void> {
    const schema: SchemaPayload = await this.api.schema(datasetId);
    const sessionId = await this.api.createSession(datasetId);
    this.patch({
      datasetId,
      sessionId,
      schema: schema.columns,
      rowCount: schema.row_count,
    });
    await this.refreshRecommendations();
  }

  get measures(): ColumnMeta[] {
    return this.state.schema.filter((c) => c.role === "measure");
  }

  get dimensions(): ColumnMeta[] {
    return this.state.schema.filter((c) => c.role === "dimension");
  }

  /** Kinds present in the last response; everything else is inapplicable. */
  applicableKinds(): Set<CategoryKind> {
    const out = new Set<CategoryKind>();
    for (const cat of this.state.recs?.categories ?? []) out.add(cat.category.kind);
    return out;
  }

  async toggleAttr(name: string): Promise<void> {
    const selected = this.state.selectedAttrs.includes(name)
      ? this.state.selectedAttrs.filter((a) => a !== name)
      : [...this.state.selectedAttrs, name];
    await this.setSelection(selected, this.state.filters);
  }

  async addFilter(attr: string, value: string | number): Promise<void> {
    const filters = [
      ...this.state.filters.filter((f) => f.attr !== attr),
      { attr, value },
    ];
    await this.setSelection(this.state.selectedAttrs, filters);
  }

  async removeFilter(attr: string): Promise<void> {
    await this.setSelection(
      this.state.selectedAttrs,
      this.state.filters.filter((f) => f.attr !== attr),
    );
  }

  async clearSelection(): Promise<void> {
    await this.setSelection([], []);
  }

  async setSelection(attrs: string[], filters: FilterJson[]): Promise<void> {
    const problem = encodableSelection(attrs, this.state.schema);
    if (problem) {
      // inline complaint; current view and rows stay as they were
      this.patch({ selectedAttrs: attrs, filters, error: problem });
      return;
    }
    this.patch({ selectedAttrs: attrs, filters, error: null, busy: true });
    try {
      const payload = await this.api.putView(
        this.state.sessionId!,
        attrs.length ? { attrs, filters } : null,
      );
      this.applyView(payload);
      await this.refreshRecommendations();
    } catch (err) {
      this.patch({ error: describe(err), busy: false });
    }
  }

  private applyView(payload: ViewPayload): void {
    this.patch({
      currentView: payload.view,
      currentKey: payload.key,
      currentChart: payload.chart,
      selectedAttrs: payload.view ? payload.view.attrs : [],
      filters: payload.view ? payload.view.filters : [],
    });
  }

  async refreshRecommendations(): Promise<void> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    this.patch({ busy: true });
    try {
      const recs = await this.api.recommendations(
        this.state.sessionId!,
        {
          k: this.state.k,
          mode: this.state.baseline ? "baseline" : "categorized",
          seed: this.state.baseline ? this.state.baselineSeed : undefined,
          similarity: this.state.similarityDirection,
        },
        controller.signal,
      );
      if (this.inflight === controller) {
        this.patch({ recs, busy: false });
      }
    } catch (err) {
      if (!controller.signal.aborted) {
        this.patch({ error: describe(err), busy: false });
      }
    }
  }

  /** Double-click on a served card: the server recalls the spec by key and
   * the control panel is synced to it; one recommendations refresh follows. */
  async promote(key: string): Promise<void> {
    try {
      const payload = await this.api.promote(this.state.sessionId!, key);
      this.applyView(payload);
      await this.refreshRecommendations();
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        // stale card: surface a toast and force-refresh the rows
        this.patch({ error: "that recommendation is stale; refreshing" });
        await this.refreshRecommendations();
        return;
      }
      this.patch({ error: describe(err) });
    }
  }

  async star(key: string): Promise<void> {
    try {
      const starred = await this.api.star(this.state.sessionId!, key);
      this.patch({ starred: new Set(starred) });
    } catch (err) {
      this.patch({ error: describe(err) });
    }
  }

  async toggleCategory(kind: CategoryKind): Promise<void> {
    const enabled = !(this.state.toggles[kind] ?? true);
    this.patch({ toggles: { ...this.state.toggles, [kind]: enabled } });
    try {
      await this.api.toggleCategory(this.state.sessionId!, kind, enabled);
      await this.refreshRecommendations();
    } catch (err) {
      this.patch({ error: describe(err) });
    }
  }

  async setBaseline(on: boolean, seed = 0): Promise<void> {
    this.patch({ baseline: on, baselineSeed: seed });
    await this.refreshRecommendations();
  }

  async setSimilarityDirection(direction: "similar" | "different"): Promise<void> {
    this.patch({ similarityDirection: direction });
    await this.refreshRecommendations();
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return `${err.code}: ${err.message}`;
  return err instanceof Error ? err.message : String(err);
}
