// Typed client for the recommendation service. Every response arrives in a
// {ok, data|error, version} envelope; this unwraps it and raises ApiError
// for the failure path so callers can branch on status codes (409 = stale
// promote key, 422 = invalid spec).
import type {
  DatasetListing,
  FilterJson,
  RecSet,
  SchemaPayload,
  ViewPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

export interface RecommendationParams {
  k?: number;
  mode?: "categorized" | "baseline";
  seed?: number;
  similarity?: "similar" | "different";
  metric?: "spearman" | "mi";
}

export interface ViewRequest {
  attrs: string[];
  filters: FilterJson[];
}

async function unwrap<T>(resp: Response): Promise<T> {
  const body = await resp.json();
  if (!body.ok) {
    const err = body.error ?? { code: "unknown", message: "unknown error" };
    throw new ApiError(resp.status, err.code, err.message);
  }
  return body.data as T;
}

export class ApiClient {
  constructor(
    readonly base: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    signal?: AbortSignal,
  ): Promise<T> {
    const init: RequestInit = { method, signal };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const resp = await this.fetchFn(`${this.base}${path}`, init);
    return unwrap<T>(resp);
  }

  async uploadDataset(csv: string | Uint8Array, name: string): Promise<SchemaPayload> {
    const resp = await this.fetchFn(`${this.base}/datasets?name=${encodeURIComponent(name)}`, {
      method: "POST",
      headers: { "Content-Type": "text/csv" },
      body: csv as BodyInit,
    });
    return unwrap<SchemaPayload>(resp);
  }

  listDatasets(): Promise<DatasetListing[]> {
    return this.request("GET", "/datasets");
  }

  schema(datasetId: string): Promise<SchemaPayload> {
    return this.request("GET", `/datasets/${datasetId}/schema`);
  }

  async createSession(datasetId: string): Promise<string> {
    const data = await this.request<{ session_id: string }>("POST", "/sessions", {
      dataset_id: datasetId,
    });
    return data.session_id;
  }

  putView(sessionId: string, view: ViewRequest | null): Promise<ViewPayload> {
    return this.request("PUT", `/sessions/${sessionId}/view`, view);
  }

  recommendations(
    sessionId: string,
    params: RecommendationParams = {},
    signal?: AbortSignal,
  ): Promise<RecSet> {
    const query = new URLSearchParams();
    if (params.k !== undefined) query.set("k", String(params.k));
    if (params.mode) query.set("mode", params.mode);
    if (params.seed !== undefined) query.set("seed", String(params.seed));
    if (params.similarity) query.set("similarity", params.similarity);
    if (params.metric) query.set("metric", params.metric);
    const suffix = query.toString() ? `?${query}` : "";
    return this.request("GET", `/sessions/${sessionId}/recommendations${suffix}`, undefined, signal);
  }

  promote(sessionId: string, key: string): Promise<ViewPayload> {
    return this.request("POST", `/sessions/${sessionId}/promote`, { key });
  }

  async star(sessionId: string, key: string): Promise<string[]> {
    const data = await this.request<{ starred: string[] }>(
      "POST",
      `/sessions/${sessionId}/star`,
      { key },
    );
    return data.starred;
  }

  toggleCategory(sessionId: string, kind: string, enabled: boolean): Promise<unknown> {
    return this.request("POST", `/sessions/${sessionId}/toggle-category`, { kind, enabled });
  }

  async log(sessionId: string): Promise<{ kind: string }[]> {
    const data = await this.request<{ events: { kind: string }[] }>(
      "GET",
      `/sessions/${sessionId}/log`,
    );
    return data.events;
  }
}
