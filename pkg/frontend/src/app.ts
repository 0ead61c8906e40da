// Composition root: wire a store to a DOM node and a running service.
import { ApiClient } from "./api.js";
import { render } from "./render.js";
import { ExplorerStore } from "./state.js";

export interface ExplorerOptions {
  baseUrl: string;
  datasetId?: string;
  fetchFn?: typeof fetch;
}

/** Mount the explorer; resolves once the first recommendations arrived. */
export async function createExplorer(
  root: HTMLElement,
  options: ExplorerOptions,
): Promise<ExplorerStore> {
  const api = new ApiClient(options.baseUrl, options.fetchFn ?? fetch.bind(globalThis));
  const store = new ExplorerStore(api);
  store.subscribe((state) => render(root, store, state));

  let datasetId = options.datasetId;
  if (!datasetId) {
    const listing = await api.listDatasets();
    if (!listing.length) {
      root.textContent = "no datasets on the server; start it with --preload college";
      return store;
    }
    datasetId = listing[0].dataset_id;
  }
  await store.init(datasetId);
  return store;
}

declare global {
  interface Window {
    nextvizExplorer?: ExplorerStore;
  }
}

// Browser entry point: mount on #app against the ?service= URL (or the
// default local service port).
if (typeof document !== "undefined" && document.getElementById("app")) {
  const params = new URLSearchParams(window.location.search);
  const base = params.get("service") ?? "http://127.0.0.1:8000";
  void createExplorer(document.getElementById("app")!, { baseUrl: base }).then((store) => {
    window.nextvizExplorer = store;
  });
}
