// Wire types for the recommendation service protocol.

export type Mark = "bar" | "histogram" | "line" | "scatter";
export type Channel = "x" | "y" | "color";
export type CategoryKind =
  | "enhance"
  | "filter"
  | "generalize"
  | "pivot"
  | "similarity"
  | "correlation"
  | "distribution";

export const ALL_CATEGORY_KINDS: CategoryKind[] = [
  "enhance",
  "filter",
  "generalize",
  "pivot",
  "similarity",
  "correlation",
  "distribution",
];

export interface ColumnStats {
  name: string;
  dtype: string;
  role: string;
  cardinality: number;
  nulls: number;
  min?: number;
  max?: number;
  mean?: number;
  std?: number;
  values?: (string | number)[];
}

export interface ColumnMeta {
  name: string;
  dtype: "quantitative" | "nominal" | "ordinal" | "temporal";
  role: "measure" | "dimension";
  cardinality: number;
  min: number | null;
  max: number | null;
  default_agg: string;
  stats: ColumnStats;
}

export interface SchemaPayload {
  dataset_id?: string;
  name: string;
  row_count: number;
  columns: ColumnMeta[];
}

export interface FilterJson {
  attr: string;
  value: string | number;
}

export interface VizSpecJson {
  attrs: string[];
  filters: FilterJson[];
  mark: Mark;
  channels: Record<string, Channel>;
  agg: string | null;
}

export interface SpecDiffJson {
  added: string[];
  removed: string[];
  swapped: [string, string][];
  added_filters: FilterJson[];
  removed_filters: FilterJson[];
  swapped_filters: [FilterJson, FilterJson][];
}

export interface ChartData {
  x: (number | string)[];
  y: number[];
  color: (string | number)[] | null;
  n: number;
}

export interface ScoreJson {
  value: number;
  objective: string;
  higher_is_better: boolean;
}

export interface RecItem {
  key: string;
  spec: VizSpecJson;
  score: ScoreJson;
  diff: SpecDiffJson;
  chart?: ChartData;
}

export interface RecCategory {
  category: { kind: CategoryKind; sub_kinds: string[] };
  k: number;
  items: RecItem[];
}

export interface RecSet {
  mode: "categorized" | "baseline";
  categories?: RecCategory[];
  items?: RecItem[];
}

export interface ViewPayload {
  view: VizSpecJson | null;
  key: string | null;
  chart: ChartData | null;
}

export interface DatasetListing {
  dataset_id: string;
  name: string;
  row_count: number;
}
