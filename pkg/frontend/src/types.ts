// Document shapes served by the observatory API (v1). The dashboard renders
// these fields verbatim; score math lives server-side only.

export interface MonthWindow {
  start: string; // "YYYY-MM"
  end: string; // half-open
}

export interface TaxonomyLeaf {
  id: string;
  origin: 'internal' | 'external';
  subgroup: 'community' | 'content' | 'none';
}

export interface TaxonomyDoc {
  categories: TaxonomyLeaf[];
}

export interface WikiEntry {
  code: string;
  family: string;
  windows: string[];
}

export interface WikisDoc {
  wikis: WikiEntry[];
  total: number;
  limit: number;
  offset: number;
}

export interface MatrixCell {
  score: number;
  contributing: { indicator_id: string; risk_percentile: number }[];
}

export interface MatrixRow {
  wiki: string;
  cells: Record<string, MatrixCell | null>;
}

export interface MatrixDoc {
  schema_version: number;
  window: MonthWindow;
  cohort: string[];
  categories: string[];
  method_version: number;
  computed_at: string;
  rows: MatrixRow[];
}

export interface ScatterDocPoint {
  wiki: string;
  edit_entropy: number;
  view_entropy: number;
  articles: number;
}

export interface ScatterFit {
  slope: number;
  intercept: number;
  r_squared: number;
  n_points: number;
}

export interface ScatterDoc {
  schema_version: number;
  window: MonthWindow;
  min_articles: number;
  computed_at: string;
  points: ScatterDocPoint[];
  fit: ScatterFit;
}

export interface IndicatorValue {
  indicator_id: string;
  wiki: string;
  family: string;
  window: MonthWindow;
  kind: 'count' | 'ratio' | 'distribution' | 'entropy' | 'score';
  value: number | Record<string, number>;
  provenance: { snapshots: string[]; method_version: number; computed_at: string };
  detail?: Record<string, number>;
}

export interface IndicatorsDoc {
  schema_version: number;
  wiki: string;
  family: string;
  window: MonthWindow;
  values: IndicatorValue[];
}

export interface SeriesDoc {
  wiki: string;
  family: string;
  indicator_id: string;
  points: { window: MonthWindow; value: number }[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
}
