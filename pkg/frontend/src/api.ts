// Read-only API client. Every request is a GET; the fetch function is
// injectable so tests can stub the network and assert on the traffic log.

import type {
  ApiErrorBody,
  IndicatorsDoc,
  MatrixDoc,
  ScatterDoc,
  SeriesDoc,
  TaxonomyDoc,
  WikisDoc,
} from './types.js';

export type FetchLike = (url: string, init?: { method?: string }) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

function query(params: Record<string, string | number | undefined>): string {
  const search = new URLSearchParams();
  for (const [key, value] of Object.entries(params)) {
    if (value !== undefined) search.set(key, String(value));
  }
  const text = search.toString();
  return text ? `?${text}` : '';
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url) => fetch(url, { method: 'GET' }),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, { method: 'GET' });
    if (!response.ok) {
      let body: ApiErrorBody = { code: 'http_error', message: `status ${response.status}` };
      try {
        body = (await response.json()) as ApiErrorBody;
      } catch {
        // non-JSON error body: keep the fallback
      }
      throw new ApiError(response.status, body.code, body.message);
    }
    return (await response.json()) as T;
  }

  taxonomy(): Promise<TaxonomyDoc> {
    return this.get('/api/v1/taxonomy');
  }

  wikis(limit = 500): Promise<WikisDoc> {
    return this.get(`/api/v1/wikis${query({ limit })}`);
  }

  matrix(window?: string): Promise<MatrixDoc> {
    return this.get(`/api/v1/matrix${query({ window })}`);
  }

  scatter(window?: string, minArticles?: number): Promise<ScatterDoc> {
    return this.get(`/api/v1/scatter${query({ window, min_articles: minArticles })}`);
  }

  wikiIndicators(code: string, window?: string): Promise<IndicatorsDoc> {
    return this.get(`/api/v1/wikis/${encodeURIComponent(code)}/indicators${query({ window })}`);
  }

  series(code: string, indicatorId: string): Promise<SeriesDoc> {
    return this.get(
      `/api/v1/wikis/${encodeURIComponent(code)}/series/${encodeURIComponent(indicatorId)}`,
    );
  }
}
