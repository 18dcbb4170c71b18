import { readFileSync, readdirSync } from 'node:fs';
import { join } from 'node:path';

import { describe, expect, it } from 'vitest';

import { ApiClient, ApiError, type FetchLike } from '../src/api.js';
import { MATRIX_DOC, SCATTER_DOC } from './fixtures.js';

interface LoggedRequest {
  url: string;
  method: string;
}

function stubFetch(routes: Record<string, { status: number; body: unknown }>) {
  const log: LoggedRequest[] = [];
  const fetchFn: FetchLike = async (url, init) => {
    log.push({ url, method: init?.method ?? 'GET' });
    const route = Object.entries(routes).find(([prefix]) => url.startsWith(prefix));
    const outcome = route ? route[1] : { status: 404, body: { code: 'not_found', message: url } };
    return {
      ok: outcome.status < 400,
      status: outcome.status,
      json: async () => outcome.body,
    };
  };
  return { fetchFn, log };
}

describe('ApiClient', () => {
  it('issues only GET requests across every endpoint', async () => {
    const { fetchFn, log } = stubFetch({
      '/api/v1/taxonomy': { status: 200, body: { categories: [] } },
      '/api/v1/wikis/ja/indicators': { status: 200, body: { values: [] } },
      '/api/v1/wikis/ja/series': { status: 200, body: { points: [] } },
      '/api/v1/wikis': { status: 200, body: { wikis: [], total: 0, limit: 100, offset: 0 } },
      '/api/v1/matrix': { status: 200, body: MATRIX_DOC },
      '/api/v1/scatter': { status: 200, body: SCATTER_DOC },
    });
    const client = new ApiClient('', fetchFn);
    await client.taxonomy();
    await client.wikis();
    await client.matrix('2021-02..2021-05');
    await client.scatter('2021-02..2021-05', 750000);
    await client.wikiIndicators('ja');
    await client.series('ja', 'views_by_country_entropy');
    expect(log).toHaveLength(6);
    expect(log.every((entry) => entry.method === 'GET')).toBe(true);
  });

  it('passes window and threshold as query parameters', async () => {
    const { fetchFn, log } = stubFetch({ '/api/v1/scatter': { status: 200, body: SCATTER_DOC } });
    await new ApiClient('', fetchFn).scatter('2021-02..2021-05', 750000);
    expect(log[0]!.url).toBe('/api/v1/scatter?window=2021-02..2021-05&min_articles=750000');
  });

  it('prefixes the configured API base', async () => {
    const { fetchFn, log } = stubFetch({
      'https://obs.example/api/v1/taxonomy': { status: 200, body: { categories: [] } },
    });
    await new ApiClient('https://obs.example', fetchFn).taxonomy();
    expect(log[0]!.url).toBe('https://obs.example/api/v1/taxonomy');
  });

  it('surfaces the service error body as a typed error', async () => {
    const { fetchFn } = stubFetch({
      '/api/v1/scatter': { status: 409, body: { code: 'insufficient_data', message: 'only 0 wikis' } },
    });
    const client = new ApiClient('', fetchFn);
    await expect(client.scatter(undefined, 10 ** 12)).rejects.toMatchObject({
      status: 409,
      code: 'insufficient_data',
    });
    await expect(client.scatter(undefined, 10 ** 12)).rejects.toBeInstanceOf(ApiError);
  });
});

describe('network discipline', () => {
  it('no module other than the API client touches fetch', () => {
    const srcDir = join(__dirname, '..', 'src');
    for (const name of readdirSync(srcDir)) {
      if (!name.endsWith('.ts') || name === 'api.ts') continue;
      const source = readFileSync(join(srcDir, name), 'utf-8');
      expect(source.includes('fetch(')).toBe(false);
    }
  });

  it('renderers never recompute scores or entropies from raw inputs', () => {
    const srcDir = join(__dirname, '..', 'src');
    for (const name of ['heatmap.ts', 'scatter.ts', 'series.ts']) {
      const source = readFileSync(join(srcDir, name), 'utf-8');
      // Natural log is the entropy primitive; it must stay server-side.
      // (Math.log10 in axis-tick layout is presentation, not score math.)
      expect(/Math\.log\(/.test(source)).toBe(false);
    }
  });
});
