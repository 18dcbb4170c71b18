// Stub API documents mirroring the service's canonical shapes.

import type { MatrixDoc, ScatterDoc, SeriesDoc } from '../src/types.js';

export const CATEGORIES = [
  'community_capacity',
  'community_governance',
  'community_demographics',
  'content_verifiability',
  'content_quality',
  'content_controversiality',
  'media',
  'geopolitics',
];

function cells(scores: Record<string, number | null>): MatrixDoc['rows'][number]['cells'] {
  const out: MatrixDoc['rows'][number]['cells'] = {};
  for (const category of CATEGORIES) {
    const score = scores[category];
    out[category] =
      score === null || score === undefined
        ? null
        : { score, contributing: [{ indicator_id: 'x', risk_percentile: score }] };
  }
  return out;
}

export const MATRIX_DOC: MatrixDoc = {
  schema_version: 1,
  window: { start: '2021-02', end: '2021-05' },
  cohort: ['aa', 'bb', 'cc'],
  categories: CATEGORIES,
  method_version: 1,
  computed_at: '2021-05-02T04:10:00Z',
  rows: [
    {
      wiki: 'aa',
      cells: cells({
        community_capacity: 0.9,
        community_governance: 0.4,
        community_demographics: 0.8,
        content_verifiability: 0.1,
        content_quality: 0.5,
        content_controversiality: 0.2,
        media: null, // absent: must never render as zero risk
        geopolitics: 0.7,
      }),
    },
    {
      wiki: 'bb',
      cells: cells({
        community_capacity: 0.2,
        community_governance: 0.6,
        community_demographics: 0.3,
        content_verifiability: 0.9,
        content_quality: 0.0, // a true zero: lowest risk, still a scored cell
        content_controversiality: 0.4,
        media: 0.5,
        geopolitics: null,
      }),
    },
    {
      wiki: 'cc',
      cells: cells({
        community_capacity: 0.5,
        community_governance: 0.5,
        community_demographics: 0.5,
        content_verifiability: 0.5,
        content_quality: 0.5,
        content_controversiality: 0.5,
        media: 0.5,
        geopolitics: 0.5,
      }),
    },
  ],
};

export const SCATTER_DOC: ScatterDoc = {
  schema_version: 1,
  window: { start: '2021-02', end: '2021-05' },
  min_articles: 500000,
  computed_at: '2021-05-02T04:10:00Z',
  points: [
    { wiki: 'ja', edit_entropy: 0.39, view_entropy: 0.34, articles: 1260000 },
    { wiki: 'en', edit_entropy: 2.54, view_entropy: 2.68, articles: 6280000 },
    { wiki: 'ceb', edit_entropy: 2.11, view_entropy: 0.86, articles: 5980000 },
    { wiki: 'arz', edit_entropy: 0.67, view_entropy: 2.48, articles: 1130000 },
  ],
  fit: { slope: 0.652, intercept: 0.444, r_squared: 0.389, n_points: 4 },
};

export const SERIES_DOC: SeriesDoc = {
  wiki: 'ja',
  family: 'wikipedia',
  indicator_id: 'views_by_country_entropy',
  points: [
    { window: { start: '2021-02', end: '2021-05' }, value: 0.34 },
    { window: { start: '2021-05', end: '2021-08' }, value: 0.36 },
    // gap: 2021-08..2021-11 missing
    { window: { start: '2021-11', end: '2022-02' }, value: 0.33 },
  ],
};

export const EMPTY_SERIES_DOC: SeriesDoc = {
  wiki: 'ja',
  family: 'wikipedia',
  indicator_id: 'stub_ratio',
  points: [],
};
