import { describe, expect, it } from 'vitest';

import { buildSeriesModel, renderSeriesHTML } from '../src/series.js';
import { EMPTY_SERIES_DOC, SERIES_DOC } from './fixtures.js';

describe('buildSeriesModel', () => {
  it('keeps one marker per stored window, ascending', () => {
    const model = buildSeriesModel(SERIES_DOC);
    expect(model.points).toHaveLength(3);
    expect(model.points.map((p) => p.label)).toEqual([
      '2021-02..2021-05',
      '2021-05..2021-08',
      '2021-11..2022-02',
    ]);
  });

  it('marks a gap when consecutive windows are not adjacent, without interpolating', () => {
    const model = buildSeriesModel(SERIES_DOC);
    expect(model.points.map((p) => p.gapBefore)).toEqual([false, false, true]);
    expect(model.points).toHaveLength(3); // no synthetic fill-in point
  });

  it('flags an absent indicator', () => {
    const model = buildSeriesModel(EMPTY_SERIES_DOC);
    expect(model.empty).toBe(true);
    expect(renderSeriesHTML(model)).toContain('not available for this wiki');
  });
});

describe('renderSeriesHTML', () => {
  it('renders three bars and one visible break', () => {
    const html = renderSeriesHTML(buildSeriesModel(SERIES_DOC));
    expect(html.match(/class="bar"/g)).toHaveLength(3);
    expect(html.match(/class="gap"/g)).toHaveLength(1);
  });
});
