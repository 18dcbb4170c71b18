// Per-wiki indicator time series: ascending windows, gaps left visible.

import type { SeriesDoc } from './types.js';

export interface SeriesPoint {
  label: string; // window label
  value: number;
  gapBefore: boolean; // true when the previous stored window is not adjacent
}

export interface SeriesModel {
  wiki: string;
  indicatorId: string;
  points: SeriesPoint[];
  empty: boolean;
}

export function buildSeriesModel(doc: SeriesDoc): SeriesModel {
  const points: SeriesPoint[] = doc.points.map((point, i) => {
    const previous = i > 0 ? doc.points[i - 1] : undefined;
    return {
      label: `${point.window.start}..${point.window.end}`,
      value: point.value,
      gapBefore: previous !== undefined && previous.window.end !== point.window.start,
    };
  });
  return {
    wiki: doc.wiki,
    indicatorId: doc.indicator_id,
    points,
    empty: points.length === 0,
  };
}

const esc = (text: string): string =>
  text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;').replace(/"/g, '&quot;');

export function renderSeriesHTML(model: SeriesModel): string {
  if (model.empty) {
    return `<p class="empty-state">${esc(model.indicatorId)} is not available for this wiki.</p>`;
  }
  const max = Math.max(...model.points.map((p) => Math.abs(p.value)), 1e-12);
  const bars = model.points
    .map((point) => {
      const pct = Math.max(2, (Math.abs(point.value) / max) * 100);
      const gap = point.gapBefore ? '<li class="gap" title="missing window">⋯</li>' : '';
      return `${gap}<li class="bar" title="${esc(point.label)}: ${point.value}"><span style="height:${pct.toFixed(
        1,
      )}%"></span><label>${esc(point.label.slice(0, 7))}</label></li>`;
    })
    .join('');
  return `<div class="series"><h3>${esc(model.indicatorId)} — ${esc(
    model.wiki,
  )}</h3><ul class="bars">${bars}</ul></div>`;
}
