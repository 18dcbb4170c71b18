// Edit-vs-view geographic diversity scatter. Points and the regression line
// come straight from the API document; nothing is refit client-side.

import type { ScatterDoc } from './types.js';

export interface PlotPoint {
  wiki: string;
  x: number; // edit entropy (nats)
  y: number; // view entropy (nats)
  px: number; // pixel coords
  py: number;
}

export interface PlotLine {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  px1: number;
  py1: number;
  px2: number;
  py2: number;
}

export interface ScatterModel {
  points: PlotPoint[];
  line: PlotLine;
  fit: ScatterDoc['fit'];
  minArticles: number;
  window: string;
  width: number;
  height: number;
  ticksX: { value: number; px: number }[];
  ticksY: { value: number; py: number }[];
}

export interface ScatterLayout {
  width?: number;
  height?: number;
  margin?: number;
}

function niceTicks(lo: number, hi: number, count: number): number[] {
  if (!(hi > lo)) return [lo];
  const step = (hi - lo) / Math.max(1, count - 1);
  const magnitude = 10 ** Math.floor(Math.log10(step));
  const snapped = [1, 2, 5, 10].map((m) => m * magnitude).find((s) => s >= step) ?? step;
  const first = Math.ceil(lo / snapped) * snapped;
  const ticks: number[] = [];
  for (let v = first; v <= hi + 1e-9; v += snapped) ticks.push(Number(v.toFixed(10)));
  return ticks;
}

export function buildScatterModel(doc: ScatterDoc, layout: ScatterLayout = {}): ScatterModel {
  const width = layout.width ?? 560;
  const height = layout.height ?? 420;
  const margin = layout.margin ?? 48;

  const xs = doc.points.map((p) => p.edit_entropy);
  const ys = doc.points.map((p) => p.view_entropy);
  const xLo = Math.min(0, ...xs);
  const xHi = Math.max(...xs, 0.1) * 1.05;
  const yLo = Math.min(0, ...ys);
  const yHi = Math.max(...ys, 0.1) * 1.05;

  const sx = (x: number) => margin + ((x - xLo) / (xHi - xLo)) * (width - 2 * margin);
  const sy = (y: number) => height - margin - ((y - yLo) / (yHi - yLo)) * (height - 2 * margin);

  const points: PlotPoint[] = doc.points.map((p) => ({
    wiki: p.wiki,
    x: p.edit_entropy,
    y: p.view_entropy,
    px: sx(p.edit_entropy),
    py: sy(p.view_entropy),
  }));

  // The line is y = slope*x + intercept evaluated at the x-domain edges.
  const { slope, intercept } = doc.fit;
  const line: PlotLine = {
    x1: xLo,
    y1: slope * xLo + intercept,
    x2: xHi,
    y2: slope * xHi + intercept,
    px1: sx(xLo),
    py1: sy(slope * xLo + intercept),
    px2: sx(xHi),
    py2: sy(slope * xHi + intercept),
  };

  return {
    points,
    line,
    fit: doc.fit,
    minArticles: doc.min_articles,
    window: `${doc.window.start}..${doc.window.end}`,
    width,
    height,
    ticksX: niceTicks(xLo, xHi, 6).map((value) => ({ value, px: sx(value) })),
    ticksY: niceTicks(yLo, yHi, 6).map((value) => ({ value, py: sy(value) })),
  };
}

const esc = (text: string): string =>
  text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;').replace(/"/g, '&quot;');

export function renderScatterSVG(model: ScatterModel): string {
  const axes = `<line class="axis" x1="48" y1="${model.height - 48}" x2="${model.width - 48}" y2="${
    model.height - 48
  }"/><line class="axis" x1="48" y1="48" x2="48" y2="${model.height - 48}"/>`;
  const ticks =
    model.ticksX
      .map(
        (t) =>
          `<text class="tick" x="${t.px.toFixed(1)}" y="${model.height - 30}" text-anchor="middle">${t.value}</text>`,
      )
      .join('') +
    model.ticksY
      .map(
        (t) => `<text class="tick" x="40" y="${t.py.toFixed(1)}" text-anchor="end">${t.value}</text>`,
      )
      .join('');
  const line = `<line class="fit" x1="${model.line.px1.toFixed(1)}" y1="${model.line.py1.toFixed(
    1,
  )}" x2="${model.line.px2.toFixed(1)}" y2="${model.line.py2.toFixed(1)}"/>`;
  const points = model.points
    .map(
      (p) =>
        `<g class="point" data-wiki="${esc(p.wiki)}"><circle cx="${p.px.toFixed(1)}" cy="${p.py.toFixed(
          1,
        )}" r="4"><title>${esc(p.wiki)}: edit ${p.x.toFixed(3)}, view ${p.y.toFixed(
          3,
        )} nats</title></circle><text x="${(p.px + 6).toFixed(1)}" y="${(p.py - 6).toFixed(1)}">${esc(
          p.wiki,
        )}</text></g>`,
    )
    .join('');
  const caption = `<text class="caption" x="${model.width / 2}" y="${
    model.height - 8
  }" text-anchor="middle">edit entropy (nats) vs view entropy (nats) — fit slope ${model.fit.slope.toFixed(
    3,
  )}, r² ${model.fit.r_squared.toFixed(3)}</text>`;
  return `<svg class="scatter" viewBox="0 0 ${model.width} ${model.height}" role="img">${axes}${ticks}${line}${points}${caption}</svg>`;
}

export function renderScatterEmptyState(minArticles: number): string {
  return `<p class="empty-state">Fewer than two wikis exceed ${minArticles.toLocaleString(
    'en-US',
  )} articles in this window; lower the threshold to see the diversity plane.</p>`;
}
