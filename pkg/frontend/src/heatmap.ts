// Wiki x risk-category heatmap. Cells carry a percentile color; a cell with
// no data is a distinct "absent" state, never rendered as zero risk.

import type { MatrixDoc } from './types.js';

export type CellState = 'scored' | 'absent';

export interface HeatmapCell {
  category: string;
  state: CellState;
  score: number | null;
  contributing: number; // indicator count behind the score (coverage signal)
}

export interface HeatmapRowModel {
  wiki: string;
  cells: HeatmapCell[];
}

export interface HeatmapModel {
  window: string;
  categories: string[];
  rows: HeatmapRowModel[];
  sort?: string;
  empty: boolean;
}

export function buildHeatmapModel(doc: MatrixDoc, sort?: string): HeatmapModel {
  const categories = doc.categories;
  const rows: HeatmapRowModel[] = doc.rows.map((row) => ({
    wiki: row.wiki,
    cells: categories.map((category) => {
      const cell = row.cells[category] ?? null;
      return cell === null
        ? { category, state: 'absent' as const, score: null, contributing: 0 }
        : {
            category,
            state: 'scored' as const,
            score: cell.score,
            contributing: cell.contributing.length,
          };
    }),
  }));

  if (sort && categories.includes(sort)) {
    const column = categories.indexOf(sort);
    rows.sort((a, b) => {
      const scoreA = a.cells[column]!.score;
      const scoreB = b.cells[column]!.score;
      if (scoreA === null && scoreB === null) return a.wiki.localeCompare(b.wiki);
      if (scoreA === null) return 1; // absent sorts after every score
      if (scoreB === null) return -1;
      if (scoreB !== scoreA) return scoreB - scoreA; // riskiest first
      return a.wiki.localeCompare(b.wiki);
    });
  }

  return {
    window: `${doc.window.start}..${doc.window.end}`,
    categories: [...categories],
    rows,
    sort,
    empty: rows.length === 0,
  };
}

/** Percentile color: green (safe) through amber to red (risky). */
export function riskColor(score: number): string {
  const clamped = Math.max(0, Math.min(1, score));
  const hue = 120 * (1 - clamped);
  return `hsl(${hue.toFixed(0)}, 72%, 58%)`;
}

const esc = (text: string): string =>
  text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;').replace(/"/g, '&quot;');

export function renderHeatmapHTML(model: HeatmapModel): string {
  if (model.empty) {
    return '<p class="empty-state">No wikis in this cohort yet. Ingest and compute a window first.</p>';
  }
  const head = model.categories
    .map((category) => {
      const marker = model.sort === category ? ' ▾' : '';
      return `<th><button class="sort" data-sort="${esc(category)}">${esc(
        category.replace(/_/g, ' '),
      )}${marker}</button></th>`;
    })
    .join('');
  const body = model.rows
    .map((row) => {
      const cells = row.cells
        .map((cell) => {
          if (cell.state === 'absent') {
            return `<td class="cell absent" data-wiki="${esc(row.wiki)}" data-category="${esc(
              cell.category,
            )}" title="no data">&mdash;</td>`;
          }
          const score = cell.score as number;
          return `<td class="cell scored" data-wiki="${esc(row.wiki)}" data-category="${esc(
            cell.category,
          )}" style="background:${riskColor(score)}" title="risk ${score.toFixed(3)} from ${
            cell.contributing
          } indicator(s)">${score.toFixed(2)}</td>`;
        })
        .join('');
      return `<tr><th class="wiki"><button class="drill" data-wiki="${esc(row.wiki)}">${esc(
        row.wiki,
      )}</button></th>${cells}</tr>`;
    })
    .join('');
  return `<table class="heatmap"><thead><tr><th>wiki</th>${head}</tr></thead><tbody>${body}</tbody></table>`;
}
