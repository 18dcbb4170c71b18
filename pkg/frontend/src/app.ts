// Shell: owns view state, fetches documents, renders surfaces into the page.
// All traffic is GET; stale responses for superseded view states are dropped.

import { ApiClient, ApiError } from './api.js';
import { buildHeatmapModel, renderHeatmapHTML } from './heatmap.js';
import { buildScatterModel, renderScatterEmptyState, renderScatterSVG } from './scatter.js';
import { buildSeriesModel, renderSeriesHTML } from './series.js';
import { DEFAULT_MIN_ARTICLES, RequestSequencer, ViewState, parseViewState, serializeViewState } from './state.js';
import type { IndicatorsDoc } from './types.js';

export interface DashboardHost {
  root: HTMLElement;
  client: ApiClient;
  readSearch(): string;
  writeSearch(search: string): void;
}

const esc = (text: string): string =>
  text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;').replace(/"/g, '&quot;');

function errorHTML(error: unknown, retryAction: string): string {
  const message = error instanceof ApiError ? `${error.code}: ${error.message}` : String(error);
  return `<p class="error">${esc(message)} <button class="retry" data-retry="${esc(
    retryAction,
  )}">retry</button></p>`;
}

export class Dashboard {
  private state: ViewState;
  private readonly heatmapSeq = new RequestSequencer();
  private readonly scatterSeq = new RequestSequencer();
  private readonly drillSeq = new RequestSequencer();

  constructor(private readonly host: DashboardHost) {
    this.state = parseViewState(host.readSearch());
    host.root.innerHTML = `
      <section id="controls">
        <label>window <input id="window-input" placeholder="latest" value="${esc(
          this.state.window ?? '',
        )}"></label>
        <label>scatter min articles
          <input id="threshold-input" type="number" min="1" step="50000" value="${this.state.minArticles}">
        </label>
      </section>
      <section id="heatmap-panel"><h2>Risk heatmap</h2><div id="heatmap">loading…</div></section>
      <section id="scatter-panel"><h2>Geographic diversity</h2><div id="scatter">loading…</div></section>
      <section id="drilldown-panel" hidden><h2 id="drill-title"></h2><div id="drilldown"></div></section>
    `;
    this.bindEvents();
  }

  private section(id: string): HTMLElement {
    return this.host.root.querySelector(`#${id}`) as HTMLElement;
  }

  private update(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    this.host.writeSearch(serializeViewState(this.state));
  }

  private bindEvents(): void {
    this.host.root.addEventListener('click', (event) => {
      const target = event.target as HTMLElement;
      const sort = target.closest<HTMLElement>('[data-sort]')?.dataset['sort'];
      if (sort) {
        this.update({ sort });
        void this.renderHeatmap();
        return;
      }
      const wiki =
        target.closest<HTMLElement>('.drill')?.dataset['wiki'] ??
        target.closest<HTMLElement>('.cell')?.dataset['wiki'];
      if (wiki) {
        this.update({ wiki });
        void this.renderDrilldown();
        return;
      }
      const retry = target.closest<HTMLElement>('[data-retry]')?.dataset['retry'];
      if (retry === 'heatmap') void this.renderHeatmap();
      if (retry === 'scatter') void this.renderScatter();
      if (retry === 'drilldown') void this.renderDrilldown();
    });
    this.section('threshold-input').addEventListener('change', (event) => {
      const raw = Number((event.target as HTMLInputElement).value);
      this.update({
        minArticles: Number.isFinite(raw) && raw > 0 ? Math.floor(raw) : DEFAULT_MIN_ARTICLES,
      });
      void this.renderScatter();
    });
    this.section('window-input').addEventListener('change', (event) => {
      const raw = (event.target as HTMLInputElement).value.trim();
      this.update({ window: raw || undefined });
      void this.renderAll();
    });
  }

  async renderAll(): Promise<void> {
    await Promise.all([this.renderHeatmap(), this.renderScatter(), this.renderDrilldown()]);
  }

  async renderHeatmap(): Promise<void> {
    const token = this.heatmapSeq.begin();
    const container = this.section('heatmap');
    try {
      const doc = await this.host.client.matrix(this.state.window);
      if (!this.heatmapSeq.isCurrent(token)) return;
      container.innerHTML = renderHeatmapHTML(buildHeatmapModel(doc, this.state.sort));
    } catch (error) {
      if (!this.heatmapSeq.isCurrent(token)) return;
      container.innerHTML = errorHTML(error, 'heatmap');
    }
  }

  async renderScatter(): Promise<void> {
    const token = this.scatterSeq.begin();
    const container = this.section('scatter');
    try {
      const doc = await this.host.client.scatter(this.state.window, this.state.minArticles);
      if (!this.scatterSeq.isCurrent(token)) return;
      container.innerHTML = renderScatterSVG(buildScatterModel(doc));
    } catch (error) {
      if (!this.scatterSeq.isCurrent(token)) return;
      if (error instanceof ApiError && error.code === 'insufficient_data') {
        container.innerHTML = renderScatterEmptyState(this.state.minArticles);
      } else {
        container.innerHTML = errorHTML(error, 'scatter');
      }
    }
  }

  async renderDrilldown(): Promise<void> {
    const token = this.drillSeq.begin();
    const panel = this.section('drilldown-panel');
    const container = this.section('drilldown');
    const wiki = this.state.wiki;
    if (!wiki) {
      panel.hidden = true;
      return;
    }
    panel.hidden = false;
    this.section('drill-title').textContent = `${wiki} — indicators`;
    try {
      const doc = await this.host.client.wikiIndicators(wiki, this.state.window);
      if (!this.drillSeq.isCurrent(token)) return;
      container.innerHTML = this.renderIndicators(doc);
      void this.attachSeries(doc, token);
    } catch (error) {
      if (!this.drillSeq.isCurrent(token)) return;
      container.innerHTML = errorHTML(error, 'drilldown');
    }
  }

  private renderIndicators(doc: IndicatorsDoc): string {
    const rows = doc.values
      .map((value) => {
        const rendered =
          typeof value.value === 'number' ? value.value.toPrecision(6) : JSON.stringify(value.value);
        const provenance = `from ${value.provenance.snapshots.join(', ')} (method v${
          value.provenance.method_version
        }, ${value.provenance.computed_at})`;
        return `<tr><td class="id"><button class="pick-series" data-indicator="${esc(
          value.indicator_id,
        )}">${esc(value.indicator_id)}</button></td><td>${esc(value.kind)}</td><td class="num">${esc(
          rendered,
        )}</td><td class="provenance">${esc(provenance)}</td></tr>`;
      })
      .join('');
    return `<table class="indicators"><thead><tr><th>indicator</th><th>kind</th><th>value</th><th>provenance</th></tr></thead><tbody>${rows}</tbody></table><div id="series-slot"></div>`;
  }

  private async attachSeries(doc: IndicatorsDoc, token: number): Promise<void> {
    const slot = this.host.root.querySelector('#series-slot') as HTMLElement | null;
    if (!slot) return;
    const first = doc.values[0];
    const render = async (indicatorId: string) => {
      try {
        const series = await this.host.client.series(doc.wiki, indicatorId);
        if (!this.drillSeq.isCurrent(token)) return;
        slot.innerHTML = renderSeriesHTML(buildSeriesModel(series));
      } catch (error) {
        if (!this.drillSeq.isCurrent(token)) return;
        slot.innerHTML = errorHTML(error, 'drilldown');
      }
    };
    this.host.root.querySelectorAll<HTMLElement>('.pick-series').forEach((button) => {
      button.addEventListener('click', () => void render(button.dataset['indicator'] as string));
    });
    if (first) await render(first.indicator_id);
  }
}

export function mount(root: HTMLElement, apiBase: string): Dashboard {
  const dashboard = new Dashboard({
    root,
    client: new ApiClient(apiBase),
    readSearch: () => window.location.search,
    writeSearch: (search) => {
      const url = `${window.location.pathname}${search}`;
      window.history.replaceState(null, '', url);
    },
  });
  void dashboard.renderAll();
  return dashboard;
}
