// View state lives entirely in the URL: pasting a link reproduces the view.

export const DEFAULT_MIN_ARTICLES = 500_000;

export interface ViewState {
  window?: string; // month window label, e.g. "2021-02..2021-05"
  wiki?: string; // drill-down wiki code, absent = overview
  minArticles: number; // scatter qualification threshold
  sort?: string; // heatmap sort column (category id)
}

export function parseViewState(search: string): ViewState {
  const params = new URLSearchParams(search.startsWith('?') ? search.slice(1) : search);
  const state: ViewState = { minArticles: DEFAULT_MIN_ARTICLES };
  const window = params.get('window');
  if (window) state.window = window;
  const wiki = params.get('wiki');
  if (wiki) state.wiki = wiki;
  const sort = params.get('sort');
  if (sort) state.sort = sort;
  const minArticles = Number(params.get('min_articles'));
  if (Number.isFinite(minArticles) && minArticles > 0) state.minArticles = minArticles;
  return state;
}

export function serializeViewState(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.window) params.set('window', state.window);
  if (state.wiki) params.set('wiki', state.wiki);
  if (state.sort) params.set('sort', state.sort);
  if (state.minArticles !== DEFAULT_MIN_ARTICLES) {
    params.set('min_articles', String(state.minArticles));
  }
  const text = params.toString();
  return text ? `?${text}` : '';
}

/**
 * Guards against out-of-order async responses: only the most recently begun
 * request for a surface may commit its result.
 */
export class RequestSequencer {
  private latest = 0;

  begin(): number {
    this.latest += 1;
    return this.latest;
  }

  isCurrent(token: number): boolean {
    return token === this.latest;
  }
}
