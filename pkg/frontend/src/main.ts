import { mount } from './app.js';

declare global {
  interface Window {
    OBSERVATORY_API_BASE?: string;
  }
}

const root = document.getElementById('app');
if (root) {
  // Runtime-configurable API origin; same-origin by default.
  const apiBase = window.OBSERVATORY_API_BASE ?? '';
  mount(root, apiBase);
}
