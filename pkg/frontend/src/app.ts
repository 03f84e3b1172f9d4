/**
 * Entry point: a small start form, then the three-panel layout. The API base
 * defaults to the page origin and can be overridden with ?api=http://host:port.
 */

import { ApiClient } from './api.js';
import { AppController } from './controller.js';
import { mountAnalogyPanel } from './panels/analogyPanel.js';
import { mountEvolutionPanel } from './panels/evolutionPanel.js';
import { mountSketchPanel } from './panels/sketchPanel.js';

export function buildApp(root: HTMLElement, controller: AppController): void {
  const layout = document.createElement('main');
  layout.className = 'layout';
  root.appendChild(layout);
  mountAnalogyPanel(layout, controller);
  mountSketchPanel(layout, controller);
  mountEvolutionPanel(layout, controller);
}

export function mountStartForm(root: HTMLElement, controller: AppController): void {
  const form = document.createElement('form');
  form.className = 'start-form';
  form.innerHTML = `
    <h1>inkspire</h1>
    <label>Subject <input name="subject" value="car" required /></label>
    <label>Concept <input name="concept" value="protective" required /></label>
    <button type="submit">Start sketching</button>
    <p class="start-error" aria-live="polite"></p>
  `;
  root.appendChild(form);
  form.addEventListener('submit', (event) => {
    event.preventDefault();
    const data = new FormData(form);
    const subject = String(data.get('subject') ?? '').trim();
    const concept = String(data.get('concept') ?? '').trim();
    controller
      .start(subject, concept)
      .then(() => {
        form.remove();
        buildApp(root, controller);
      })
      .catch((error) => {
        (form.querySelector('.start-error') as HTMLElement).textContent = String(error);
      });
  });
}

export function main(root: HTMLElement): void {
  const params = new URLSearchParams(window.location.search);
  const api = new ApiClient(params.get('api') ?? '');
  const controller = new AppController(api);
  mountStartForm(root, controller);
}

// boot only on a page that provides the mount point (not in test DOMs)
if (typeof document !== 'undefined') {
  const root = document.getElementById('app');
  if (root) main(root);
}
