/**
 * Evolution Panel: the scrollable history of every generated iteration, in
 * server index order, with design thumbnails and generation metadata.
 */

import type { AppController } from '../controller.js';

export function mountEvolutionPanel(root: HTMLElement, controller: AppController): void {
  const panel = document.createElement('section');
  panel.className = 'evolution-panel';
  panel.innerHTML = `
    <h2>Evolution</h2>
    <ol class="evolution-list"></ol>
  `;
  root.appendChild(panel);
  const list = panel.querySelector('.evolution-list') as HTMLOListElement;

  controller.store.subscribe(() => {
    const view = controller.store.get();
    const session = view.session;
    if (!session) return;
    list.replaceChildren(
      ...session.iterations.map((iteration) => {
        const item = document.createElement('li');
        item.className = 'evolution-item';
        item.dataset.index = String(iteration.index);
        if (iteration.index === session.current_iteration_index) item.classList.add('current');
        const img = document.createElement('img');
        img.className = 'design-thumb';
        img.alt = iteration.prompt;
        if (!iteration.images_missing) {
          img.src = controller.api.imageUrl(iteration.design_url);
        }
        const meta = document.createElement('span');
        meta.className = 'evo-meta';
        meta.textContent = `#${iteration.index} · ${iteration.stroke_count} strokes · G=${iteration.guidance.toFixed(2)}`;
        item.append(img, meta);
        return item;
      }),
    );
  });
}
