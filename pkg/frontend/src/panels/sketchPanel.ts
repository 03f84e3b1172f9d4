/**
 * Sketching Panel: layered canvas stack (scaffold underlay below, user ink
 * above, like tracing paper), stroke capture, Undo/Clear/Eraser/Remix tools,
 * and the underlay opacity slider.
 *
 * The underlay is an <img> pointing at the scaffold PNG of the currently
 * displayed iteration; the ink layer re-renders from the server stroke list
 * plus the optimistic in-flight buffer. Canvas 2D may be unavailable in
 * headless test DOMs, so every draw call is guarded.
 */

import type { AppController } from '../controller.js';
import { currentScaffold } from '../state.js';
import { StrokeCapture, hitTestStroke } from '../strokeCapture.js';

function context2d(canvas: HTMLCanvasElement): CanvasRenderingContext2D | null {
  try {
    return canvas.getContext('2d');
  } catch {
    return null;
  }
}

export function mountSketchPanel(root: HTMLElement, controller: AppController): void {
  const panel = document.createElement('section');
  panel.className = 'sketch-panel';
  panel.innerHTML = `
    <h2>Sketch</h2>
    <div class="toolbar">
      <button type="button" data-tool="undo">Undo</button>
      <button type="button" data-tool="clear">Clear</button>
      <button type="button" data-tool="eraser" aria-pressed="false">Eraser</button>
      <button type="button" data-tool="remix">Remix</button>
      <label class="alpha-label">Underlay
        <input type="range" class="alpha-slider" min="0" max="100" value="30" />
      </label>
    </div>
    <div class="canvas-stack">
      <img class="underlay-layer" alt="" draggable="false" />
      <canvas class="ink-layer"></canvas>
    </div>
    <div class="unsynced-tray" aria-live="polite"></div>
  `;
  root.appendChild(panel);

  const stack = panel.querySelector('.canvas-stack') as HTMLElement;
  const underlay = panel.querySelector('.underlay-layer') as HTMLImageElement;
  const ink = panel.querySelector('.ink-layer') as HTMLCanvasElement;
  const tray = panel.querySelector('.unsynced-tray') as HTMLElement;
  const alphaSlider = panel.querySelector('.alpha-slider') as HTMLInputElement;
  const eraserButton = panel.querySelector('[data-tool="eraser"]') as HTMLButtonElement;

  // user ink must always render above the scaffold underlay
  underlay.style.zIndex = '1';
  ink.style.zIndex = '2';

  (panel.querySelector('[data-tool="undo"]') as HTMLButtonElement).addEventListener('click', () => {
    void controller.undo();
  });
  (panel.querySelector('[data-tool="clear"]') as HTMLButtonElement).addEventListener('click', () => {
    void controller.clear();
  });
  (panel.querySelector('[data-tool="remix"]') as HTMLButtonElement).addEventListener('click', () => {
    void controller.remix();
  });
  eraserButton.addEventListener('click', () => {
    const next = controller.store.get().tool === 'erase' ? 'draw' : 'erase';
    controller.setTool(next);
  });
  alphaSlider.addEventListener('input', () => {
    controller.setUnderlayAlpha(Number(alphaSlider.value) / 100);
  });

  const capture = new StrokeCapture();

  function canvasPoint(event: MouseEvent): [number, number] {
    const rect = stack.getBoundingClientRect();
    return [event.clientX - rect.left, event.clientY - rect.top];
  }

  stack.addEventListener('pointerdown', (event) => {
    const [x, y] = canvasPoint(event as MouseEvent);
    const view = controller.store.get();
    if (view.tool === 'erase') {
      const hit = hitTestStroke(view.session?.strokes ?? [], x, y);
      if (hit) void controller.eraseStroke(hit);
      return;
    }
    capture.begin(x, y);
  });
  stack.addEventListener('pointermove', (event) => {
    const [x, y] = canvasPoint(event as MouseEvent);
    capture.move(x, y);
    render();
  });
  stack.addEventListener('pointerup', (event) => {
    const [x, y] = canvasPoint(event as MouseEvent);
    const points = capture.end(x, y);
    if (points) void controller.submitStroke(points); // optimistic render happens via the buffer
    render();
  });
  stack.addEventListener('pointerleave', () => {
    capture.cancel();
    render();
  });

  function drawPolyline(
    ctx: CanvasRenderingContext2D,
    points: readonly [number, number][],
    width: number,
    style: string,
  ): void {
    if (points.length < 2) return;
    ctx.strokeStyle = style;
    ctx.lineWidth = width;
    ctx.lineCap = 'square';
    ctx.beginPath();
    const first = points[0];
    if (!first) return;
    ctx.moveTo(first[0], first[1]);
    for (const [x, y] of points.slice(1)) ctx.lineTo(x, y);
    ctx.stroke();
  }

  function render(): void {
    const view = controller.store.get();
    const session = view.session;
    if (session) {
      ink.width = session.canvas.width;
      ink.height = session.canvas.height;
      stack.style.width = `${session.canvas.width}px`;
      stack.style.height = `${session.canvas.height}px`;
    }
    const scaffold = currentScaffold(view);
    if (scaffold) {
      const url = controller.api.imageUrl(scaffold.url);
      if (underlay.getAttribute('src') !== url) underlay.setAttribute('src', url);
      underlay.style.opacity = String(view.underlayAlpha ?? scaffold.alpha);
      underlay.style.visibility = 'visible';
      underlay.dataset.iteration = String(session?.current_iteration_index ?? '');
    } else {
      underlay.style.visibility = 'hidden';
      underlay.removeAttribute('src');
      delete underlay.dataset.iteration;
    }

    const ctx = context2d(ink);
    if (ctx) {
      ctx.clearRect(0, 0, ink.width, ink.height);
      for (const stroke of session?.strokes ?? []) {
        if (!stroke.erased) drawPolyline(ctx, stroke.points, stroke.width, '#111');
      }
      for (const pending of view.pending) {
        const style = pending.status === 'unsynced' ? 'rgba(90,90,90,0.5)' : '#555';
        drawPolyline(ctx, pending.points, pending.width, style);
      }
      if (capture.isActive) drawPolyline(ctx, capture.currentPoints, 3, '#555');
    }

    eraserButton.setAttribute('aria-pressed', String(view.tool === 'erase'));
    tray.replaceChildren(
      ...view.pending
        .filter((p) => p.status === 'unsynced')
        .map((p) => {
          const row = document.createElement('div');
          row.className = 'unsynced-stroke';
          row.dataset.localId = p.localId;
          row.textContent = 'stroke not synced ';
          const retry = document.createElement('button');
          retry.type = 'button';
          retry.className = 'retry-button';
          retry.textContent = 'retry';
          retry.addEventListener('click', () => void controller.retryStroke(p.localId));
          row.appendChild(retry);
          return row;
        }),
    );
  }

  controller.store.subscribe(render);
}
