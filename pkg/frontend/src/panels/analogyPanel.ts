/**
 * Analogy Panel: inspiration chips color-coded by source domain, the concept
 * box for manual prompt edits, and the inspiration/generate buttons.
 */

import { categoryColor } from '../colors.js';
import type { AppController } from '../controller.js';

export function mountAnalogyPanel(root: HTMLElement, controller: AppController): void {
  const panel = document.createElement('section');
  panel.className = 'analogy-panel';
  panel.innerHTML = `
    <h2>Analogies</h2>
    <div class="session-line"></div>
    <button type="button" class="inspire-button">Get inspirations</button>
    <div class="chips" role="list"></div>
    <label class="concept-box">
      Concept box
      <input type="text" class="prompt-input" placeholder="edit the prompt manually" />
    </label>
    <button type="button" class="generate-button">Generate</button>
    <div class="warnings" aria-live="polite"></div>
  `;
  root.appendChild(panel);

  const chips = panel.querySelector('.chips') as HTMLElement;
  const sessionLine = panel.querySelector('.session-line') as HTMLElement;
  const warnings = panel.querySelector('.warnings') as HTMLElement;
  const promptInput = panel.querySelector('.prompt-input') as HTMLInputElement;

  (panel.querySelector('.inspire-button') as HTMLButtonElement).addEventListener('click', () => {
    void controller.requestInspirations().catch((error) => {
      warnings.textContent = String(error);
    });
  });
  (panel.querySelector('.generate-button') as HTMLButtonElement).addEventListener('click', () => {
    void controller.generate().catch((error) => {
      warnings.textContent = String(error);
    });
  });
  promptInput.addEventListener('change', () => {
    if (promptInput.value.trim()) {
      void controller.setPrompt(promptInput.value).catch((error) => {
        warnings.textContent = String(error);
      });
    }
  });

  controller.store.subscribe(() => {
    const view = controller.store.get();
    const session = view.session;
    if (session) {
      sessionLine.textContent =
        `${session.subject} / ${session.concept}` +
        (session.inspiration ? ` -> ${session.inspiration}` : '');
    }
    chips.replaceChildren(
      ...view.inspirations.map((item) => {
        const chip = document.createElement('button');
        chip.type = 'button';
        chip.className = 'chip';
        chip.dataset.category = item.category;
        chip.dataset.label = item.label;
        chip.style.backgroundColor = categoryColor(item.category);
        chip.textContent = item.label;
        if (session?.inspiration === item.label) chip.classList.add('selected');
        chip.addEventListener('click', () => {
          void controller.selectInspiration(item.label).catch((error) => {
            warnings.textContent = String(error);
          });
        });
        return chip;
      }),
    );
    warnings.textContent = view.lastError ?? '';
  });
}
