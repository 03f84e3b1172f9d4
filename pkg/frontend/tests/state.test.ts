import { describe, expect, it, vi } from 'vitest';

import { Store, currentScaffold, initialView, reduce } from '../src/state.js';
import { iteration, sessionState } from './fixtures.js';

describe('reducer', () => {
  it('server state replaces the session snapshot', () => {
    const view = reduce(initialView(), { type: 'server-state', state: sessionState() });
    expect(view.session?.id).toBe('s1');
  });

  it('keeps the last non-empty inspiration set', () => {
    let view = reduce(initialView(), {
      type: 'inspirations',
      items: [{ label: 'tortoise', category: 'nature', parent: null }],
    });
    view = reduce(view, { type: 'server-state', state: sessionState() });
    expect(view.inspirations).toHaveLength(1);
    view = reduce(view, {
      type: 'server-state',
      state: sessionState({
        active_inspirations: [{ label: 'tank', category: 'architecture', parent: 'tortoise' }],
      }),
    });
    expect(view.inspirations[0]?.label).toBe('tank');
  });

  it('optimistic strokes reconcile away once acknowledged', () => {
    let view = reduce(initialView(), {
      type: 'stroke-buffered',
      stroke: { localId: 'l1', points: [[0, 0], [10, 10]], width: 3, status: 'sending' },
    });
    expect(view.pending).toHaveLength(1);
    view = reduce(view, { type: 'stroke-acked', localId: 'l1' });
    expect(view.pending).toHaveLength(0);
  });

  it('failed strokes become unsynced and can be retried', () => {
    let view = reduce(initialView(), {
      type: 'stroke-buffered',
      stroke: { localId: 'l1', points: [[0, 0], [10, 10]], width: 3, status: 'sending' },
    });
    view = reduce(view, { type: 'stroke-failed', localId: 'l1', error: 'offline' });
    expect(view.pending[0]?.status).toBe('unsynced');
    expect(view.pending[0]?.error).toBe('offline');
    view = reduce(view, { type: 'stroke-retrying', localId: 'l1' });
    expect(view.pending[0]?.status).toBe('sending');
  });

  it('warns when the evolution history has gaps', () => {
    const warn = vi.spyOn(console, 'warn').mockImplementation(() => {});
    try {
      reduce(initialView(), {
        type: 'server-state',
        state: sessionState({ iterations: [iteration(0), iteration(2)] }),
      });
      expect(warn).toHaveBeenCalled();
    } finally {
      warn.mockRestore();
    }
  });
});

describe('currentScaffold', () => {
  it('is null with no session or no current iteration', () => {
    expect(currentScaffold(initialView())).toBeNull();
    const view = reduce(initialView(), { type: 'server-state', state: sessionState() });
    expect(currentScaffold(view)).toBeNull();
  });

  it('resolves the displayed iteration scaffold and alpha', () => {
    let view = reduce(initialView(), {
      type: 'server-state',
      state: sessionState({
        iterations: [iteration(0), iteration(1)],
        current_iteration_index: 1,
      }),
    });
    expect(currentScaffold(view)?.url).toBe('/sessions/s1/iterations/1/scaffold');
    expect(currentScaffold(view)?.alpha).toBe(0.3);
    view = reduce(view, { type: 'underlay-alpha', alpha: 0.8 });
    expect(currentScaffold(view)?.alpha).toBe(0.8);
  });

  it('hides the underlay for missing images', () => {
    const view = reduce(initialView(), {
      type: 'server-state',
      state: sessionState({
        iterations: [iteration(0, { images_missing: true })],
        current_iteration_index: 0,
      }),
    });
    expect(currentScaffold(view)).toBeNull();
  });
});

describe('Store', () => {
  it('notifies subscribers on dispatch and supports unsubscribe', () => {
    const store = new Store();
    let calls = 0;
    const off = store.subscribe(() => calls++);
    store.dispatch({ type: 'tool', tool: 'erase' });
    expect(store.get().tool).toBe('erase');
    expect(calls).toBe(1);
    off();
    store.dispatch({ type: 'tool', tool: 'draw' });
    expect(calls).toBe(1);
  });
});
