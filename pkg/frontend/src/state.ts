/**
 * Client session view: the server state mirror plus the in-flight stroke
 * buffer and connection status. All updates funnel through one reducer on the
 * single UI thread, and the view converges to the server state after each
 * acknowledged mutation (optimistic strokes are reconciled away once the
 * server echoes them back).
 */

import type { InspirationItem, SessionState } from './types.js';

export type SyncStatus = 'sending' | 'unsynced';

export interface PendingStroke {
  localId: string;
  points: [number, number][];
  width: number;
  status: SyncStatus;
  error?: string;
}

export type ConnectionStatus = 'connecting' | 'open' | 'closed';

export interface ClientSessionView {
  session: SessionState | null;
  pending: PendingStroke[];
  inspirations: InspirationItem[];
  underlayAlpha: number | null; // user override of the server default
  connection: ConnectionStatus;
  lastError: string | null;
  tool: 'draw' | 'erase';
}

export type Action =
  | { type: 'server-state'; state: SessionState }
  | { type: 'inspirations'; items: InspirationItem[] }
  | { type: 'stroke-buffered'; stroke: PendingStroke }
  | { type: 'stroke-acked'; localId: string }
  | { type: 'stroke-failed'; localId: string; error: string }
  | { type: 'stroke-retrying'; localId: string }
  | { type: 'underlay-alpha'; alpha: number }
  | { type: 'connection'; status: ConnectionStatus }
  | { type: 'tool'; tool: 'draw' | 'erase' }
  | { type: 'error'; message: string | null };

export function initialView(): ClientSessionView {
  return {
    session: null,
    pending: [],
    inspirations: [],
    underlayAlpha: null,
    connection: 'connecting',
    lastError: null,
    tool: 'draw',
  };
}

function checkEvolutionOrder(state: SessionState): void {
  state.iterations.forEach((iteration, position) => {
    if (iteration.index !== position) {
      console.warn('evolution history out of order', iteration.index, position);
    }
  });
}

export function reduce(view: ClientSessionView, action: Action): ClientSessionView {
  switch (action.type) {
    case 'server-state': {
      checkEvolutionOrder(action.state);
      // server state may carry the active inspirations; keep the last non-empty set
      const inspirations = action.state.active_inspirations.length
        ? action.state.active_inspirations
        : view.inspirations;
      return { ...view, session: action.state, inspirations };
    }
    case 'inspirations':
      return { ...view, inspirations: action.items };
    case 'stroke-buffered':
      return { ...view, pending: [...view.pending, action.stroke] };
    case 'stroke-acked':
      return { ...view, pending: view.pending.filter((p) => p.localId !== action.localId) };
    case 'stroke-failed':
      return {
        ...view,
        pending: view.pending.map((p) =>
          p.localId === action.localId
            ? { ...p, status: 'unsynced' as const, error: action.error }
            : p,
        ),
      };
    case 'stroke-retrying':
      return {
        ...view,
        pending: view.pending.map((p) =>
          p.localId === action.localId ? { ...p, status: 'sending' as const, error: undefined } : p,
        ),
      };
    case 'underlay-alpha':
      return { ...view, underlayAlpha: action.alpha };
    case 'connection':
      return { ...view, connection: action.status };
    case 'tool':
      return { ...view, tool: action.tool };
    case 'error':
      return { ...view, lastError: action.message };
  }
}

export type Listener = () => void;

/** Minimal observable store; every mutation goes through dispatch. */
export class Store {
  private view = initialView();
  private listeners = new Set<Listener>();

  get(): ClientSessionView {
    return this.view;
  }

  dispatch(action: Action): void {
    this.view = reduce(this.view, action);
    for (const listener of this.listeners) listener();
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }
}

export function currentScaffold(view: ClientSessionView): { url: string; alpha: number } | null {
  const session = view.session;
  if (!session || session.current_iteration_index === null) return null;
  const iteration = session.iterations[session.current_iteration_index];
  if (!iteration || iteration.images_missing) return null;
  return {
    url: iteration.scaffold_url,
    alpha: view.underlayAlpha ?? iteration.underlay_alpha,
  };
}
