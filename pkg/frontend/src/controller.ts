/**
 * Application controller: owns the API client, the update stream, and all
 * mutations. Panels dispatch user intent here; every state change lands in
 * the store via the reducer so rendering stays single-threaded and ordered.
 */

import type { Api } from './api.js';
import { openUpdateStream, type SseHandle } from './sse.js';
import { Store, type PendingStroke } from './state.js';
import type { UpdateMessage } from './types.js';

let localCounter = 0;

export class AppController {
  readonly store = new Store();
  private stream: SseHandle | null = null;
  private sessionId: string | null = null;
  private strokeWidth = 3;

  constructor(readonly api: Api) {}

  get session(): string {
    if (!this.sessionId) throw new Error('no active session');
    return this.sessionId;
  }

  async start(subject: string, concept: string): Promise<void> {
    const state = await this.api.createSession(subject, concept);
    this.sessionId = state.id;
    this.store.dispatch({ type: 'server-state', state });
    this.openStream();
  }

  /** Attach to an existing session (used by tests and deep links). */
  async attach(sessionId: string): Promise<void> {
    this.sessionId = sessionId;
    await this.refresh();
    this.openStream();
  }

  private openStream(): void {
    this.stream?.close();
    const url = this.api.imageUrl(`/sessions/${this.session}/updates`);
    this.store.dispatch({ type: 'connection', status: 'connecting' });
    this.stream = openUpdateStream(
      url,
      (payload) => void this.onUpdate(payload as UpdateMessage),
      (input, init) => fetch(input, init),
    );
    this.store.dispatch({ type: 'connection', status: 'open' });
    this.stream.done.catch(() => {
      this.store.dispatch({ type: 'connection', status: 'closed' });
    });
  }

  private async onUpdate(message: UpdateMessage): Promise<void> {
    if (message.type === 'generation_failed') {
      this.store.dispatch({
        type: 'error',
        message: `generation failed (${message.backend ?? 'backend'})`,
      });
    }
    await this.refresh();
  }

  async refresh(): Promise<void> {
    const state = await this.api.getState(this.session);
    this.store.dispatch({ type: 'server-state', state });
  }

  async submitStroke(points: [number, number][]): Promise<void> {
    const stroke: PendingStroke = {
      localId: `local-${localCounter++}`,
      points,
      width: this.strokeWidth,
      status: 'sending',
    };
    this.store.dispatch({ type: 'stroke-buffered', stroke });
    await this.sendStroke(stroke);
  }

  async retryStroke(localId: string): Promise<void> {
    const pending = this.store.get().pending.find((p) => p.localId === localId);
    if (!pending) return;
    this.store.dispatch({ type: 'stroke-retrying', localId });
    await this.sendStroke(pending);
  }

  private async sendStroke(stroke: PendingStroke): Promise<void> {
    try {
      await this.api.addStroke(this.session, stroke.points, stroke.width);
      // refresh first so the acked stroke never flickers out of the ink layer
      await this.refresh();
      this.store.dispatch({ type: 'stroke-acked', localId: stroke.localId });
    } catch (error) {
      this.store.dispatch({
        type: 'stroke-failed',
        localId: stroke.localId,
        error: String(error),
      });
    }
  }

  async eraseStroke(strokeId: string): Promise<void> {
    const state = await this.api.eraseStroke(this.session, strokeId);
    this.store.dispatch({ type: 'server-state', state });
  }

  async undo(): Promise<void> {
    this.store.dispatch({ type: 'server-state', state: await this.api.undo(this.session) });
  }

  async clear(): Promise<void> {
    this.store.dispatch({ type: 'server-state', state: await this.api.clear(this.session) });
  }

  async remix(): Promise<void> {
    this.store.dispatch({ type: 'server-state', state: await this.api.remix(this.session) });
  }

  async generate(): Promise<void> {
    await this.api.generate(this.session);
    await this.refresh();
  }

  async requestInspirations(): Promise<void> {
    const result = await this.api.requestInspirations(this.session);
    this.store.dispatch({ type: 'inspirations', items: result.items });
  }

  async selectInspiration(label: string): Promise<void> {
    const state = await this.api.selectInspiration(this.session, label);
    this.store.dispatch({ type: 'server-state', state });
  }

  async setPrompt(text: string): Promise<void> {
    this.store.dispatch({ type: 'server-state', state: await this.api.setPrompt(this.session, text) });
  }

  setTool(tool: 'draw' | 'erase'): void {
    this.store.dispatch({ type: 'tool', tool });
  }

  setUnderlayAlpha(alpha: number): void {
    this.store.dispatch({ type: 'underlay-alpha', alpha });
  }

  close(): void {
    this.stream?.close();
  }
}
