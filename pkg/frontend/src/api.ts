/** Thin typed client for the service HTTP API; fetch is injectable for tests. */

import type { InspirationSetResponse, SessionState } from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(`API error ${status}: ${JSON.stringify(detail)}`);
  }
}

/** Public surface of the API client; tests substitute in-memory fakes. */
export interface Api {
  readonly base: string;
  createSession(subject: string, concept: string): Promise<SessionState>;
  getState(sessionId: string): Promise<SessionState>;
  addStroke(
    sessionId: string,
    points: [number, number][],
    width: number,
  ): Promise<{ stroke_id: string; job_id: number }>;
  eraseStroke(sessionId: string, strokeId: string): Promise<SessionState>;
  undo(sessionId: string): Promise<SessionState>;
  clear(sessionId: string): Promise<SessionState>;
  remix(sessionId: string): Promise<SessionState>;
  generate(sessionId: string): Promise<{ job_id: number }>;
  requestInspirations(sessionId: string, refresh?: boolean): Promise<InspirationSetResponse>;
  selectInspiration(sessionId: string, label: string): Promise<SessionState>;
  setPrompt(sessionId: string, text: string): Promise<SessionState>;
  imageUrl(path: string): string;
}

export class ApiClient implements Api {
  constructor(
    readonly base: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.base}${path}`, {
      method,
      headers: body === undefined ? {} : { 'content-type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const parsed = text ? JSON.parse(text) : null;
    if (!response.ok) {
      throw new ApiError(response.status, parsed?.detail ?? parsed);
    }
    return parsed as T;
  }

  createSession(subject: string, concept: string): Promise<SessionState> {
    return this.request('POST', '/sessions', { subject, concept });
  }

  getState(sessionId: string): Promise<SessionState> {
    return this.request('GET', `/sessions/${sessionId}`);
  }

  addStroke(
    sessionId: string,
    points: [number, number][],
    width: number,
  ): Promise<{ stroke_id: string; job_id: number }> {
    return this.request('POST', `/sessions/${sessionId}/strokes`, { points, width });
  }

  eraseStroke(sessionId: string, strokeId: string): Promise<SessionState> {
    return this.request('DELETE', `/sessions/${sessionId}/strokes/${strokeId}`);
  }

  undo(sessionId: string): Promise<SessionState> {
    return this.request('POST', `/sessions/${sessionId}/undo`);
  }

  clear(sessionId: string): Promise<SessionState> {
    return this.request('POST', `/sessions/${sessionId}/clear`);
  }

  remix(sessionId: string): Promise<SessionState> {
    return this.request('POST', `/sessions/${sessionId}/remix`);
  }

  generate(sessionId: string): Promise<{ job_id: number }> {
    return this.request('POST', `/sessions/${sessionId}/generate`);
  }

  requestInspirations(sessionId: string, refresh = false): Promise<InspirationSetResponse> {
    return this.request('POST', `/sessions/${sessionId}/inspirations`, { refresh });
  }

  selectInspiration(sessionId: string, label: string): Promise<SessionState> {
    return this.request('POST', `/sessions/${sessionId}/inspiration`, { label });
  }

  setPrompt(sessionId: string, text: string): Promise<SessionState> {
    return this.request('PUT', `/sessions/${sessionId}/prompt`, { text });
  }

  imageUrl(path: string): string {
    return `${this.base}${path}`;
  }
}
