/**
 * Server-sent-events client built on streaming fetch rather than EventSource,
 * so it runs identically in browsers and in node-based tests.
 */

import type { FetchLike } from './api.js';

export interface SseHandle {
  close(): void;
  done: Promise<void>;
}

/** Split a text/event-stream buffer into complete frames; returns the rest. */
export function parseSseChunk(buffer: string): { events: string[]; rest: string } {
  const events: string[] = [];
  let rest = buffer;
  for (;;) {
    const cut = rest.indexOf('\n\n');
    if (cut < 0) break;
    const frame = rest.slice(0, cut);
    rest = rest.slice(cut + 2);
    const data = frame
      .split('\n')
      .filter((line) => line.startsWith('data: '))
      .map((line) => line.slice('data: '.length))
      .join('\n');
    if (data) events.push(data);
  }
  return { events, rest };
}

export function openUpdateStream(
  url: string,
  onMessage: (payload: unknown) => void,
  fetchImpl: FetchLike = (input, init) => fetch(input, init),
): SseHandle {
  const controller = new AbortController();
  const done = (async () => {
    const response = await fetchImpl(url, {
      signal: controller.signal,
      headers: { accept: 'text/event-stream' },
    });
    if (!response.ok || !response.body) {
      throw new Error(`update stream failed: HTTP ${response.status}`);
    }
    const reader = response.body.getReader();
    const decoder = new TextDecoder();
    let buffer = '';
    for (;;) {
      const { done: finished, value } = await reader.read();
      if (finished) break;
      buffer += decoder.decode(value, { stream: true });
      const { events, rest } = parseSseChunk(buffer);
      buffer = rest;
      for (const data of events) {
        try {
          onMessage(JSON.parse(data));
        } catch {
          // ignore malformed frames; the stream stays usable
        }
      }
    }
  })().catch((error: unknown) => {
    if (!controller.signal.aborted) throw error;
  });
  return {
    close: () => controller.abort(),
    done,
  };
}
