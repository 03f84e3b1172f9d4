/**
 * Starts the mock-backed Python service once for the whole test run and
 * provides its base URL to the workers.
 */

import { spawn, type ChildProcess } from 'node:child_process';
import type { GlobalSetupContext } from 'vitest/node';

const PORT = 8941;
const BASE = `http://127.0.0.1:${PORT}`;

async function waitForServer(timeoutMs = 30_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    try {
      const response = await fetch(`${BASE}/sessions/probe`);
      if (response.status === 404) return; // the app answered; it is up
    } catch {
      // not listening yet
    }
    if (Date.now() > deadline) throw new Error('mock server did not start in time');
    await new Promise((resolve) => setTimeout(resolve, 200));
  }
}

export default async function setup({ provide }: GlobalSetupContext): Promise<() => void> {
  const child: ChildProcess = spawn(
    'python3',
    ['-m', 'inkspire.cli', 'serve', '--mock', '--port', String(PORT)],
    { cwd: '..', stdio: ['ignore', 'inherit', 'inherit'] },
  );
  const exited = new Promise<never>((_, reject) => {
    child.on('exit', (code) => reject(new Error(`mock server exited early (${code})`)));
  });
  await Promise.race([waitForServer(), exited]);
  child.removeAllListeners('exit');
  provide('serverUrl', BASE);
  return async () => {
    child.kill('SIGTERM');
    await new Promise<void>((resolve) => {
      const hardKill = setTimeout(() => {
        child.kill('SIGKILL');
        resolve();
      }, 4000);
      child.on('exit', () => {
        clearTimeout(hardKill);
        resolve();
      });
    });
  };
}

declare module 'vitest' {
  export interface ProvidedContext {
    serverUrl: string;
  }
}
