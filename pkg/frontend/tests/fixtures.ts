import type { IterationRecord, SessionState } from '../src/types.js';

export function iteration(index: number, overrides: Partial<IterationRecord> = {}): IterationRecord {
  return {
    index,
    prompt: 'a product design of a car',
    seed: 7,
    stroke_count: index,
    guidance: 3.0,
    design_url: `/sessions/s1/iterations/${index}/design`,
    scaffold_url: `/sessions/s1/iterations/${index}/scaffold`,
    control_url: `/sessions/s1/iterations/${index}/control`,
    images_missing: false,
    underlay_alpha: 0.3,
    ...overrides,
  };
}

export function sessionState(overrides: Partial<SessionState> = {}): SessionState {
  return {
    id: 's1',
    subject: 'car',
    concept: 'protective',
    inspiration: null,
    manual_prompt: null,
    seed: 7,
    stroke_count: 0,
    busy: false,
    current_iteration_index: null,
    canvas: { width: 512, height: 512 },
    strokes: [],
    iterations: [],
    active_inspirations: [],
    event_count: 0,
    ...overrides,
  };
}
