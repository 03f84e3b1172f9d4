/** Server-side shapes mirrored by the client (see the service HTTP API). */

export type Category = 'nature' | 'architecture' | 'fashion';

export interface StrokeRecord {
  id: string;
  points: [number, number][];
  width: number;
  erased: boolean;
}

export interface IterationRecord {
  index: number;
  prompt: string;
  seed: number;
  stroke_count: number;
  guidance: number;
  design_url: string;
  scaffold_url: string;
  control_url: string;
  images_missing: boolean;
  underlay_alpha: number;
}

export interface InspirationItem {
  label: string;
  category: Category;
  parent: string | null;
}

export interface SessionState {
  id: string;
  subject: string;
  concept: string;
  inspiration: string | null;
  manual_prompt: string | null;
  seed: number;
  stroke_count: number;
  busy: boolean;
  current_iteration_index: number | null;
  canvas: { width: number; height: number };
  strokes: StrokeRecord[];
  iterations: IterationRecord[];
  active_inspirations: InspirationItem[];
  event_count: number;
}

export interface InspirationSetResponse {
  subject: string;
  concept: string;
  items: InspirationItem[];
  warnings: string[];
}

export interface UpdateMessage {
  type: 'iteration_completed' | 'generation_failed';
  iteration_index?: number;
  stroke_count?: number;
  job_id?: number;
  backend?: string;
}
