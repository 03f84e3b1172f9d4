/**
 * Pointer-to-stroke capture: pen-down starts a buffer, moves are downsampled
 * to at most one point per MIN_GAP_PX of travel, pen-up yields the stroke.
 * A click without drag (single point) yields nothing — strokes need at least
 * two points. Also provides the hit test used by the pick-to-erase tool.
 */

export const MIN_GAP_PX = 2;

export class StrokeCapture {
  private points: [number, number][] = [];
  private active = false;

  get isActive(): boolean {
    return this.active;
  }

  get currentPoints(): readonly [number, number][] {
    return this.points;
  }

  begin(x: number, y: number): void {
    this.active = true;
    this.points = [[x, y]];
  }

  move(x: number, y: number): void {
    if (!this.active) return;
    const last = this.points[this.points.length - 1];
    if (!last) return;
    const dx = x - last[0];
    const dy = y - last[1];
    if (Math.hypot(dx, dy) > MIN_GAP_PX) {
      this.points.push([x, y]);
    }
  }

  /** Pen-up: returns the finished stroke, or null when it degenerates. */
  end(x: number, y: number): [number, number][] | null {
    if (!this.active) return null;
    const last = this.points[this.points.length - 1];
    if (last && (last[0] !== x || last[1] !== y)) {
      this.points.push([x, y]); // always keep the pen-up point
    }
    this.active = false;
    const stroke = this.points;
    this.points = [];
    return stroke.length >= 2 ? stroke : null;
  }

  cancel(): void {
    this.active = false;
    this.points = [];
  }
}

function pointSegmentDistance(
  px: number,
  py: number,
  ax: number,
  ay: number,
  bx: number,
  by: number,
): number {
  const vx = bx - ax;
  const vy = by - ay;
  const lengthSq = vx * vx + vy * vy;
  let t = 0;
  if (lengthSq > 0) {
    t = Math.max(0, Math.min(1, ((px - ax) * vx + (py - ay) * vy) / lengthSq));
  }
  return Math.hypot(px - (ax + t * vx), py - (ay + t * vy));
}

export interface HitTestable {
  id: string;
  points: [number, number][];
  width: number;
  erased: boolean;
}

/** Nearest non-erased stroke within `threshold` px of (x, y), or null. */
export function hitTestStroke(
  strokes: readonly HitTestable[],
  x: number,
  y: number,
  threshold = 6,
): string | null {
  let bestId: string | null = null;
  let bestDistance = threshold;
  for (const stroke of strokes) {
    if (stroke.erased || stroke.points.length < 2) continue;
    for (let i = 0; i + 1 < stroke.points.length; i++) {
      const a = stroke.points[i]!;
      const b = stroke.points[i + 1]!;
      const distance = pointSegmentDistance(x, y, a[0], a[1], b[0], b[1]) - stroke.width / 2;
      if (distance <= bestDistance) {
        bestDistance = distance;
        bestId = stroke.id;
      }
    }
  }
  return bestId;
}
