// Canvas state: the ordered stroke list is the single source of truth.
// Every mutation pushes a snapshot, so undo restores the exact prior state.

import { CANVAS_SIZE, Point, Stroke, rasterize } from "./raster.js";

export const ERASER_RADIUS = 6;

interface Snapshot {
  strokes: Stroke[];
  base: Uint8Array | null;
}

function cloneStrokes(strokes: readonly Stroke[]): Stroke[] {
  return strokes.map((s) => s.map((p) => ({ x: p.x, y: p.y })));
}

function pointSegmentDistance(p: Point, a: Point, b: Point): number {
  const vx = b.x - a.x;
  const vy = b.y - a.y;
  const lengthSq = vx * vx + vy * vy;
  let t = lengthSq > 0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / lengthSq : 0;
  t = Math.max(0, Math.min(1, t));
  const dx = p.x - (a.x + t * vx);
  const dy = p.y - (a.y + t * vy);
  return Math.hypot(dx, dy);
}

function strokeHit(stroke: Stroke, p: Point, radius: number): boolean {
  if (stroke.length === 1) {
    return Math.hypot(stroke[0].x - p.x, stroke[0].y - p.y) <= radius;
  }
  for (let i = 0; i + 1 < stroke.length; i++) {
    if (pointSegmentDistance(p, stroke[i], stroke[i + 1]) <= radius) return true;
  }
  return false;
}

export class SketchState {
  readonly size: number;
  private strokes: Stroke[] = [];
  private base: Uint8Array | null = null; // decoded template layer
  private undoStack: Snapshot[] = [];
  private active: Stroke | null = null;

  constructor(size: number = CANVAS_SIZE) {
    this.size = size;
  }

  private snapshot(): void {
    this.undoStack.push({ strokes: cloneStrokes(this.strokes), base: this.base });
  }

  get strokeList(): readonly Stroke[] {
    return this.strokes;
  }

  get canUndo(): boolean {
    return this.undoStack.length > 0;
  }

  beginStroke(p: Point): void {
    this.snapshot();
    this.active = [{ x: p.x, y: p.y }];
    this.strokes.push(this.active);
  }

  extendStroke(p: Point): void {
    if (!this.active) return;
    const last = this.active[this.active.length - 1];
    if (last.x === p.x && last.y === p.y) return;
    this.active.push({ x: p.x, y: p.y });
  }

  endStroke(): void {
    this.active = null;
  }

  /** Whole-stroke eraser: removes every stroke passing under the cursor. */
  eraseAt(p: Point, radius: number = ERASER_RADIUS): number {
    const keep = this.strokes.filter((s) => !strokeHit(s, p, radius));
    const removed = this.strokes.length - keep.length;
    if (removed > 0) {
      this.snapshot();
      this.strokes = keep;
    }
    return removed;
  }

  undo(): boolean {
    const prior = this.undoStack.pop();
    if (!prior) return false;
    this.strokes = prior.strokes;
    this.base = prior.base;
    this.active = null;
    return true;
  }

  clear(): void {
    this.snapshot();
    this.strokes = [];
    this.base = null;
  }

  loadTemplate(pixels: Uint8Array): void {
    if (pixels.length !== this.size * this.size) {
      throw new Error(`template size ${pixels.length} != ${this.size}x${this.size}`);
    }
    this.snapshot();
    this.strokes = [];
    this.base = Uint8Array.from(pixels);
  }

  /** Binary raster of the current state; exactly the pixels that get uploaded. */
  toPixels(): Uint8Array {
    return rasterize(this.strokes, this.size, this.base);
  }
}
