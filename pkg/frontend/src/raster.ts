// Binary rasterization of the stroke list. The uploaded sketch is always
// produced here, never read back from the display canvas, so it stays
// black-on-white binary at the fixed resolution regardless of zoom or
// antialiased on-screen rendering.

export const CANVAS_SIZE = 512;
export const WHITE = 255;
export const BLACK = 0;

export interface Point {
  x: number;
  y: number;
}

export type Stroke = Point[];

function bresenham(x0: number, y0: number, x1: number, y1: number): [number, number][] {
  const pixels: [number, number][] = [];
  const dx = Math.abs(x1 - x0);
  const dy = -Math.abs(y1 - y0);
  const sx = x0 < x1 ? 1 : -1;
  const sy = y0 < y1 ? 1 : -1;
  let err = dx + dy;
  let x = x0;
  let y = y0;
  for (;;) {
    pixels.push([x, y]);
    if (x === x1 && y === y1) break;
    const e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
  return pixels;
}

// minor-axis offset of the two-pixel pen: the second line sits one pixel
// below shallow segments and one pixel right of steep ones
export function penOffset(a: Point, b: Point): [number, number] {
  return Math.abs(b.x - a.x) >= Math.abs(b.y - a.y) ? [0, 1] : [1, 0];
}

export function segmentPixels(a: Point, b: Point): [number, number][] {
  const x0 = Math.round(a.x);
  const y0 = Math.round(a.y);
  const x1 = Math.round(b.x);
  const y1 = Math.round(b.y);
  const [ox, oy] = penOffset(a, b);
  return bresenham(x0, y0, x1, y1).concat(bresenham(x0 + ox, y0 + oy, x1 + ox, y1 + oy));
}

export function stampStroke(pixels: Uint8Array, stroke: Stroke, size: number): void {
  if (stroke.length === 1) {
    const lone = stroke[0];
    drawSegment(pixels, lone, lone, size);
    return;
  }
  for (let i = 0; i + 1 < stroke.length; i++) {
    drawSegment(pixels, stroke[i], stroke[i + 1], size);
  }
}

function drawSegment(pixels: Uint8Array, a: Point, b: Point, size: number): void {
  for (const [x, y] of segmentPixels(a, b)) {
    if (x >= 0 && x < size && y >= 0 && y < size) {
      pixels[y * size + x] = BLACK;
    }
  }
}

/** Rasterize strokes over an optional base layer into an 8-bit grayscale grid. */
export function rasterize(
  strokes: readonly Stroke[],
  size: number = CANVAS_SIZE,
  base: Uint8Array | null = null,
): Uint8Array {
  const pixels = base ? Uint8Array.from(base) : new Uint8Array(size * size).fill(WHITE);
  for (const stroke of strokes) {
    stampStroke(pixels, stroke, size);
  }
  return pixels;
}
