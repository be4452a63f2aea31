import { describe, expect, it } from "vitest";

import { ProbeResponse } from "../src/api.js";
import { overlayBoxes, RF_COLORS, vectorReadout } from "../src/overlay.js";

const PROBE: ProbeResponse = {
  model_id: "ours",
  point: [256, 240],
  layers: {
    "0": { rf_size: 7, rf_stride: 1, vector_dim: 48, vector_norm: 1.25 },
    "1": { rf_size: 9, rf_stride: 2, vector_dim: 96, vector_norm: 2.5 },
    "2": { rf_size: 13, rf_stride: 4, vector_dim: 192, vector_norm: 3.0 },
    "3": { rf_size: 21, rf_stride: 8, vector_dim: 384, vector_norm: 4.0 },
    "4": { rf_size: 37, rf_stride: 16, vector_dim: 768, vector_norm: 5.0 },
  },
};

describe("probe overlay", () => {
  it("draws five nested boxes whose sizes equal the service rf_size values", () => {
    const boxes = overlayBoxes([256, 240], PROBE);
    expect(boxes.map((b) => b.size)).toEqual([7, 9, 13, 21, 37]);
    expect(boxes.map((b) => b.width)).toEqual([7, 9, 13, 21, 37]);
    expect(boxes.map((b) => b.height)).toEqual([7, 9, 13, 21, 37]);
  });

  it("centers every box on the clicked point", () => {
    const boxes = overlayBoxes([256, 240], PROBE);
    for (const box of boxes) {
      expect(box.x + Math.floor(box.size / 2)).toBe(256);
      expect(box.y + Math.floor(box.size / 2)).toBe(240);
      // nesting: each box contains the click
      expect(box.x).toBeLessThanOrEqual(256);
      expect(box.x + box.width).toBeGreaterThan(256);
    }
  });

  it("colors boxes smallest to largest with distinct colors", () => {
    const boxes = overlayBoxes([100, 100], PROBE);
    expect(boxes.map((b) => b.color)).toEqual(RF_COLORS);
    expect(new Set(RF_COLORS).size).toBe(RF_COLORS.length);
  });

  it("readout lists dims and norms per layer in order", () => {
    const lines = vectorReadout(PROBE);
    expect(lines.length).toBe(5);
    expect(lines[0]).toContain("L0");
    expect(lines[0]).toContain("dim 48");
    expect(lines[4]).toContain("dim 768");
    expect(lines[4]).toContain("37");
  });

  it("handles a subset of layers", () => {
    const partial: ProbeResponse = {
      model_id: "ours",
      point: [50, 50],
      layers: { "0": PROBE.layers["0"], "1": PROBE.layers["1"] },
    };
    const boxes = overlayBoxes([50, 50], partial);
    expect(boxes.map((b) => b.size)).toEqual([7, 9]);
  });
});
