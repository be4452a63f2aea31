// Probe overlay geometry: five nested receptive-field boxes centered at the
// clicked point, smallest to largest, plus the per-layer vector readout.

import { ProbeResponse } from "./api.js";

// smallest box cool, biggest warm
export const RF_COLORS = ["purple", "blue", "green", "orange", "red"];

export interface OverlayBox {
  layer: number;
  size: number;
  stride: number;
  color: string;
  x: number; // top-left, canvas pixels
  y: number;
  width: number;
  height: number;
}

export function overlayBoxes(point: [number, number], probe: ProbeResponse): OverlayBox[] {
  const layers = Object.keys(probe.layers)
    .map((k) => parseInt(k, 10))
    .sort((a, b) => a - b);
  return layers.map((layer, i) => {
    const info = probe.layers[String(layer)];
    const half = Math.floor(info.rf_size / 2);
    return {
      layer,
      size: info.rf_size,
      stride: info.rf_stride,
      color: RF_COLORS[i % RF_COLORS.length],
      x: point[0] - half,
      y: point[1] - half,
      width: info.rf_size,
      height: info.rf_size,
    };
  });
}

export function vectorReadout(probe: ProbeResponse): string[] {
  return Object.keys(probe.layers)
    .map((k) => parseInt(k, 10))
    .sort((a, b) => a - b)
    .map((layer) => {
      const info = probe.layers[String(layer)];
      return (
        `L${layer}: rf ${info.rf_size}×${info.rf_size}, stride ${info.rf_stride}, ` +
        `dim ${info.vector_dim}, norm ${info.vector_norm.toFixed(4)}`
      );
    });
}
