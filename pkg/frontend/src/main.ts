// DOM wiring for the sketch studio. All upload rasters come from the
// deterministic rasterizer in raster.ts; the on-screen canvas is display only.

import { ServiceError, StudioClient } from "./api.js";
import { DEBOUNCE_MS, LiveGenerator } from "./live.js";
import { overlayBoxes, vectorReadout } from "./overlay.js";
import { CANVAS_SIZE, Point } from "./raster.js";
import { encodeSketchBase64 } from "./png.js";
import { SketchState } from "./strokes.js";

type Tool = "pencil" | "eraser" | "probe";

const params = new URLSearchParams(location.search);
const serviceUrl = params.get("service") ?? "http://localhost:8700";

const client = new StudioClient(serviceUrl);
const state = new SketchState(CANVAS_SIZE);

const canvas = document.getElementById("sketch") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const overlayCanvas = document.getElementById("overlay") as HTMLCanvasElement;
const overlayCtx = overlayCanvas.getContext("2d")!;
const banner = document.getElementById("banner")!;
const readout = document.getElementById("readout")!;
const outputs = document.getElementById("outputs")!;
const compareToggle = document.getElementById("compare") as HTMLInputElement;
const probeToggle = document.getElementById("probe-mode") as HTMLInputElement;
const templateSelect = document.getElementById("templates") as HTMLSelectElement;

let tool: Tool = "pencil";
let drawing = false;
let availableModels: string[] = [];
const imageCells = new Map<string, HTMLImageElement>();

function setBanner(text: string | null): void {
  banner.textContent = text ?? "";
  banner.style.display = text ? "block" : "none";
}

const live = new LiveGenerator(client, [], {
  onImage(modelId, imageBase64, latencyMs) {
    setBanner(null);
    let img = imageCells.get(modelId);
    if (!img) {
      const cell = document.createElement("figure");
      img = document.createElement("img");
      img.width = CANVAS_SIZE / 2;
      const label = document.createElement("figcaption");
      label.textContent = modelId;
      cell.append(img, label);
      outputs.append(cell);
      imageCells.set(modelId, img);
    }
    img.src = `data:image/png;base64,${imageBase64}`;
    img.title = `${latencyMs.toFixed(0)} ms`;
  },
  onError(err) {
    setBanner(
      err instanceof ServiceError
        ? `service error ${err.status}: ${err.message}`
        : "service unreachable; keep drawing, it will retry on the next edit",
    );
  },
}, DEBOUNCE_MS);

function selectedModels(): string[] {
  if (!availableModels.length) return [];
  if (compareToggle.checked) {
    const ours = availableModels.includes("ours") ? "ours" : availableModels[0];
    const baseline =
      availableModels.find((m) => m === "baseline") ??
      availableModels.find((m) => m !== ours);
    return baseline ? [baseline, ours] : [ours];
  }
  return [availableModels.includes("ours") ? "ours" : availableModels[0]];
}

function refreshModels(): void {
  for (const [id, img] of imageCells) {
    if (!selectedModels().includes(id)) {
      img.parentElement?.remove();
      imageCells.delete(id);
    }
  }
  live.setModels(selectedModels());
  live.flush();
}

function redraw(): void {
  const pixels = state.toPixels();
  const image = ctx.createImageData(CANVAS_SIZE, CANVAS_SIZE);
  for (let i = 0; i < pixels.length; i++) {
    const v = pixels[i];
    image.data[4 * i] = v;
    image.data[4 * i + 1] = v;
    image.data[4 * i + 2] = v;
    image.data[4 * i + 3] = 255;
  }
  ctx.putImageData(image, 0, 0);
}

function notifyEdit(): void {
  redraw();
  live.notifyEdit(encodeSketchBase64(state.toPixels(), CANVAS_SIZE));
}

function canvasPoint(ev: PointerEvent): Point {
  const rect = canvas.getBoundingClientRect();
  return {
    x: Math.round(((ev.clientX - rect.left) / rect.width) * CANVAS_SIZE),
    y: Math.round(((ev.clientY - rect.top) / rect.height) * CANVAS_SIZE),
  };
}

canvas.addEventListener("pointerdown", (ev) => {
  const p = canvasPoint(ev);
  if (tool === "probe") {
    void runProbe(p);
    return;
  }
  drawing = true;
  if (tool === "pencil") {
    state.beginStroke(p);
    redraw();
  } else if (state.eraseAt(p) > 0) {
    notifyEdit();
  }
});

canvas.addEventListener("pointermove", (ev) => {
  if (!drawing) return;
  const p = canvasPoint(ev);
  if (tool === "pencil") {
    state.extendStroke(p);
    redraw();
  } else if (tool === "eraser" && state.eraseAt(p) > 0) {
    notifyEdit();
  }
});

window.addEventListener("pointerup", () => {
  if (drawing && tool === "pencil") {
    state.endStroke();
    notifyEdit();
  }
  drawing = false;
});

async function runProbe(p: Point): Promise<void> {
  overlayCtx.clearRect(0, 0, CANVAS_SIZE, CANVAS_SIZE);
  readout.textContent = "";
  try {
    const model = selectedModels()[0];
    const probe = await client.probe(model, encodeSketchBase64(state.toPixels(), CANVAS_SIZE), [p.x, p.y]);
    for (const box of overlayBoxes([p.x, p.y], probe).reverse()) {
      overlayCtx.strokeStyle = box.color;
      overlayCtx.lineWidth = 1;
      overlayCtx.strokeRect(box.x + 0.5, box.y + 0.5, box.width, box.height);
    }
    readout.textContent = vectorReadout(probe).join("\n");
  } catch (err) {
    readout.textContent =
      err instanceof ServiceError ? `probe rejected (${err.status}): ${err.message}` : String(err);
  }
}

for (const id of ["pencil", "eraser"] as const) {
  document.getElementById(id)!.addEventListener("click", () => {
    tool = id;
    overlayCtx.clearRect(0, 0, CANVAS_SIZE, CANVAS_SIZE);
  });
}
probeToggle.addEventListener("change", () => {
  tool = probeToggle.checked ? "probe" : "pencil";
  if (!probeToggle.checked) {
    overlayCtx.clearRect(0, 0, CANVAS_SIZE, CANVAS_SIZE);
    readout.textContent = "";
  }
});
document.getElementById("undo")!.addEventListener("click", () => {
  if (state.undo()) notifyEdit();
});
document.getElementById("clear")!.addEventListener("click", () => {
  state.clear();
  notifyEdit();
});
compareToggle.addEventListener("change", refreshModels);

templateSelect.addEventListener("change", async () => {
  const id = templateSelect.value;
  if (!id) return;
  const templates = await client.templates();
  const chosen = templates.find((t) => t.template_id === id);
  if (!chosen) return;
  const img = new Image();
  img.src = `data:image/png;base64,${chosen.sketch}`;
  await img.decode();
  const scratch = document.createElement("canvas");
  scratch.width = CANVAS_SIZE;
  scratch.height = CANVAS_SIZE;
  const sctx = scratch.getContext("2d")!;
  sctx.fillStyle = "white";
  sctx.fillRect(0, 0, CANVAS_SIZE, CANVAS_SIZE);
  sctx.drawImage(img, 0, 0, CANVAS_SIZE, CANVAS_SIZE);
  const data = sctx.getImageData(0, 0, CANVAS_SIZE, CANVAS_SIZE).data;
  const pixels = new Uint8Array(CANVAS_SIZE * CANVAS_SIZE);
  for (let i = 0; i < pixels.length; i++) {
    pixels[i] = data[4 * i] < 128 ? 0 : 255; // re-binarize after scaling
  }
  state.loadTemplate(pixels);
  notifyEdit();
});

async function boot(): Promise<void> {
  redraw();
  try {
    const health = await client.health();
    availableModels = health.models.map((m) => m.model_id);
    const templates = await client.templates();
    for (const t of templates) {
      const option = document.createElement("option");
      option.value = t.template_id;
      option.textContent = t.template_id;
      templateSelect.append(option);
    }
    refreshModels();
  } catch (err) {
    setBanner(`cannot reach service at ${serviceUrl}`);
  }
}

void boot();
