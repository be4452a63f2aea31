// Live regeneration: debounce edit bursts, keep at most one request in
// flight per model, and drop responses that a newer edit has superseded.

import { GenerateResponse } from "./api.js";

export const DEBOUNCE_MS = 300;

export interface GenerateClient {
  generate(modelId: string, sketchBase64: string): Promise<GenerateResponse>;
}

export interface LiveCallbacks {
  onImage(modelId: string, imageBase64: string, latencyMs: number): void;
  onError(error: unknown): void;
}

interface QueuedRequest {
  generation: number;
  sketch: string;
}

export class LiveGenerator {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private generation = 0;
  private latestSketch: string | null = null;
  private inflight = new Set<string>();
  private queued = new Map<string, QueuedRequest>();

  constructor(
    private readonly client: GenerateClient,
    private models: string[],
    private readonly callbacks: LiveCallbacks,
    private readonly debounceMs: number = DEBOUNCE_MS,
  ) {}

  setModels(models: string[]): void {
    this.models = [...models];
  }

  get selectedModels(): readonly string[] {
    return this.models;
  }

  /** Called on every edit; one request per model fires after the burst. */
  notifyEdit(sketchBase64: string): void {
    this.latestSketch = sketchBase64;
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      this.dispatch();
    }, this.debounceMs);
  }

  /** Regenerate immediately (model switch, template load). */
  flush(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    if (this.latestSketch !== null) this.dispatch();
  }

  private dispatch(): void {
    if (this.latestSketch === null) return;
    const generation = ++this.generation;
    for (const model of this.models) {
      this.request(model, { generation, sketch: this.latestSketch });
    }
  }

  private request(model: string, req: QueuedRequest): void {
    if (this.inflight.has(model)) {
      this.queued.set(model, req); // newest wins; older queued edits vanish
      return;
    }
    this.inflight.add(model);
    this.client
      .generate(model, req.sketch)
      .then((resp) => {
        if (req.generation === this.generation) {
          this.callbacks.onImage(model, resp.image, resp.latency_ms);
        }
        // otherwise stale: a newer edit burst superseded this response
      })
      .catch((err) => this.callbacks.onError(err))
      .finally(() => {
        this.inflight.delete(model);
        const next = this.queued.get(model);
        if (next) {
          this.queued.delete(model);
          if (next.generation === this.generation) this.request(model, next);
        }
      });
  }
}
