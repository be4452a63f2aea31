// HTTP client for the studio service. All endpoints are stateless JSON with
// base64 PNG payloads.

export interface GenerateResponse {
  image: string; // base64 PNG RGB
  latency_ms: number;
}

export interface ProbeLayerInfo {
  rf_size: number;
  rf_stride: number;
  vector_dim: number;
  vector_norm: number;
}

export interface ProbeResponse {
  model_id: string;
  point: [number, number];
  layers: Record<string, ProbeLayerInfo>;
}

export interface TemplateInfo {
  template_id: string;
  resolution: number;
  sketch: string;
}

export interface ModelInfo {
  model_id: string;
  display_name: string;
  resolution: number;
}

export class ServiceError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class StudioClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const resp = await this.fetchFn(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        detail = (await resp.json()).detail ?? detail;
      } catch {
        // keep the status text
      }
      throw new ServiceError(resp.status, detail);
    }
    return resp.json() as Promise<T>;
  }

  private async get<T>(path: string): Promise<T> {
    const resp = await this.fetchFn(`${this.baseUrl}${path}`);
    if (!resp.ok) throw new ServiceError(resp.status, resp.statusText);
    return resp.json() as Promise<T>;
  }

  generate(modelId: string, sketchBase64: string): Promise<GenerateResponse> {
    return this.post("/api/generate", { model_id: modelId, sketch: sketchBase64 });
  }

  probe(
    modelId: string,
    sketchBase64: string,
    point: [number, number] | "auto",
    layers: number[] = [0, 1, 2, 3, 4],
  ): Promise<ProbeResponse> {
    return this.post("/api/probe", {
      model_id: modelId,
      sketch: sketchBase64,
      point,
      layers,
    });
  }

  templates(): Promise<TemplateInfo[]> {
    return this.get("/api/templates");
  }

  health(): Promise<{ status: string; models: ModelInfo[] }> {
    return this.get("/health");
  }
}
