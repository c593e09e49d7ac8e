/** Typed client for the provenance service's HTTP endpoints. */
import type {
  AggregateBoxModel,
  RecordEventResponse,
  RestoreResponse,
  ScentBarModel,
  SessionConfigModel,
  SnapshotModel,
  TemporalLayoutModel,
  ValueModel,
  WidgetModel,
  WidgetSpec,
} from "./types.js";

export interface ProvenanceApi {
  createSession(config?: SessionConfigModel): Promise<string>;
  registerWidget(sessionId: string, spec: WidgetSpec): Promise<WidgetModel>;
  recordEvent(
    sessionId: string,
    widgetId: string,
    value: ValueModel,
  ): Promise<RecordEventResponse>;
  navigate(sessionId: string, widgetId: string): Promise<void>;
  restore(sessionId: string, seq: number): Promise<RestoreResponse>;
  snapshot(sessionId: string): Promise<SnapshotModel>;
  aggregateLayout(
    sessionId: string,
    width: number,
    height: number,
  ): Promise<AggregateBoxModel[]>;
  temporalLayout(sessionId: string, mode?: string): Promise<TemporalLayoutModel>;
  scent(
    sessionId: string,
    widgetId: string,
    width: number,
    height: number,
  ): Promise<ScentBarModel[]>;
  exportSession(sessionId: string): Promise<unknown>;
  importSession(document: unknown): Promise<string>;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    detail: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

type FetchLike = typeof fetch;

export class HttpApi implements ProvenanceApi {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let code = `HTTP ${response.status}`;
      let detail = response.statusText;
      try {
        const payload = (await response.json()) as {
          error?: string;
          detail?: string;
        };
        code = payload.error ?? code;
        detail = typeof payload.detail === "string" ? payload.detail : detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, code, detail);
    }
    if (response.status === 204) {
      return undefined as T;
    }
    return (await response.json()) as T;
  }

  async createSession(config: SessionConfigModel = {}): Promise<string> {
    const body = await this.request<{ session_id: string }>(
      "POST",
      "/api/sessions",
      config,
    );
    return body.session_id;
  }

  registerWidget(sessionId: string, spec: WidgetSpec): Promise<WidgetModel> {
    return this.request("POST", `/api/sessions/${sessionId}/widgets`, spec);
  }

  recordEvent(
    sessionId: string,
    widgetId: string,
    value: ValueModel,
  ): Promise<RecordEventResponse> {
    return this.request("POST", `/api/sessions/${sessionId}/events`, {
      widget_id: widgetId,
      value,
    });
  }

  async navigate(sessionId: string, widgetId: string): Promise<void> {
    await this.request("POST", `/api/sessions/${sessionId}/navigate`, {
      widget_id: widgetId,
    });
  }

  restore(sessionId: string, seq: number): Promise<RestoreResponse> {
    return this.request("POST", `/api/sessions/${sessionId}/restore`, { seq });
  }

  snapshot(sessionId: string): Promise<SnapshotModel> {
    return this.request("GET", `/api/sessions/${sessionId}/snapshot`);
  }

  async aggregateLayout(
    sessionId: string,
    width: number,
    height: number,
  ): Promise<AggregateBoxModel[]> {
    const body = await this.request<{ boxes: AggregateBoxModel[] }>(
      "GET",
      `/api/sessions/${sessionId}/layout/aggregate?width=${width}&height=${height}`,
    );
    return body.boxes;
  }

  temporalLayout(
    sessionId: string,
    mode: string = "sequence",
  ): Promise<TemporalLayoutModel> {
    return this.request(
      "GET",
      `/api/sessions/${sessionId}/layout/temporal?mode=${mode}`,
    );
  }

  async scent(
    sessionId: string,
    widgetId: string,
    width: number,
    height: number,
  ): Promise<ScentBarModel[]> {
    const body = await this.request<{ bars: ScentBarModel[] }>(
      "GET",
      `/api/sessions/${sessionId}/widgets/${encodeURIComponent(widgetId)}/scent` +
        `?width=${width}&height=${height}`,
    );
    return body.bars;
  }

  exportSession(sessionId: string): Promise<unknown> {
    return this.request("GET", `/api/sessions/${sessionId}/export`);
  }

  async importSession(document: unknown): Promise<string> {
    const body = await this.request<{ session_id: string }>(
      "POST",
      "/api/sessions/import",
      { document },
    );
    return body.session_id;
  }
}
