/** Thin typed client for the recommendation service. */

import type {
  ModelMetadata,
  ObservationPayload,
  RecommendationResponse,
} from "./types.js";

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export class ServiceUnavailableError extends Error {}

export class RequestRejectedError extends Error {
  constructor(
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

export class ServiceClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch as unknown as FetchLike,
  ) {}

  async loadModelMetadata(): Promise<ModelMetadata> {
    const response = await this.request("GET", "/v1/model");
    return response as ModelMetadata;
  }

  async recommend(payload: ObservationPayload): Promise<RecommendationResponse> {
    const response = await this.request("POST", "/v1/recommendations", payload);
    return response as RecommendationResponse;
  }

  private async request(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<unknown> {
    let response;
    try {
      response = await this.fetchImpl(`${this.baseUrl}${path}`, {
        method,
        headers: { "content-type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (cause) {
      throw new ServiceUnavailableError(`service unreachable: ${String(cause)}`);
    }
    const doc = (await response.json()) as Record<string, unknown>;
    if (response.status >= 400) {
      const message =
        typeof doc?.error === "string" ? doc.error : `HTTP ${response.status}`;
      throw new RequestRejectedError(message, response.status);
    }
    return doc;
  }
}
