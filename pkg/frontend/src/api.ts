/**
 * Minimal JSON client for the analytics API. The transport is injectable
 * so tests can swap in canned or delayed responses; in the browser it is
 * just window.fetch.
 */

import type {
  EntityDistributionPayload,
  FieldsPayload,
  GrantsPayload,
  HealthPayload,
  ImpactTypesPayload,
  KeywordsPayload,
  LandscapePayload,
  PisPayload,
  PredictionsPayload,
} from "./types.js";

export interface TransportResponse {
  status: number;
  json(): Promise<unknown>;
}

export type Transport = (url: string) => Promise<TransportResponse>;

export class ApiError extends Error {
  constructor(
    readonly url: string,
    readonly status: number,
    detail: string,
  ) {
    super(`${status} from ${url}: ${detail}`);
  }
}

export type QueryParams = Record<
  string,
  string | number | boolean | null | undefined
>;

/** Serialize non-null params, preserving insertion order. */
export const buildQuery = (params: QueryParams): string => {
  const parts: string[] = [];
  for (const [key, value] of Object.entries(params)) {
    if (value === null || value === undefined) continue;
    parts.push(`${encodeURIComponent(key)}=${encodeURIComponent(String(value))}`);
  }
  return parts.length ? `?${parts.join("&")}` : "";
};

export class ApiClient {
  constructor(
    private readonly transport: Transport,
    private readonly base: string = "",
  ) {}

  private async get<T>(path: string, params: QueryParams = {}): Promise<T> {
    const url = `${this.base}${path}${buildQuery(params)}`;
    const response = await this.transport(url);
    const body = await response.json();
    if (response.status !== 200) {
      const detail =
        typeof body === "object" && body !== null && "detail" in body
          ? JSON.stringify((body as { detail: unknown }).detail)
          : "request failed";
      throw new ApiError(url, response.status, detail);
    }
    return body as T;
  }

  health(): Promise<HealthPayload> {
    return this.get("/api/health");
  }

  grants(params: QueryParams): Promise<GrantsPayload> {
    return this.get("/api/grants", params);
  }

  fields(params: QueryParams = {}): Promise<FieldsPayload> {
    return this.get("/api/fields", params);
  }

  pis(params: QueryParams): Promise<PisPayload> {
    return this.get("/api/pis", params);
  }

  landscape(params: QueryParams): Promise<LandscapePayload> {
    return this.get("/api/landscape", params);
  }

  impactTypes(params: QueryParams): Promise<ImpactTypesPayload> {
    return this.get("/api/impact-types", params);
  }

  entityDistribution(params: QueryParams): Promise<EntityDistributionPayload> {
    return this.get("/api/entity-distribution", params);
  }

  keywords(topicId: string, topN = 40): Promise<KeywordsPayload> {
    // Keep "/" literal: the topic id is a path on the server side.
    const id = topicId.split("/").map(encodeURIComponent).join("/");
    return this.get(`/api/topics/${id}/keywords`, { top_n: topN });
  }

  predictions(params: QueryParams): Promise<PredictionsPayload> {
    return this.get("/api/predictions", params);
  }
}
