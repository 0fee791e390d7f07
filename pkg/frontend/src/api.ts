/** Thin fetch wrapper for the geometry service.
 *
 * Every failure becomes an ``ApiError`` carrying the HTTP status and the
 * service's stable error code, so callers can route 422s to inline
 * parameter messages and network failures to the connection banner.
 */

import type {
  CollectionEnvelope,
  HealthInfo,
  MeshEnvelope,
  RecipeSchema,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
  }

  /** True when the request never reached the service. */
  get unreachable(): boolean {
    return this.status === 0;
  }

  /** True for well-formed requests the service refused numerically. */
  get numeric(): boolean {
    return this.status === 422;
  }
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  health(signal?: AbortSignal): Promise<HealthInfo> {
    return this.request("/api/health", undefined, signal);
  }

  async recipes(signal?: AbortSignal): Promise<RecipeSchema[]> {
    const body = await this.request<{ recipes: RecipeSchema[] }>(
      "/api/recipes",
      undefined,
      signal,
    );
    if (!Array.isArray(body.recipes)) {
      throw new ApiError(0, "BAD_PAYLOAD", "recipe list missing from reply");
    }
    return body.recipes;
  }

  mesh(body: object, signal?: AbortSignal): Promise<MeshEnvelope> {
    return this.request("/api/mesh", body, signal);
  }

  spiral(body: object, signal?: AbortSignal): Promise<CollectionEnvelope> {
    return this.request("/api/spiral", body, signal);
  }

  private async request<T>(
    path: string,
    body?: object,
    signal?: AbortSignal,
  ): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.base + path, {
        method: body === undefined ? "GET" : "POST",
        headers: body === undefined ? {} : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
        signal,
      });
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") {
        throw err;
      }
      throw new ApiError(0, "UNREACHABLE", "geometry service is unreachable");
    }

    let payload: unknown = null;
    try {
      payload = await response.json();
    } catch {
      payload = null;
    }

    if (!response.ok) {
      const error = (payload as { error?: { code?: string; message?: string } })
        ?.error;
      throw new ApiError(
        response.status,
        error?.code ?? `HTTP_${response.status}`,
        error?.message ?? `request failed with status ${response.status}`,
      );
    }
    if (payload === null || typeof payload !== "object") {
      throw new ApiError(0, "BAD_PAYLOAD", "reply was not a JSON object");
    }
    return payload as T;
  }
}
