/** Typed HTTP client for the review service. */

import {
  DecisionAck,
  DecisionPayload,
  ItemDetail,
  ReviewItem,
  SCHEMA_VERSION,
  ServerStats,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }

  get isConflict(): boolean {
    return this.status === 409;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function errorDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") return body.detail;
  } catch {
    // fall through to the status line
  }
  return `request failed with status ${response.status}`;
}

export class ReviewApi {
  private readonly fetchImpl: FetchLike;

  constructor(
    readonly baseUrl: string = "",
    fetchImpl?: FetchLike,
  ) {
    // bind so the implementation keeps its expected receiver in browsers
    this.fetchImpl = fetchImpl ?? ((input, init) => globalThis.fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, init);
    } catch (error) {
      throw new ApiError(`network failure: ${String(error)}`, 0);
    }
    if (!response.ok) {
      throw new ApiError(await errorDetail(response), response.status);
    }
    return (await response.json()) as T;
  }

  /** Oldest undecided item leased to this reviewer, or null when drained. */
  async nextItem(reviewer: string): Promise<ReviewItem | null> {
    const body = await this.request<{ schema: number; item: ReviewItem | null }>(
      `/api/queue/next?reviewer=${encodeURIComponent(reviewer)}`,
    );
    return body.item;
  }

  async submitDecision(
    payload: Omit<DecisionPayload, "schema">,
  ): Promise<DecisionAck> {
    return this.request<DecisionAck>("/api/decision", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ schema: SCHEMA_VERSION, ...payload }),
    });
  }

  async stats(): Promise<ServerStats> {
    return this.request<ServerStats>("/api/stats");
  }

  async itemDetail(itemId: string): Promise<ItemDetail> {
    return this.request<ItemDetail>(`/api/item/${encodeURIComponent(itemId)}`);
  }
}
