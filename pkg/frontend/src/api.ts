/**
 * Thin typed client for the mediawatch HTTP API.
 *
 * Every request the console makes goes through this class, and each call is
 * appended to callLog (method + path), which the tests use to assert that
 * one UI action produces exactly one request.
 */

import type {
  ClusterDetail,
  DocumentDetail,
  GeoDetail,
  GraphResult,
  Highlight,
  NarrativeRecord,
  ReportRecord,
  SearchResult,
} from "./types.js";
import type { QueryState } from "./state.js";

export class ApiError extends Error {
  status: number;
  detail: unknown;

  constructor(status: number, detail: unknown) {
    super(`API error ${status}`);
    this.status = status;
    this.detail = detail;
  }
}

/** Server-side query parameters for a state; equal states map to equal requests. */
export function searchParams(qs: QueryState): URLSearchParams {
  const params = new URLSearchParams();
  if (qs.q) params.set("q", qs.q);
  for (const kw of qs.keywords) params.append("keyword", kw);
  if (qs.geoId !== null) params.set("geo", String(qs.geoId));
  if (qs.dateFrom) params.set("from", qs.dateFrom);
  if (qs.dateTo) params.set("to", qs.dateTo);
  for (const st of qs.statuses) params.append("status", st);
  params.set("page", String(qs.page));
  params.set("page_size", String(qs.pageSize));
  return params;
}

export class ApiClient {
  baseUrl: string;
  callLog: string[] = [];

  constructor(baseUrl = "") {
    this.baseUrl = baseUrl.replace(/\/$/, "");
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    this.callLog.push(`${method} ${path}`);
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const resp = await fetch(this.baseUrl + path, init);
    if (!resp.ok) {
      let detail: unknown = null;
      try {
        detail = await resp.json();
      } catch {
        detail = await resp.text().catch(() => null);
      }
      throw new ApiError(resp.status, detail);
    }
    return (await resp.json()) as T;
  }

  search(qs: QueryState): Promise<SearchResult> {
    return this.request("GET", `/api/search?${searchParams(qs).toString()}`);
  }

  /** Search with an explicit status filter, ignoring the one in qs. */
  searchWithStatus(qs: QueryState, statuses: string[], pageSize: number): Promise<SearchResult> {
    const override: QueryState = { ...qs, statuses, page: 1, pageSize };
    return this.request("GET", `/api/search?${searchParams(override).toString()}`);
  }

  graph(qs: QueryState, topN = 20): Promise<GraphResult> {
    const params = searchParams(qs);
    params.delete("page");
    params.delete("page_size");
    params.set("top_n", String(topN));
    return this.request("GET", `/api/graph?${params.toString()}`);
  }

  document(docId: string): Promise<DocumentDetail> {
    return this.request("GET", `/api/documents/${encodeURIComponent(docId)}`);
  }

  cluster(clusterId: string): Promise<ClusterDetail> {
    return this.request("GET", `/api/clusters/${encodeURIComponent(clusterId)}`);
  }

  geo(geoId: number): Promise<GeoDetail> {
    return this.request("GET", `/api/geo/${geoId}`);
  }

  narratives(date?: string): Promise<NarrativeRecord[]> {
    const suffix = date ? `?date=${encodeURIComponent(date)}` : "";
    return this.request("GET", `/api/narratives${suffix}`);
  }

  narrative(narrativeId: string): Promise<NarrativeRecord> {
    return this.request("GET", `/api/narratives/${encodeURIComponent(narrativeId)}`);
  }

  triage(docId: string, decision: "publish" | "suppress", actor: string): Promise<unknown> {
    return this.request("POST", `/api/triage/${encodeURIComponent(docId)}`, {
      decision,
      actor,
    });
  }

  createReport(title: string, author: string, docIds: string[], highlights: Highlight[]): Promise<ReportRecord> {
    return this.request("POST", "/api/reports", {
      title,
      author,
      doc_ids: docIds,
      highlights,
    });
  }

  report(reportId: string): Promise<ReportRecord> {
    return this.request("GET", `/api/reports/${encodeURIComponent(reportId)}`);
  }

  /** Fetch the rendered export; returns the HTML text. */
  async exportReport(reportId: string): Promise<string> {
    const path = `/api/reports/${encodeURIComponent(reportId)}/export`;
    this.callLog.push(`GET ${path}`);
    const resp = await fetch(this.baseUrl + path);
    if (!resp.ok) {
      throw new ApiError(resp.status, await resp.text().catch(() => null));
    }
    return resp.text();
  }

  exportUrl(reportId: string): string {
    return `${this.baseUrl}/api/reports/${encodeURIComponent(reportId)}/export`;
  }
}
