/**
 * Query state shared by every panel of the console.
 *
 * The whole UI renders from one QueryState value.  Panels never keep their
 * own copy of a filter: clicking a map region, a facet bar, or a tab goes
 * through StateStore.update(), which notifies subscribers, and the app then
 * issues exactly one API request for the new state.  The state round-trips
 * through the URL fragment so a view can be bookmarked or shared.
 */

export type BarMode = "time" | "keywords" | "locations" | "categories";

export type Tab = "search" | "triage" | "narratives" | "graph" | "report";

export interface QueryState {
  q: string;
  keywords: string[];
  geoId: number | null;
  dateFrom: string | null;
  dateTo: string | null;
  statuses: string[];
  page: number;
  pageSize: number;
  barMode: BarMode;
  tab: Tab;
  selectedDoc: string | null;
}

export const DEFAULT_PAGE_SIZE = 20;

export function defaultState(): QueryState {
  return {
    q: "",
    keywords: [],
    geoId: null,
    dateFrom: null,
    dateTo: null,
    statuses: [],
    page: 1,
    pageSize: DEFAULT_PAGE_SIZE,
    barMode: "time",
    tab: "search",
    selectedDoc: null,
  };
}

const BAR_MODES: readonly BarMode[] = ["time", "keywords", "locations", "categories"];
const TABS: readonly Tab[] = ["search", "triage", "narratives", "graph", "report"];

/** Serialize to a URL fragment body; defaults are omitted so the empty state is "". */
export function toFragment(qs: QueryState): string {
  const params = new URLSearchParams();
  if (qs.q) params.set("q", qs.q);
  if (qs.keywords.length) params.set("kw", qs.keywords.join(","));
  if (qs.geoId !== null) params.set("geo", String(qs.geoId));
  if (qs.dateFrom) params.set("from", qs.dateFrom);
  if (qs.dateTo) params.set("to", qs.dateTo);
  if (qs.statuses.length) params.set("status", qs.statuses.join(","));
  if (qs.page !== 1) params.set("page", String(qs.page));
  if (qs.pageSize !== DEFAULT_PAGE_SIZE) params.set("size", String(qs.pageSize));
  if (qs.barMode !== "time") params.set("mode", qs.barMode);
  if (qs.tab !== "search") params.set("tab", qs.tab);
  if (qs.selectedDoc) params.set("doc", qs.selectedDoc);
  return params.toString();
}

/** Parse a URL fragment body; unknown or malformed values fall back to defaults. */
export function fromFragment(fragment: string): QueryState {
  const body = fragment.startsWith("#") ? fragment.slice(1) : fragment;
  const params = new URLSearchParams(body);
  const qs = defaultState();
  qs.q = params.get("q") ?? "";
  const kw = params.get("kw");
  if (kw) qs.keywords = kw.split(",").filter((s) => s.length > 0);
  const geo = params.get("geo");
  if (geo !== null && /^\d+$/.test(geo)) qs.geoId = Number(geo);
  qs.dateFrom = params.get("from");
  qs.dateTo = params.get("to");
  const status = params.get("status");
  if (status) qs.statuses = status.split(",").filter((s) => s.length > 0);
  const page = params.get("page");
  if (page !== null && /^\d+$/.test(page) && Number(page) >= 1) qs.page = Number(page);
  const size = params.get("size");
  if (size !== null && /^\d+$/.test(size) && Number(size) >= 1) qs.pageSize = Number(size);
  const mode = params.get("mode");
  if (mode !== null && (BAR_MODES as readonly string[]).includes(mode)) {
    qs.barMode = mode as BarMode;
  }
  const tab = params.get("tab");
  if (tab !== null && (TABS as readonly string[]).includes(tab)) {
    qs.tab = tab as Tab;
  }
  qs.selectedDoc = params.get("doc");
  return qs;
}

export type Listener = (qs: QueryState) => void;

export class StateStore {
  private state: QueryState;
  private listeners: Listener[] = [];

  constructor(initial?: QueryState) {
    this.state = initial ?? defaultState();
  }

  get(): QueryState {
    return this.state;
  }

  /** Apply a partial update and notify subscribers once. */
  update(patch: Partial<QueryState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.listeners) fn(this.state);
  }

  /** Replace the whole state (used when the URL fragment changes). */
  replace(qs: QueryState): void {
    this.state = qs;
    for (const fn of this.listeners) fn(this.state);
  }

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((f) => f !== fn);
    };
  }
}
