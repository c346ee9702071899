/**
 * Console shell: builds the layout, owns the panels, and turns state
 * changes into API traffic.
 *
 * The flow is strictly state-first.  Header controls, tab buttons, map
 * regions, and facet bars all call StateStore.update(); this class diffs
 * the new state against the previous one and issues the single request the
 * change calls for (a new search, one tab load, one document fetch).
 * Changes that only regroup data already on hand, like switching the bar
 * mode, re-render locally with no request.  When a request fails the error
 * banner appears with a retry action and the affected panel keeps its last
 * content, greyed as stale, instead of going blank.
 */

import { ApiClient } from "./api.js";
import { renderBars } from "./bars.js";
import { renderDetail } from "./detail.js";
import { clear, el } from "./dom.js";
import { renderDocList } from "./doclist.js";
import { renderGraph } from "./graph.js";
import { renderMap } from "./map.js";
import { renderNarratives } from "./narratives.js";
import { ReportBuilder, renderReportPanel } from "./report.js";
import { StateStore, toFragment } from "./state.js";
import type { BarMode, QueryState, Tab } from "./state.js";
import { TriagePanel } from "./triage.js";
import type { ReportRecord, SearchResult } from "./types.js";

const ACTOR = "console";
const STATUS_CHOICES = ["published", "triage", "suppressed"];
const TAB_LABELS: { tab: Tab; label: string }[] = [
  { tab: "search", label: "Search" },
  { tab: "triage", label: "Triage" },
  { tab: "narratives", label: "Narratives" },
  { tab: "graph", label: "Graph" },
  { tab: "report", label: "Report" },
];

/** The slice of state the search endpoints see; equal signatures need no refetch. */
function querySignature(qs: QueryState): string {
  return JSON.stringify([
    qs.q,
    qs.keywords,
    qs.geoId,
    qs.dateFrom,
    qs.dateTo,
    qs.statuses,
    qs.page,
    qs.pageSize,
  ]);
}

export class App {
  readonly api: ApiClient;
  readonly store: StateStore;
  readonly builder = new ReportBuilder();

  private root: HTMLElement;
  private banner!: HTMLElement;
  private bannerMsg!: HTMLElement;
  private bannerRetry!: HTMLButtonElement;
  private qInput!: HTMLInputElement;
  private fromInput!: HTMLInputElement;
  private toInput!: HTMLInputElement;
  private statusBoxes = new Map<string, HTMLInputElement>();
  private tabButtons = new Map<Tab, HTMLButtonElement>();
  private sections = new Map<Tab, HTMLElement>();
  private mapPanel!: HTMLElement;
  private barsPanel!: HTMLElement;
  private listPanel!: HTMLElement;
  private detailPanel!: HTMLElement;

  private triagePanel: TriagePanel;
  private lastResult: SearchResult | null = null;
  private lastReport: ReportRecord | null = null;
  private geoLabels = new Map<number, string>();
  private prev: QueryState | null = null;
  private epoch = 0;

  constructor(root: HTMLElement, api: ApiClient, store: StateStore) {
    this.root = root;
    this.api = api;
    this.store = store;
    this.buildSkeleton();
    this.triagePanel = new TriagePanel(
      this.sections.get("triage")!.querySelector<HTMLElement>(".triage-panel")!,
      api,
      ACTOR,
    );
    this.triagePanel.onError = (err) => this.showError(err, () => void this.loadTab(this.store.get()));
  }

  /** Render the initial state and start reacting to updates. */
  async start(): Promise<void> {
    this.store.subscribe((qs) => {
      this.syncFragment(qs);
      void this.handleChange(qs);
    });
    const qs = this.store.get();
    this.prev = qs;
    this.syncFragment(qs);
    this.syncControls(qs);
    this.showTab(qs.tab);
    await this.loadTab(qs);
  }

  private buildSkeleton(): void {
    clear(this.root);

    const header = el("header", { class: "console-header" });
    header.append(el("h1", { text: "mediawatch console" }));

    this.qInput = el("input", {
      type: "search",
      class: "q-input",
      placeholder: "Search working text…",
      "aria-label": "Search text",
    }) as HTMLInputElement;
    this.qInput.addEventListener("change", () => {
      this.store.update({ q: this.qInput.value.trim(), page: 1 });
    });
    this.fromInput = el("input", { type: "date", class: "date-from", "aria-label": "From date" }) as HTMLInputElement;
    this.fromInput.addEventListener("change", () => {
      this.store.update({ dateFrom: this.fromInput.value || null, page: 1 });
    });
    this.toInput = el("input", { type: "date", class: "date-to", "aria-label": "To date" }) as HTMLInputElement;
    this.toInput.addEventListener("change", () => {
      this.store.update({ dateTo: this.toInput.value || null, page: 1 });
    });

    const statusGroup = el("span", { class: "status-group" });
    for (const status of STATUS_CHOICES) {
      const box = el("input", { type: "checkbox", id: `status-${status}` }) as HTMLInputElement;
      box.addEventListener("change", () => {
        const picked = STATUS_CHOICES.filter((s) => this.statusBoxes.get(s)!.checked);
        this.store.update({ statuses: picked, page: 1 });
      });
      this.statusBoxes.set(status, box);
      const wrap = el("label", { class: "status-choice", for: `status-${status}` });
      wrap.append(box, status);
      statusGroup.append(wrap);
    }

    const clearBtn = el("button", { class: "clear-filters", text: "clear filters" });
    clearBtn.addEventListener("click", () => {
      this.store.update({
        q: "",
        keywords: [],
        geoId: null,
        dateFrom: null,
        dateTo: null,
        statuses: [],
        page: 1,
      });
    });

    const controls = el("div", { class: "controls" });
    controls.append(this.qInput, this.fromInput, this.toInput, statusGroup, clearBtn);
    header.append(controls);

    const nav = el("nav", { class: "tabs", role: "tablist" });
    for (const { tab, label } of TAB_LABELS) {
      const btn = el("button", { class: "tab-btn", "data-tab": tab, role: "tab", text: label });
      btn.addEventListener("click", () => this.store.update({ tab }));
      this.tabButtons.set(tab, btn);
      nav.append(btn);
    }
    header.append(nav);
    this.root.append(header);

    this.bannerMsg = el("span", { class: "banner-msg" });
    this.bannerRetry = el("button", { class: "banner-retry", text: "retry" }) as HTMLButtonElement;
    this.banner = el("div", { class: "error-banner", role: "alert", hidden: "" });
    this.banner.append(this.bannerMsg, this.bannerRetry);
    this.root.append(this.banner);

    const main = el("main", { class: "console-main" });

    const search = el("section", { class: "tab-section search-section", "data-section": "search" });
    this.mapPanel = el("div", { class: "panel map-panel" });
    this.barsPanel = el("div", { class: "panel bars-panel" });
    this.listPanel = el("div", { class: "panel list-panel" });
    this.detailPanel = el("aside", { class: "panel detail-panel" });
    const overview = el("div", { class: "overview-row" });
    overview.append(this.mapPanel, this.barsPanel);
    search.append(overview, this.listPanel, this.detailPanel);
    this.sections.set("search", search);

    const triage = el("section", { class: "tab-section", "data-section": "triage" });
    triage.append(el("div", { class: "panel triage-panel" }));
    this.sections.set("triage", triage);

    const narratives = el("section", { class: "tab-section", "data-section": "narratives" });
    narratives.append(el("div", { class: "panel narratives-panel" }));
    this.sections.set("narratives", narratives);

    const graph = el("section", { class: "tab-section", "data-section": "graph" });
    graph.append(el("div", { class: "panel graph-panel" }));
    this.sections.set("graph", graph);

    const report = el("section", { class: "tab-section", "data-section": "report" });
    report.append(el("div", { class: "panel report-panel" }));
    this.sections.set("report", report);

    for (const section of this.sections.values()) main.append(section);
    this.root.append(main);
  }

  private syncFragment(qs: QueryState): void {
    try {
      history.replaceState(null, "", `#${toFragment(qs)}`);
    } catch {
      // Non-browser host without history; state still drives everything.
    }
  }

  private syncControls(qs: QueryState): void {
    if (this.qInput.value !== qs.q) this.qInput.value = qs.q;
    if (this.fromInput.value !== (qs.dateFrom ?? "")) this.fromInput.value = qs.dateFrom ?? "";
    if (this.toInput.value !== (qs.dateTo ?? "")) this.toInput.value = qs.dateTo ?? "";
    for (const [status, box] of this.statusBoxes) {
      box.checked = qs.statuses.includes(status);
    }
    for (const [tab, btn] of this.tabButtons) {
      btn.classList.toggle("active", tab === qs.tab);
      btn.setAttribute("aria-selected", tab === qs.tab ? "true" : "false");
    }
  }

  private showTab(tab: Tab): void {
    for (const [name, section] of this.sections) {
      if (name === tab) section.removeAttribute("hidden");
      else section.setAttribute("hidden", "");
    }
  }

  private async handleChange(qs: QueryState): Promise<void> {
    const prev = this.prev;
    this.prev = qs;
    this.syncControls(qs);
    this.showTab(qs.tab);
    if (!prev || qs.tab !== prev.tab) {
      await this.loadTab(qs);
      return;
    }
    const sigChanged = querySignature(qs) !== querySignature(prev);
    if (qs.tab === "search") {
      if (sigChanged) {
        await this.runSearch(qs);
      } else if (qs.barMode !== prev.barMode) {
        this.renderBarsPanel(qs);
      }
      if (qs.selectedDoc !== prev.selectedDoc) {
        await this.loadDetail(qs);
      }
    } else if (qs.tab === "report") {
      this.renderReport();
    } else if (sigChanged) {
      await this.loadTab(qs);
    }
  }

  /** Fetch and render whatever the active tab shows. */
  private async loadTab(qs: QueryState): Promise<void> {
    switch (qs.tab) {
      case "search": {
        await this.runSearch(qs);
        if (qs.selectedDoc) await this.loadDetail(qs);
        else this.closeDetail();
        return;
      }
      case "triage": {
        const panel = this.triagePanel.container;
        await this.guarded(panel, () => this.triagePanel.load(qs), () => this.loadTab(this.store.get()));
        return;
      }
      case "narratives": {
        const panel = this.sections.get("narratives")!.querySelector<HTMLElement>(".narratives-panel")!;
        await this.guarded(
          panel,
          async () => {
            const records = await this.api.narratives();
            renderNarratives(panel, records, (gid) => this.geoLabels.get(gid) ?? `location ${gid}`);
          },
          () => this.loadTab(this.store.get()),
        );
        return;
      }
      case "graph": {
        const panel = this.sections.get("graph")!.querySelector<HTMLElement>(".graph-panel")!;
        await this.guarded(
          panel,
          async () => {
            const graph = await this.api.graph(qs, 20);
            renderGraph(panel, graph);
          },
          () => this.loadTab(this.store.get()),
        );
        return;
      }
      case "report": {
        this.renderReport();
        return;
      }
    }
  }

  /** One search drives map, bars, and list together. */
  private async runSearch(qs: QueryState): Promise<void> {
    const epoch = ++this.epoch;
    const panels = [this.mapPanel, this.barsPanel, this.listPanel];
    for (const p of panels) p.classList.add("loading");
    try {
      const result = await this.api.search(qs);
      if (epoch !== this.epoch) return;
      this.lastResult = result;
      for (const f of result.facets.by_location) this.geoLabels.set(f.geo_id, f.label);
      this.renderMapPanel(qs);
      this.renderBarsPanel(qs);
      this.renderListPanel(qs);
      for (const p of panels) p.classList.remove("stale");
      this.hideError();
    } catch (err) {
      if (epoch !== this.epoch) return;
      for (const p of panels) p.classList.add("stale");
      this.showError(err, () => void this.runSearch(this.store.get()));
    } finally {
      for (const p of panels) p.classList.remove("loading");
    }
  }

  private renderMapPanel(qs: QueryState): void {
    if (!this.lastResult) return;
    renderMap(this.mapPanel, this.lastResult.map_counts, qs.geoId, (geoId) => {
      this.store.update({ geoId, page: 1 });
    });
  }

  private renderBarsPanel(qs: QueryState): void {
    if (!this.lastResult) return;
    renderBars(
      this.barsPanel,
      this.lastResult.facets,
      qs.barMode,
      (mode: BarMode) => this.store.update({ barMode: mode }),
      (click) => {
        if (click.mode === "time") {
          this.store.update({ dateFrom: click.key, dateTo: click.key, page: 1 });
        } else if (click.mode === "keywords") {
          const current = this.store.get().keywords;
          const next = current.includes(click.key)
            ? current.filter((k) => k !== click.key)
            : [...current, click.key];
          this.store.update({ keywords: next, page: 1 });
        } else if (click.mode === "locations") {
          this.store.update({ geoId: Number(click.key), page: 1 });
        }
      },
    );
  }

  private renderListPanel(qs: QueryState): void {
    if (!this.lastResult) return;
    renderDocList(
      this.listPanel,
      this.lastResult.docs,
      this.lastResult.total,
      qs.page,
      qs.pageSize,
      this.builder.staged(),
      {
        onOpen: (docId) => this.store.update({ selectedDoc: docId }),
        onPage: (page) => this.store.update({ page }),
        onStage: (docId, staged) => {
          this.builder.stage(docId, staged);
          this.renderListPanel(this.store.get());
        },
      },
    );
  }

  private async loadDetail(qs: QueryState): Promise<void> {
    if (!qs.selectedDoc) {
      this.closeDetail();
      return;
    }
    const docId = qs.selectedDoc;
    await this.guarded(
      this.detailPanel,
      async () => {
        const doc = await this.api.document(docId);
        renderDetail(this.detailPanel, doc, {
          onClose: () => this.store.update({ selectedDoc: null }),
          onHighlight: (h) => {
            this.builder.addHighlight(h);
            this.renderListPanel(this.store.get());
          },
        });
      },
      () => this.loadDetail(this.store.get()),
    );
  }

  private closeDetail(): void {
    clear(this.detailPanel);
    this.detailPanel.classList.remove("open");
  }

  private renderReport(): void {
    const panel = this.sections.get("report")!.querySelector<HTMLElement>(".report-panel")!;
    renderReportPanel(panel, this.builder, this.api, this.lastReport, {
      onUnstage: (docId) => {
        this.builder.stage(docId, false);
        this.renderReport();
      },
      onCreated: (report) => {
        this.lastReport = report;
        this.builder.reset();
        this.renderReport();
      },
      onError: (err) => this.showError(err, () => this.renderReport()),
    });
  }

  /** Run a panel load; on failure grey the panel and offer a retry. */
  private async guarded(
    panel: HTMLElement,
    action: () => Promise<void>,
    retry: () => void | Promise<void>,
  ): Promise<void> {
    panel.classList.add("loading");
    try {
      await action();
      panel.classList.remove("stale");
      this.hideError();
    } catch (err) {
      panel.classList.add("stale");
      this.showError(err, retry);
    } finally {
      panel.classList.remove("loading");
    }
  }

  private showError(err: unknown, retry: () => void | Promise<void>): void {
    const msg = err instanceof Error ? err.message : String(err);
    this.bannerMsg.textContent = `Request failed: ${msg}. Showing last good data.`;
    const fresh = this.bannerRetry.cloneNode(true) as HTMLButtonElement;
    fresh.addEventListener("click", () => {
      this.hideError();
      void retry();
    });
    this.banner.replaceChild(fresh, this.bannerRetry);
    this.bannerRetry = fresh;
    this.banner.removeAttribute("hidden");
  }

  private hideError(): void {
    this.banner.setAttribute("hidden", "");
  }
}
