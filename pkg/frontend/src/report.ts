/**
 * Report builder.
 *
 * Staging happens in the document list (checkboxes) and the detail pane
 * (text selections become highlights).  This module keeps that working set
 * and, on submit, posts it as one report; the server renders the export
 * with the highlighted spans marked.
 */

import { ApiClient } from "./api.js";
import { clear, el } from "./dom.js";
import type { Highlight, ReportRecord } from "./types.js";

export class ReportBuilder {
  private stagedIds = new Set<string>();
  private marks: Highlight[] = [];

  staged(): ReadonlySet<string> {
    return this.stagedIds;
  }

  highlights(): readonly Highlight[] {
    return this.marks;
  }

  stage(docId: string, on: boolean): void {
    if (on) {
      this.stagedIds.add(docId);
    } else {
      this.stagedIds.delete(docId);
      this.marks = this.marks.filter((h) => h.doc_id !== docId);
    }
  }

  isStaged(docId: string): boolean {
    return this.stagedIds.has(docId);
  }

  /** A highlight stages its document implicitly. */
  addHighlight(h: Highlight): void {
    this.stagedIds.add(h.doc_id);
    this.marks.push(h);
  }

  removeHighlight(index: number): void {
    this.marks.splice(index, 1);
  }

  reset(): void {
    this.stagedIds.clear();
    this.marks = [];
  }

  async create(api: ApiClient, title: string, author: string): Promise<ReportRecord> {
    return api.createReport(title, author, [...this.stagedIds].sort(), [...this.marks]);
  }
}

/**
 * Translate the viewer's current text selection inside `container` into a
 * highlight span over the given field, as offsets into the container's
 * full text content.  Returns null when nothing inside the container is
 * selected.
 */
export function selectionSpan(
  container: HTMLElement,
  docId: string,
  field: "title" | "body",
): Highlight | null {
  const sel = window.getSelection();
  if (!sel || sel.rangeCount === 0 || sel.isCollapsed) return null;
  const range = sel.getRangeAt(0);
  if (!container.contains(range.startContainer) || !container.contains(range.endContainer)) {
    return null;
  }
  const prefix = document.createRange();
  prefix.selectNodeContents(container);
  prefix.setEnd(range.startContainer, range.startOffset);
  const start = prefix.toString().length;
  const length = range.toString().length;
  if (length === 0) return null;
  return { doc_id: docId, field, span: [start, start + length] };
}

export interface ReportPanelHandlers {
  onUnstage: (docId: string) => void;
  onCreated: (report: ReportRecord) => void;
  onError: (err: unknown) => void;
}

export function renderReportPanel(
  container: HTMLElement,
  builder: ReportBuilder,
  api: ApiClient,
  lastReport: ReportRecord | null,
  handlers: ReportPanelHandlers,
): void {
  clear(container);
  container.append(el("h2", { text: "Report builder" }));

  const staged = [...builder.staged()].sort();
  if (staged.length === 0) {
    container.append(
      el("p", {
        class: "empty-note",
        text: "Stage documents with the checkboxes in the search list, then assemble the report here.",
      }),
    );
  } else {
    const list = el("ul", { class: "staged-list" });
    for (const docId of staged) {
      const marks = builder.highlights().filter((h) => h.doc_id === docId).length;
      const row = el("li", { class: "staged-row", "data-doc": docId });
      const drop = el("button", { class: "unstage", text: "remove" });
      drop.addEventListener("click", () => handlers.onUnstage(docId));
      row.append(
        el("span", { text: marks ? `${docId} (${marks} highlights)` : docId }),
        drop,
      );
      list.append(row);
    }
    container.append(list);
  }

  const form = el("div", { class: "report-form" });
  const title = el("input", {
    type: "text",
    class: "report-title",
    placeholder: "Report title",
    "aria-label": "Report title",
  }) as HTMLInputElement;
  const author = el("input", {
    type: "text",
    class: "report-author",
    placeholder: "Author",
    "aria-label": "Report author",
  }) as HTMLInputElement;
  const submit = el("button", { class: "report-submit", text: "Create report" });
  if (staged.length === 0) submit.setAttribute("disabled", "");
  submit.addEventListener("click", () => {
    void builder
      .create(api, title.value || "Untitled report", author.value || "analyst")
      .then((report) => handlers.onCreated(report))
      .catch((err) => handlers.onError(err));
  });
  form.append(title, author, submit);
  container.append(form);

  if (lastReport) {
    container.append(
      el("p", { class: "report-done" }, [
        `Created ${lastReport.report_id} with ${lastReport.doc_ids.length} documents. `,
        el("a", {
          href: api.exportUrl(lastReport.report_id),
          target: "_blank",
          rel: "noopener",
          text: "Open export",
        }),
      ]),
    );
  }
}
