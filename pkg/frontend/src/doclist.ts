/**
 * Document list panel for the current search page.
 *
 * Each row shows the headline fields an analyst scans (title, status,
 * relevance, date, keywords) plus a checkbox that stages the document for
 * the report builder.  Clicking a title opens the detail pane; paging
 * controls move through the result set one QueryState change at a time.
 */

import { clear, el } from "./dom.js";
import type { DocSummary } from "./types.js";

export interface DocListHandlers {
  onOpen: (docId: string) => void;
  onPage: (page: number) => void;
  onStage: (docId: string, staged: boolean) => void;
}

export function renderDocList(
  container: HTMLElement,
  docs: DocSummary[],
  total: number,
  page: number,
  pageSize: number,
  staged: ReadonlySet<string>,
  handlers: DocListHandlers,
): void {
  clear(container);

  const pages = Math.max(1, Math.ceil(total / pageSize));
  const header = el("div", { class: "list-header" }, [
    el("span", { class: "list-total", text: `${total} documents` }),
    el("span", { class: "list-page", text: `page ${page} of ${pages}` }),
  ]);
  const prev = el("button", { class: "page-btn", text: "prev" });
  const next = el("button", { class: "page-btn", text: "next" });
  if (page <= 1) prev.setAttribute("disabled", "");
  if (page >= pages) next.setAttribute("disabled", "");
  prev.addEventListener("click", () => handlers.onPage(page - 1));
  next.addEventListener("click", () => handlers.onPage(page + 1));
  header.append(prev, next);
  container.append(header);

  if (docs.length === 0) {
    container.append(el("p", { class: "empty-note", text: "No documents match the current filters." }));
    return;
  }

  const list = el("ul", { class: "doc-list" });
  for (const doc of docs) {
    const row = el("li", { class: "doc-row", "data-doc": doc.doc_id });

    const check = el("input", {
      type: "checkbox",
      class: "doc-check",
      "aria-label": `stage ${doc.doc_id} for report`,
    }) as HTMLInputElement;
    check.checked = staged.has(doc.doc_id);
    check.addEventListener("change", () => handlers.onStage(doc.doc_id, check.checked));

    const title = el("a", { class: "doc-title", href: "#", text: doc.title || doc.doc_id });
    title.addEventListener("click", (ev) => {
      ev.preventDefault();
      handlers.onOpen(doc.doc_id);
    });

    const meta = el("span", { class: "doc-meta" }, [
      el("span", { class: `status-chip status-${doc.status}`, text: doc.status }),
      el("span", {
        class: "doc-relevance",
        text: doc.relevance === null ? "rel n/a" : `rel ${doc.relevance.toFixed(2)}`,
      }),
      el("span", { class: "doc-date", text: doc.published_at ? doc.published_at.slice(0, 10) : "undated" }),
      el("span", { class: "doc-lang", text: doc.lang }),
    ]);
    if (doc.keywords.length) {
      meta.append(el("span", { class: "doc-keywords", text: doc.keywords.join(", ") }));
    }
    if (doc.flags.length) {
      meta.append(el("span", { class: "doc-flags", text: doc.flags.join(", ") }));
    }

    row.append(check, title, meta);
    list.append(row);
  }
  container.append(list);
}
