/**
 * Document detail pane: the working (English) text plus the tagging the
 * pipeline attached.  Selecting text in the body and pressing the
 * highlight button stages that span for the report builder.
 */

import { clear, el } from "./dom.js";
import { selectionSpan } from "./report.js";
import type { Highlight } from "./types.js";
import type { DocumentDetail } from "./types.js";

export interface DetailHandlers {
  onClose: () => void;
  onHighlight: (h: Highlight) => void;
}

export function renderDetail(
  container: HTMLElement,
  doc: DocumentDetail,
  handlers: DetailHandlers,
): void {
  clear(container);
  container.classList.add("open");

  const close = el("button", { class: "detail-close", text: "close" });
  close.addEventListener("click", handlers.onClose);
  container.append(close);

  container.append(el("h3", { class: "detail-title", text: doc.working_title || doc.raw.title }));
  container.append(
    el("p", { class: "detail-meta" }, [
      el("span", { class: `status-chip status-${doc.status}`, text: doc.status }),
      ` ${doc.lang} · ${doc.raw.source_feed} · ${doc.raw.published_at.slice(0, 10)}`,
    ]),
  );

  const body = el("div", { class: "detail-body", "data-field": "body" });
  body.textContent = doc.working_body;
  container.append(body);

  const mark = el("button", { class: "detail-highlight", text: "Highlight selection for report" });
  mark.addEventListener("click", () => {
    const h = selectionSpan(body, doc.doc_id, "body");
    if (h) handlers.onHighlight(h);
  });
  container.append(mark);

  const tags = el("dl", { class: "detail-tags" });
  const addTag = (label: string, value: string) => {
    if (!value) return;
    tags.append(el("dt", { text: label }), el("dd", { text: value }));
  };
  const uniq = (items: string[]) => [...new Set(items)];
  addTag("keywords", uniq(doc.keyword_mentions.map((m) => m.canonical_id)).join(", "));
  addTag(
    "persons",
    uniq(doc.entity_mentions.filter((m) => m.kind === "person").map((m) => m.name)).join(", "),
  );
  addTag(
    "organizations",
    uniq(doc.entity_mentions.filter((m) => m.kind === "organization").map((m) => m.name)).join(", "),
  );
  addTag(
    "locations",
    uniq(
      doc.geo_mentions.map((m) => (m.resolved === null ? `${m.surface}?` : `${m.surface} (#${m.resolved})`)),
    ).join(", "),
  );
  addTag(
    "counts",
    doc.counts.map((c) => `${c.category}=${c.value}`).join(", "),
  );
  addTag("flags", doc.flags.join(", "));
  if (doc.cluster_id) addTag("cluster", doc.cluster_id);
  container.append(tags);
  container.append(el("p", { class: "detail-source" }, [
    "source: ",
    el("a", { href: doc.raw.url, target: "_blank", rel: "noopener", text: doc.raw.url }),
  ]));
}
