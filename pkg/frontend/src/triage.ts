/**
 * Triage queue panel.
 *
 * Loads the documents the scorer routed to triage (honoring the other
 * active filters), sorted most-relevant first so the borderline items
 * worth an analyst's attention come up top.  Publish and suppress act
 * optimistically: the row leaves the queue immediately, the decision posts
 * in the background, and a 409 (someone else decided first) refreshes the
 * queue and flags the conflicted document instead of silently dropping it.
 */

import { ApiClient, ApiError } from "./api.js";
import { clear, el } from "./dom.js";
import type { QueryState } from "./state.js";
import type { DocSummary } from "./types.js";

const QUEUE_PAGE = 100;

/** Most relevant first; unscored documents sink to the end. */
export function queueOrder(docs: DocSummary[]): DocSummary[] {
  return [...docs].sort((a, b) => {
    if (a.relevance === null && b.relevance === null) {
      return a.doc_id < b.doc_id ? -1 : 1;
    }
    if (a.relevance === null) return 1;
    if (b.relevance === null) return -1;
    if (a.relevance !== b.relevance) return b.relevance - a.relevance;
    return a.doc_id < b.doc_id ? -1 : 1;
  });
}

export class TriagePanel {
  readonly container: HTMLElement;
  private api: ApiClient;
  private actor: string;
  private items: DocSummary[] = [];
  private conflicts = new Map<string, string>();
  private lastQuery: QueryState | null = null;
  onError: (err: unknown) => void = () => {};

  constructor(container: HTMLElement, api: ApiClient, actor: string) {
    this.container = container;
    this.api = api;
    this.actor = actor;
  }

  async load(qs: QueryState): Promise<void> {
    this.lastQuery = qs;
    const result = await this.api.searchWithStatus(qs, ["triage"], QUEUE_PAGE);
    this.items = queueOrder(result.docs);
    this.render();
  }

  queued(): readonly DocSummary[] {
    return this.items;
  }

  async decide(docId: string, decision: "publish" | "suppress"): Promise<void> {
    this.items = this.items.filter((d) => d.doc_id !== docId);
    this.render();
    try {
      await this.api.triage(docId, decision, this.actor);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.conflicts.set(docId, "decided elsewhere before this action was saved");
        if (this.lastQuery) await this.load(this.lastQuery);
        return;
      }
      this.onError(err);
      if (this.lastQuery) await this.load(this.lastQuery);
    }
  }

  render(): void {
    clear(this.container);
    this.container.append(
      el("h2", { text: `Triage queue (${this.items.length})` }),
    );

    if (this.conflicts.size) {
      const notes = el("div", { class: "conflict-notes" });
      for (const [docId, note] of this.conflicts) {
        notes.append(
          el("p", { class: "conflict", "data-conflict": docId, text: `${docId}: ${note}` }),
        );
      }
      this.container.append(notes);
    }

    if (this.items.length === 0) {
      this.container.append(el("p", { class: "empty-note", text: "Queue is clear." }));
      return;
    }

    const list = el("ul", { class: "triage-list" });
    for (const doc of this.items) {
      const row = el("li", { class: "triage-row", "data-doc": doc.doc_id });
      const publish = el("button", { class: "decide publish", text: "publish" });
      publish.addEventListener("click", () => void this.decide(doc.doc_id, "publish"));
      const suppress = el("button", { class: "decide suppress", text: "suppress" });
      suppress.addEventListener("click", () => void this.decide(doc.doc_id, "suppress"));
      row.append(
        el("span", {
          class: "doc-relevance",
          text: doc.relevance === null ? "n/a" : doc.relevance.toFixed(2),
        }),
        el("span", { class: "doc-title", text: doc.title || doc.doc_id }),
        el("span", { class: "doc-flags", text: doc.flags.join(", ") }),
        publish,
        suppress,
      );
      list.append(row);
    }
    this.container.append(list);
  }
}
