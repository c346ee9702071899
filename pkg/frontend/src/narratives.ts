/**
 * Narratives panel: one card per tracked (keyword, location) story line,
 * with a sparkline of daily mention counts, change points drawn as
 * vertical rules, the summary terms, and the member document count.
 */

import { clear, el } from "./dom.js";
import { buildSeries, renderSparkline } from "./sparkline.js";
import type { NarrativeRecord } from "./types.js";

export type GeoLabeler = (geoId: number) => string;

export function renderNarratives(
  container: HTMLElement,
  records: NarrativeRecord[],
  geoLabel: GeoLabeler,
): void {
  clear(container);
  container.append(el("h2", { text: `Narratives (${records.length})` }));

  if (records.length === 0) {
    container.append(
      el("p", { class: "empty-note", text: "No narratives on record for the selected day." }),
    );
    return;
  }

  const cards = el("div", { class: "narrative-cards" });
  const ordered = [...records].sort((a, b) =>
    a.opened_on !== b.opened_on
      ? (a.opened_on < b.opened_on ? -1 : 1)
      : (a.narrative_id < b.narrative_id ? -1 : 1),
  );
  for (const rec of ordered) {
    const card = el("div", { class: "narrative-card", "data-narrative": rec.narrative_id });
    card.append(
      el("div", { class: "narrative-head" }, [
        el("strong", { text: `${rec.key.keyword} in ${geoLabel(rec.key.location)}` }),
        el("span", { class: `status-chip status-${rec.status}`, text: rec.status }),
      ]),
      el("p", {
        class: "narrative-meta",
        text: `opened ${rec.opened_on}, ${rec.member_docs.length} documents, ${rec.change_points.length} change points`,
      }),
    );
    card.append(renderSparkline(buildSeries(rec.daily_counts, rec.change_points)));
    if (rec.summary.length) {
      card.append(el("p", { class: "narrative-summary", text: rec.summary.join(" · ") }));
    }
    cards.append(card);
  }
  container.append(cards);
}
