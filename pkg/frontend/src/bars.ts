/**
 * Bar graph panel over the current search facets.
 *
 * One facet payload drives all four modes (volume over time, top keywords,
 * top locations, top categories); switching modes regroups locally without
 * another request.  Clicking a bar narrows the query: a day bar pins the
 * date range, a keyword bar adds that keyword filter, a location bar sets
 * the geography filter.  Category bars are display-only.
 */

import { clear, el } from "./dom.js";
import type { Facets } from "./types.js";
import type { BarMode } from "./state.js";

export interface BarDatum {
  key: string;
  label: string;
  count: number;
}

export interface BarClick {
  mode: BarMode;
  key: string;
}

export function barData(facets: Facets, mode: BarMode): BarDatum[] {
  switch (mode) {
    case "time":
      return Object.entries(facets.by_date).map(([day, count]) => ({
        key: day,
        label: day,
        count,
      }));
    case "keywords":
      return facets.by_keyword.map((f) => ({ key: f.id, label: f.label, count: f.count }));
    case "locations":
      return facets.by_location.map((f) => ({
        key: String(f.geo_id),
        label: f.label,
        count: f.count,
      }));
    case "categories":
      return facets.by_category.map((f) => ({
        key: f.category,
        label: f.category,
        count: f.count,
      }));
  }
}

const MODES: { mode: BarMode; label: string }[] = [
  { mode: "time", label: "Over time" },
  { mode: "keywords", label: "Keywords" },
  { mode: "locations", label: "Locations" },
  { mode: "categories", label: "Categories" },
];

export function renderBars(
  container: HTMLElement,
  facets: Facets,
  mode: BarMode,
  onMode: (mode: BarMode) => void,
  onBar: (click: BarClick) => void,
): void {
  clear(container);

  const switcher = el("div", { class: "bar-modes", role: "tablist" });
  for (const m of MODES) {
    const btn = el("button", {
      class: m.mode === mode ? "mode-btn active" : "mode-btn",
      "data-mode": m.mode,
      text: m.label,
    });
    btn.addEventListener("click", () => onMode(m.mode));
    switcher.append(btn);
  }
  container.append(switcher);

  const data = barData(facets, mode);
  const max = Math.max(1, ...data.map((d) => d.count));
  const chart = el("div", { class: "bar-chart" });
  if (data.length === 0) {
    chart.append(el("p", { class: "empty-note", text: "No matches to chart." }));
  }
  for (const d of data) {
    const row = el("div", { class: "bar-row", "data-bar": d.key });
    const label = el("span", { class: "bar-label", text: d.label, title: d.label });
    const track = el("span", { class: "bar-track" });
    const fill = el("span", { class: "bar-fill" });
    fill.style.width = `${Math.max(2, Math.round((d.count / max) * 100))}%`;
    track.append(fill);
    const value = el("span", { class: "bar-value", text: String(d.count) });
    row.append(label, track, value);
    if (mode !== "categories") {
      row.classList.add("clickable");
      row.addEventListener("click", () => onBar({ mode, key: d.key }));
    }
    chart.append(row);
  }
  container.append(chart);
}
