/**
 * Choropleth map panel.
 *
 * Shades the bundled region outlines from the map_counts of the current
 * search result on the shared log color ramp, with the legend always
 * rendered beside the map.  Clicking a region calls onSelect with its
 * geo_id (or null when the region is already the active filter, so a second
 * click clears it); the app turns that into a QueryState change and one
 * fresh search.
 */

import { EMPTY_FILL, fillFor, legendStops } from "./color.js";
import { clear, el, svgEl } from "./dom.js";
import { MAP_VIEWBOX, REGIONS } from "./regions.js";

export function renderMap(
  container: HTMLElement,
  mapCounts: Record<string, number>,
  selectedGeo: number | null,
  onSelect: (geoId: number | null) => void,
): void {
  clear(container);

  const counts = REGIONS.map((r) => mapCounts[String(r.geoId)] ?? 0);
  const max = Math.max(0, ...counts);

  const svg = svgEl("svg", {
    viewBox: MAP_VIEWBOX,
    class: "map-svg",
    role: "group",
    "aria-label": "Matches by region",
  });
  for (const region of REGIONS) {
    const count = mapCounts[String(region.geoId)] ?? 0;
    const path = svgEl("path", {
      d: region.path,
      fill: fillFor(count, max),
      class: region.geoId === selectedGeo ? "map-region selected" : "map-region",
      "data-region": String(region.geoId),
      "data-country": region.countryCode,
      role: "button",
      tabindex: "0",
    });
    const title = svgEl("title");
    title.textContent = `${region.name}: ${count}`;
    path.append(title);
    path.addEventListener("click", () => {
      onSelect(region.geoId === selectedGeo ? null : region.geoId);
    });
    svg.append(path);

    const label = svgEl("text", {
      x: String(region.labelAt[0]),
      y: String(region.labelAt[1]),
      class: "map-label",
      "text-anchor": "middle",
    });
    label.textContent = region.name;
    svg.append(label);
  }
  container.append(svg);

  const legend = el("div", { class: "map-legend", "aria-label": "Map legend" });
  legend.append(el("span", { class: "legend-title", text: "docs" }));
  for (const stop of legendStops(max)) {
    const item = el("span", { class: "legend-item" });
    const swatch = el("span", { class: "legend-swatch" });
    swatch.style.backgroundColor = stop.count === 0 ? EMPTY_FILL : stop.color;
    item.append(swatch, el("span", { text: String(stop.count) }));
    legend.append(item);
  }
  container.append(legend);
}
