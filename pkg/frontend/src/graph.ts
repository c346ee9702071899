/**
 * Knowledge graph panel.
 *
 * Entities from the current match set render as typed bubbles (keyword,
 * location, person, organization) sized by mention weight, laid out on a
 * deterministic circle so the same data always draws the same picture.
 * Adjacency edges returned by the API are drawn beneath the bubbles and
 * carry their endpoint ids as data attributes.
 */

import { clear, svgEl } from "./dom.js";
import type { GraphResult } from "./types.js";

const WIDTH = 520;
const HEIGHT = 380;
const CX = WIDTH / 2;
const CY = HEIGHT / 2;
const RING = 140;

export function renderGraph(container: HTMLElement, graph: GraphResult): void {
  clear(container);
  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "graph-svg",
    role: "img",
    "aria-label": "Entity graph",
  });

  const nodes = [...graph.nodes].sort((a, b) => (a.id < b.id ? -1 : 1));
  const pos = new Map<string, [number, number]>();
  nodes.forEach((node, i) => {
    const angle = (2 * Math.PI * i) / Math.max(1, nodes.length) - Math.PI / 2;
    pos.set(node.id, [CX + RING * Math.cos(angle), CY + RING * Math.sin(angle)]);
  });

  for (const edge of graph.edges) {
    const a = pos.get(edge.source);
    const b = pos.get(edge.target);
    if (!a || !b) continue;
    svg.append(
      svgEl("line", {
        x1: a[0].toFixed(1),
        y1: a[1].toFixed(1),
        x2: b[0].toFixed(1),
        y2: b[1].toFixed(1),
        class: `graph-edge edge-${edge.kind}`,
        "data-source": edge.source,
        "data-target": edge.target,
      }),
    );
  }

  const maxWeight = Math.max(1, ...nodes.map((n) => n.weight));
  for (const node of nodes) {
    const [x, y] = pos.get(node.id)!;
    const r = 6 + 12 * Math.sqrt(node.weight / maxWeight);
    const bubble = svgEl("circle", {
      cx: x.toFixed(1),
      cy: y.toFixed(1),
      r: r.toFixed(1),
      class: `graph-node node-${node.type}`,
      "data-node": node.id,
    });
    const title = svgEl("title");
    title.textContent = `${node.label} (${node.type}, weight ${node.weight})`;
    bubble.append(title);
    svg.append(bubble);

    const label = svgEl("text", {
      x: x.toFixed(1),
      y: (y + r + 11).toFixed(1),
      class: "graph-text",
      "text-anchor": "middle",
    });
    label.textContent = node.label;
    svg.append(label);
  }

  container.append(svg);
}
