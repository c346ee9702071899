// @vitest-environment jsdom
import { describe, expect, it } from "vitest";

import { buildSeries, renderSparkline, sparkX } from "../src/sparkline.js";

function counts(firstDay: string, values: number[]): Record<string, number> {
  const out: Record<string, number> = {};
  const base = Date.parse(`${firstDay}T00:00:00Z`);
  values.forEach((v, i) => {
    if (v === 0) return; // sparse input: missing days mean zero
    out[new Date(base + i * 86_400_000).toISOString().slice(0, 10)] = v;
  });
  out[firstDay] = values[0] || out[firstDay] || 0;
  return out;
}

describe("sparkline series", () => {
  it("fills calendar gaps with zeros", () => {
    const series = buildSeries(
      { "2026-03-01": 2, "2026-03-04": 5 },
      [],
    );
    expect(series.values).toEqual([2, 0, 0, 5]);
    expect(series.firstDay).toBe("2026-03-01");
  });

  it("converts change point dates to day offsets", () => {
    const series = buildSeries(
      { "2026-03-01": 1, "2026-03-21": 4 },
      ["2026-03-11"],
    );
    expect(series.changePoints).toEqual([10]);
  });

  it("ignores change points outside the charted range", () => {
    const series = buildSeries({ "2026-03-01": 1, "2026-03-05": 1 }, ["2026-04-01"]);
    expect(series.changePoints).toEqual([]);
  });
});

describe("sparkline rendering", () => {
  it("draws a vertical rule exactly at the change point day", () => {
    const values = new Array(20).fill(1).map((_, i) => (i >= 10 ? 6 : 1));
    const series = buildSeries(counts("2026-03-01", values), ["2026-03-11"]);
    const svg = renderSparkline(series);
    const rules = svg.querySelectorAll("line.change-point");
    expect(rules).toHaveLength(1);
    const rule = rules[0];
    expect(rule.getAttribute("data-day")).toBe("10");
    const expectedX = sparkX(10, 20).toFixed(1);
    expect(rule.getAttribute("x1")).toBe(expectedX);
    expect(rule.getAttribute("x2")).toBe(expectedX);
    // and the counts themselves are drawn
    expect(svg.querySelector("polyline.spark-line")).not.toBeNull();
  });

  it("renders an empty series as an empty svg", () => {
    const svg = renderSparkline(buildSeries({}, []));
    expect(svg.querySelector("polyline")).toBeNull();
    expect(svg.querySelector("line")).toBeNull();
  });
});
