/**
 * Sparkline for a narrative's daily counts.
 *
 * Days from the first to the last recorded date map onto the x axis (gaps
 * count as zero), counts scale onto the y axis, and each change point is
 * drawn as a vertical rule at its day so a shift in the story's framing is
 * visible at a glance.
 */

import { svgEl } from "./dom.js";

export const SPARK_WIDTH = 220;
export const SPARK_HEIGHT = 48;
const PAD = 4;

const MS_PER_DAY = 86_400_000;

function dayNumber(iso: string): number {
  return Math.floor(Date.parse(`${iso}T00:00:00Z`) / MS_PER_DAY);
}

export interface SparkSeries {
  /** Count per day from the first to the last recorded date, inclusive. */
  values: number[];
  /** Day offsets (0-based) of the change points within that range. */
  changePoints: number[];
  firstDay: string;
}

export function buildSeries(
  dailyCounts: Record<string, number>,
  changePoints: string[],
): SparkSeries {
  const days = Object.keys(dailyCounts).sort();
  if (days.length === 0) {
    return { values: [], changePoints: [], firstDay: "" };
  }
  const first = dayNumber(days[0]);
  const last = dayNumber(days[days.length - 1]);
  const values = new Array<number>(last - first + 1).fill(0);
  for (const [day, count] of Object.entries(dailyCounts)) {
    values[dayNumber(day) - first] = count;
  }
  const cps = changePoints
    .map((day) => dayNumber(day) - first)
    .filter((offset) => offset >= 0 && offset < values.length)
    .sort((a, b) => a - b);
  return { values, changePoints: cps, firstDay: days[0] };
}

/** X coordinate of a day offset within the sparkline viewBox. */
export function sparkX(offset: number, span: number): number {
  if (span <= 1) return SPARK_WIDTH / 2;
  return PAD + (offset / (span - 1)) * (SPARK_WIDTH - 2 * PAD);
}

export function renderSparkline(series: SparkSeries): SVGElement {
  const svg = svgEl("svg", {
    viewBox: `0 0 ${SPARK_WIDTH} ${SPARK_HEIGHT}`,
    class: "sparkline",
    role: "img",
  });
  const n = series.values.length;
  if (n === 0) return svg;

  const max = Math.max(1, ...series.values);
  const points = series.values
    .map((v, i) => {
      const x = sparkX(i, n);
      const y = SPARK_HEIGHT - PAD - (v / max) * (SPARK_HEIGHT - 2 * PAD);
      return `${x.toFixed(1)},${y.toFixed(1)}`;
    })
    .join(" ");

  for (const cp of series.changePoints) {
    const x = sparkX(cp, n);
    svg.append(
      svgEl("line", {
        x1: x.toFixed(1),
        y1: "0",
        x2: x.toFixed(1),
        y2: String(SPARK_HEIGHT),
        class: "change-point",
        "data-day": String(cp),
      }),
    );
  }

  svg.append(
    svgEl("polyline", {
      points,
      class: "spark-line",
      fill: "none",
    }),
  );
  return svg;
}
