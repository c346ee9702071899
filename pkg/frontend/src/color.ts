/**
 * Log-scaled sequential color ramp for the choropleth and its legend.
 *
 * Daily volumes are heavy-tailed (one hub country can carry most of a
 * day's mentions), so a linear ramp would leave every other region in the
 * first color band.  Position on the ramp is log(1 + count) / log(1 + max):
 * zero stays at the light end, the maximum hits the dark end, and doubling
 * a small count moves further than doubling a large one.
 */

export interface Rgb {
  r: number;
  g: number;
  b: number;
}

const LIGHT: Rgb = { r: 239, g: 243, b: 255 };
const DARK: Rgb = { r: 8, g: 48, b: 107 };

export const EMPTY_FILL = "#f5f5f4";

/** Position of count on the log ramp, in [0, 1]. */
export function logPosition(count: number, max: number): number {
  if (max <= 0 || count <= 0) return 0;
  const t = Math.log1p(count) / Math.log1p(max);
  return Math.min(1, Math.max(0, t));
}

function lerp(a: number, b: number, t: number): number {
  return Math.round(a + (b - a) * t);
}

export function rampColor(t: number): string {
  const r = lerp(LIGHT.r, DARK.r, t);
  const g = lerp(LIGHT.g, DARK.g, t);
  const b = lerp(LIGHT.b, DARK.b, t);
  return `rgb(${r}, ${g}, ${b})`;
}

/** Fill for a region with `count` matches out of a maximum of `max`. */
export function fillFor(count: number, max: number): string {
  if (count <= 0) return EMPTY_FILL;
  return rampColor(logPosition(count, max));
}

export interface LegendStop {
  count: number;
  color: string;
}

/**
 * Representative stops for the always-visible legend: zero plus log-spaced
 * counts up to the maximum, deduplicated for small ranges.
 */
export function legendStops(max: number, steps = 5): LegendStop[] {
  const stops: LegendStop[] = [{ count: 0, color: EMPTY_FILL }];
  if (max <= 0) return stops;
  const seen = new Set<number>([0]);
  for (let i = 1; i <= steps; i++) {
    const count = Math.round(Math.expm1((Math.log1p(max) * i) / steps));
    if (count <= 0 || seen.has(count)) continue;
    seen.add(count);
    stops.push({ count, color: fillFor(count, max) });
  }
  return stops;
}
