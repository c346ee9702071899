/**
 * Bundled region outlines for the choropleth map.
 *
 * The console ships its outlines so the map renders with no third-party
 * tile or geometry service.  Each region is keyed by the gazetteer geo_id
 * and ISO country code of a country the reference gazetteer covers; counts
 * for cities and districts roll up to these countries through the
 * map_counts ancestor credit, so shading the country outlines covers every
 * resolvable location.  Shapes are simplified schematic outlines drawn in
 * a 360x200 viewBox.
 */

export interface Region {
  geoId: number;
  countryCode: string;
  name: string;
  /** SVG path data in the map viewBox. */
  path: string;
  /** Label anchor [x, y] in the map viewBox. */
  labelAt: [number, number];
}

export const MAP_VIEWBOX = "0 0 360 200";

export const REGIONS: Region[] = [
  {
    geoId: 7,
    countryCode: "CA",
    name: "Canada",
    path: "M14,62 L20,34 L44,22 L82,18 L112,26 L118,44 L108,58 L112,74 L92,86 L60,90 L34,84 L18,76 Z",
    labelAt: [64, 56],
  },
  {
    geoId: 4,
    countryCode: "GB",
    name: "United Kingdom",
    path: "M158,44 L166,34 L176,36 L182,48 L178,62 L184,74 L178,88 L166,92 L158,80 L162,64 L156,54 Z",
    labelAt: [170, 64],
  },
  {
    geoId: 10,
    countryCode: "FR",
    name: "France",
    path: "M150,112 L168,104 L190,108 L200,122 L196,142 L182,156 L162,158 L148,146 L144,128 Z",
    labelAt: [172, 132],
  },
  {
    geoId: 1,
    countryCode: "JP",
    name: "Japan",
    path: "M296,54 L310,46 L322,52 L326,68 L318,84 L322,98 L314,116 L302,132 L288,142 L280,134 L290,118 L298,102 L292,86 L298,70 Z",
    labelAt: [304, 94],
  },
];

export function regionForGeo(geoId: number): Region | undefined {
  return REGIONS.find((r) => r.geoId === geoId);
}
