/** Payload shapes returned by the mediawatch HTTP API. */

export interface DocSummary {
  doc_id: string;
  title: string;
  lang: string;
  status: string;
  relevance: number | null;
  published_at: string | null;
  source_feed: string;
  url: string;
  publisher_country: string | null;
  cluster_id: string | null;
  keywords: string[];
  locations: number[];
  flags: string[];
}

export interface KeywordFacet {
  id: string;
  label: string;
  count: number;
}

export interface LocationFacet {
  geo_id: number;
  label: string;
  count: number;
}

export interface CategoryFacet {
  category: string;
  count: number;
}

export interface Facets {
  by_date: Record<string, number>;
  by_keyword: KeywordFacet[];
  by_location: LocationFacet[];
  by_category: CategoryFacet[];
}

export interface SearchResult {
  total: number;
  docs: DocSummary[];
  facets: Facets;
  map_counts: Record<string, number>;
}

export interface RawArticlePayload {
  source_feed: string;
  url: string;
  title: string;
  body: string;
  published_at: string;
  publisher_country: string | null;
  published_at_inferred: boolean;
}

export interface KeywordMention {
  canonical_id: string;
  surface: string;
  span: [number, number];
  field: "title" | "body";
}

export interface GeoMention {
  surface: string;
  span: [number, number];
  resolved: number | null;
  method: string;
}

export interface EntityMention {
  kind: "person" | "organization";
  name: string;
  span: [number, number];
  title_phrase: string | null;
}

export interface DocumentDetail {
  doc_id: string;
  raw: RawArticlePayload;
  lang: string;
  working_title: string;
  working_body: string;
  fetched_at: string;
  status: string;
  relevance: number | null;
  keyword_mentions: KeywordMention[];
  geo_mentions: GeoMention[];
  entity_mentions: EntityMention[];
  counts: { category: string; value: number; span: [number, number] }[];
  cluster_id: string | null;
  flags: string[];
}

export interface GraphNode {
  id: string;
  type: "keyword" | "location" | "person" | "organization";
  label: string;
  weight: number;
}

export interface GraphEdge {
  source: string;
  target: string;
  kind: string;
}

export interface GraphResult {
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface NarrativeRecord {
  narrative_id: string;
  key: { keyword: string; location: number };
  opened_on: string;
  status: string;
  daily_counts: Record<string, number>;
  member_docs: string[];
  change_points: string[];
  summary: string[];
}

export interface ClusterDetail {
  cluster_id: string;
  member_ids: string[];
  exemplar_id: string;
  count_history: {
    doc_id: string;
    category: string;
    value: number;
    span: [number, number];
  }[];
}

export interface GeoDetail {
  geo_id: number;
  name: string;
  kind: string;
  country_code: string | null;
  parent_id: number | null;
  lat: number | null;
  lon: number | null;
  population: number | null;
  ancestors: { geo_id: number; name: string; kind: string }[];
  children: { geo_id: number; name: string; kind: string }[];
}

export interface Highlight {
  doc_id: string;
  field: "title" | "body";
  span: [number, number];
}

export interface ReportRecord {
  report_id: string;
  title: string;
  author: string;
  created_at: string;
  doc_ids: string[];
  highlights: Highlight[];
}
