/**
 * Payload shapes for every API endpoint the UI consumes. These mirror the
 * server's JSON schemas one to one; the UI never derives numbers of its
 * own, so everything a view draws is already in one of these records.
 */

export type Point = [number, number];

export interface HealthPayload {
  status: "ok";
  snapshot_id: string;
  grants: number;
}

export interface GrantRow {
  grant_id: string;
  title: string;
  abstract: string;
  funding_amount: number;
  funder_org: string;
  research_orgs: string[];
  grant_start_date: string;
  grant_end_date: string;
  investigator_ids: string[];
  field_path: string[];
}

export interface GrantsPayload {
  count: number;
  grants: GrantRow[];
}

export interface FieldBubble {
  field_path: string[];
  x: number;
  y: number;
  radius: number;
  total_funding: number;
  grant_count: number;
}

export interface FieldsPayload {
  fields: FieldBubble[];
}

export interface PiRow {
  researcher_id: string;
  name: string;
  h_index: number;
  productivity: number;
  avg_log_c10: number;
  career_age: number | null;
  impact: {
    direct: Record<string, number>;
    broad: Record<string, number>;
  };
}

export interface PisPayload {
  rank_by: "h_index" | "productivity" | "avg_log_c10";
  field: string | null;
  pis: PiRow[];
}

export interface ImpactTypeRow {
  impact_type: string;
  mean: number | null;
  baseline: number | null;
}

export interface ImpactTypesPayload {
  mode: "direct" | "broad";
  grant_count: number;
  types: ImpactTypeRow[];
}

export interface EntityEntry {
  value: string;
  count: number;
}

export interface EntityDistributionPayload {
  doc_type: "patent" | "clinical_trial" | "policy" | "newsfeed";
  dimension:
    | "assignee"
    | "policy_source"
    | "trial_phase"
    | "news_outlet"
    | "source_country";
  entries: EntityEntry[];
}

export interface KeywordRow {
  token: string;
  total_freq: number;
  yearly: Record<string, number>;
}

export interface KeywordsPayload {
  topic_id: string;
  count: number;
  keywords: KeywordRow[];
}

export interface LandscapeNode {
  id: string;
  kind: "grant_topic" | "impact_node" | "entity_anchor";
  x: number;
  y: number;
  r: number;
  count?: number;
  leaf?: boolean;
  parent?: string | null;
  doc_type?: string;
  entity?: string;
  topic_path?: string[];
}

export interface LandscapeEdge {
  source: string;
  target: string;
  impact_type: string;
  points: [Point, Point, Point];
  width: number;
  count: number;
}

export interface BeltSpec {
  dimension: string;
  ring: "direct" | "broad";
  angle_start: number;
  angle_end: number;
  offset_sign: -1 | 0 | 1;
  thickness: number;
  color_index: number;
  defined: boolean;
}

export interface GlyphSpec {
  node_id: string;
  mode: "historical" | "prediction";
  center_radius: number;
  baseline_radii: [number, number];
  prediction_ring_radius: number | null;
  belts: BeltSpec[];
}

export interface LandscapePayload {
  snapshot_id: string;
  mode: "direct" | "broad" | "prediction";
  field: string | null;
  seed: number;
  ticks: number;
  canvas: Point;
  center: Point;
  d_max: number;
  anchors: Record<string, Point>;
  nodes: LandscapeNode[];
  edges: LandscapeEdge[];
  glyphs: GlyphSpec[];
}

export interface PredictionScoreRow {
  grant_id: string;
  topic: string;
  score: number;
}

export interface RankedPiRow {
  researcher_id: string;
  value: number;
}

export interface PredictionsPayload {
  impact_type: string;
  threshold: number;
  topics: string[];
  test_auc: Record<string, number>;
  recent_grants: number;
  scores: PredictionScoreRow[];
  high_counts: Record<string, number>;
  high_score_grants: string[];
  ranked_pis: RankedPiRow[];
}

export interface PredictionIndexPayload {
  impact_types: string[];
  threshold: number;
}
