/**
 * One ViewState drives all six coordinated views. Every user action
 * changes exactly one facet of the state and maps deterministically to
 * the set of views whose API parameters that facet feeds; those views
 * and only those refetch. In-flight requests carry a per-view monotone
 * version so responses arriving out of order are dropped, never drawn.
 */

import type { QueryParams } from "./api.js";
import { dimensionFamily } from "./render/landscape.js";

export type ViewName =
  | "grants"
  | "fields"
  | "pis"
  | "landscape"
  | "impactTypes"
  | "entities"
  | "keywords"
  | "predictions";

export type Mode = "direct" | "broad" | "prediction";

export interface Filters {
  funderOrg: string | null;
  yearMin: number | null;
  yearMax: number | null;
  amountMin: number | null;
  amountMax: number | null;
}

export interface ViewState {
  filters: Filters;
  field: string | null;
  mode: Mode;
  /** Impact type highlighted in the selector; null = all. */
  impactType: string | null;
  threshold: number;
  rankBy: "h_index" | "productivity" | "avg_log_c10";
  seed: number;
  /** Hover target: a topic id like "grant:Computing", or null. */
  hoverTopic: string | null;
  selectedGlyph: string | null;
}

export const initialState = (): ViewState => ({
  filters: {
    funderOrg: null,
    yearMin: null,
    yearMax: null,
    amountMin: null,
    amountMax: null,
  },
  field: null,
  mode: "broad",
  impactType: null,
  threshold: 0.5,
  rankBy: "h_index",
  seed: 0,
  hoverTopic: null,
  selectedGlyph: null,
});

export type Action =
  | { kind: "filter-change"; patch: Partial<Filters> }
  | { kind: "field-select"; field: string | null }
  | { kind: "impact-type-toggle"; impactType: string | null }
  | { kind: "mode-switch"; mode: Mode }
  | { kind: "threshold-change"; threshold: number }
  | { kind: "rank-change"; rankBy: ViewState["rankBy"] }
  | { kind: "glyph-select"; nodeId: string | null }
  | { kind: "glyph-hover"; topicId: string | null };

export const reduce = (state: ViewState, action: Action): ViewState => {
  switch (action.kind) {
    case "filter-change":
      return { ...state, filters: { ...state.filters, ...action.patch } };
    case "field-select":
      return { ...state, field: action.field };
    case "impact-type-toggle":
      return { ...state, impactType: action.impactType };
    case "mode-switch":
      return { ...state, mode: action.mode };
    case "threshold-change":
      return { ...state, threshold: action.threshold };
    case "rank-change":
      return { ...state, rankBy: action.rankBy };
    case "glyph-select":
      return { ...state, selectedGlyph: action.nodeId };
    case "glyph-hover":
      return { ...state, hoverTopic: action.topicId };
  }
};

/** Doc types that have an entity chart (papers do not). */
const ENTITY_DOC_TYPES = new Set([
  "patent",
  "clinical_trial",
  "policy",
  "newsfeed",
]);

const ENTITY_DIMENSION: Record<string, string> = {
  patent: "assignee",
  clinical_trial: "trial_phase",
  policy: "policy_source",
  newsfeed: "news_outlet",
};

/**
 * The deterministic action -> refetch mapping. Each branch lists exactly
 * the views whose request parameters include the facet the action
 * changed, computed against the post-action state.
 */
export const refetchFor = (action: Action, state: ViewState): ViewName[] => {
  switch (action.kind) {
    case "filter-change":
      // funder/year/amount feed the grant list and the impact-type bars
      return ["grants", "impactTypes"];
    case "field-select":
      // field feeds grants, PI ranking, impact-type bars, and the scene
      return ["grants", "pis", "impactTypes", "landscape"];
    case "impact-type-toggle": {
      const views: ViewName[] = ["landscape"];
      if (
        state.impactType !== null &&
        ENTITY_DOC_TYPES.has(dimensionFamily(state.impactType))
      ) {
        views.push("entities");
      }
      return views;
    }
    case "mode-switch":
      return state.mode === "prediction"
        ? ["landscape", "predictions"]
        : ["impactTypes", "landscape"];
    case "threshold-change":
      return state.mode === "prediction"
        ? ["landscape", "predictions"]
        : ["landscape"];
    case "rank-change":
      return state.mode === "prediction" ? ["pis", "predictions"] : ["pis"];
    case "glyph-select":
      return [];
    case "glyph-hover":
      return state.hoverTopic === null ? [] : ["keywords"];
  }
};

/** Request parameters for one view, derived purely from the state. */
export const paramsFor = (view: ViewName, state: ViewState): QueryParams => {
  const f = state.filters;
  switch (view) {
    case "grants":
      return {
        funder_org: f.funderOrg,
        field: state.field,
        year_min: f.yearMin,
        year_max: f.yearMax,
        amount_min: f.amountMin,
        amount_max: f.amountMax,
      };
    case "fields":
      return { level: 1, seed: state.seed };
    case "pis":
      return { field: state.field, rank_by: state.rankBy, limit: 50 };
    case "landscape": {
      let family =
        state.impactType === null ? null : dimensionFamily(state.impactType);
      if (family === "paper" && state.mode !== "direct") family = null;
      return {
        field: state.field,
        mode: state.mode,
        types: family,
        threshold: state.mode === "prediction" ? state.threshold : null,
        seed: state.seed,
      };
    }
    case "impactTypes":
      return {
        mode: state.mode === "prediction" ? "broad" : state.mode,
        funder_org: f.funderOrg,
        field: state.field,
        year_min: f.yearMin,
        year_max: f.yearMax,
      };
    case "entities": {
      const family =
        state.impactType === null ? "patent" : dimensionFamily(state.impactType);
      return { doc_type: family, dimension: ENTITY_DIMENSION[family] };
    }
    case "keywords":
      return { top_n: 40 };
    case "predictions":
      return {
        impact_type: state.impactType ?? "direct_patent",
        threshold: state.threshold,
        rank_by: state.rankBy,
      };
  }
};
