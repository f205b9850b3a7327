/**
 * Structural checks run on every payload before it reaches a renderer.
 * A payload that fails surfaces as an error banner in that view; it
 * never throws past the coordinator and never renders partially.
 */

export class PayloadError extends Error {}

type Shape = Record<string, "string" | "number" | "object" | "array" | "boolean">;

const checkShape = (name: string, value: unknown, shape: Shape): void => {
  if (typeof value !== "object" || value === null || Array.isArray(value)) {
    throw new PayloadError(`${name}: expected an object`);
  }
  const record = value as Record<string, unknown>;
  for (const [key, kind] of Object.entries(shape)) {
    const field = record[key];
    if (field === undefined) {
      throw new PayloadError(`${name}: missing required key "${key}"`);
    }
    const ok =
      kind === "array"
        ? Array.isArray(field)
        : kind === "object"
          ? typeof field === "object" && field !== null && !Array.isArray(field)
          : typeof field === kind;
    if (!ok) {
      throw new PayloadError(`${name}: key "${key}" is not a ${kind}`);
    }
  }
};

const VIEW_SHAPES: Record<string, Shape> = {
  grants: { count: "number", grants: "array" },
  fields: { fields: "array" },
  pis: { rank_by: "string", pis: "array" },
  landscape: {
    snapshot_id: "string",
    mode: "string",
    canvas: "array",
    center: "array",
    d_max: "number",
    anchors: "object",
    nodes: "array",
    edges: "array",
    glyphs: "array",
  },
  impactTypes: { mode: "string", grant_count: "number", types: "array" },
  entities: { doc_type: "string", dimension: "string", entries: "array" },
  keywords: { topic_id: "string", count: "number", keywords: "array" },
  predictions: {
    impact_type: "string",
    threshold: "number",
    scores: "array",
    high_counts: "object",
    ranked_pis: "array",
  },
};

const GLYPH_SHAPE: Shape = {
  node_id: "string",
  mode: "string",
  center_radius: "number",
  baseline_radii: "array",
  belts: "array",
};

/** Throw PayloadError unless the payload has the view's required shape. */
export const validatePayload = (view: string, payload: unknown): void => {
  const shape = VIEW_SHAPES[view];
  if (shape === undefined) return;
  checkShape(view, payload, shape);
  if (view === "landscape") {
    const glyphs = (payload as { glyphs: unknown[] }).glyphs;
    for (const glyph of glyphs) checkShape("glyph", glyph, GLYPH_SHAPE);
  }
};
