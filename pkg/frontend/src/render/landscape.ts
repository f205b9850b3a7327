/**
 * SVG renderer for the impact landscape scene. Every coordinate, radius,
 * angle, and thickness is taken verbatim from the API payload -- this
 * module does layout-to-screen transcription only, never computation.
 *
 * Glyph anatomy (all numbers server-side): a solid center disk, two
 * dashed baseline circles marking RII = 1 for the direct and broad
 * rings, and one belt arc per impact dimension. A belt with
 * offset_sign 0 sits exactly on its baseline; +1 rides outside it and
 * -1 inside, always by half its own thickness, so the belt edge touches
 * the baseline it deviates from. Prediction glyphs carry a single
 * purple ring instead of belts.
 */

import type {
  BeltSpec,
  GlyphSpec,
  LandscapeNode,
  LandscapePayload,
  Point,
} from "../types.js";

/** Dark-to-light green ramp indexed by the server's color_index. */
export const BELT_RAMP = [
  "#c7e9c0",
  "#a1d99b",
  "#74c476",
  "#31a354",
  "#006d2c",
];

export const PREDICTION_PURPLE = "#9467bd";

/**
 * Display order of the impact dimension families, clockwise from
 * 12 o'clock: papers, patents, trials, policy, news. Legends and
 * categorical hues follow this order everywhere in the UI.
 */
export const DIMENSION_ORDER = [
  "paper",
  "patent",
  "clinical_trial",
  "policy",
  "newsfeed",
] as const;

export const DIMENSION_HUES: Record<string, string> = {
  paper: "#4e79a7",
  patent: "#f28e2b",
  clinical_trial: "#e15759",
  policy: "#b07aa1",
  newsfeed: "#edc948",
};

/** Collapse a concrete impact type or doc type onto its display family. */
export const dimensionFamily = (name: string): string => {
  const bare = name.replace(/^direct_/, "").replace(/^broad_/, "");
  if (bare.endsWith("paper")) return "paper";
  if (bare.startsWith("clinical")) return "clinical_trial";
  return bare;
};

export const hueFor = (name: string): string =>
  DIMENSION_HUES[dimensionFamily(name)] ?? "#888888";

const fmt = (value: number): string => {
  const s = value.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
};

export const escapeXml = (text: string): string =>
  text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");

/** Point at `deg` degrees clockwise from 12 o'clock, radius r. */
const polar = (cx: number, cy: number, r: number, deg: number): Point => {
  const rad = (deg * Math.PI) / 180;
  return [cx + r * Math.sin(rad), cy - r * Math.cos(rad)];
};

/** Circular arc path from angle_start to angle_end (clockwise). */
export const arcPath = (
  cx: number,
  cy: number,
  r: number,
  startDeg: number,
  endDeg: number,
): string => {
  const [x0, y0] = polar(cx, cy, r, startDeg);
  const [x1, y1] = polar(cx, cy, r, endDeg);
  const large = endDeg - startDeg > 180 ? 1 : 0;
  return (
    `M ${fmt(x0)} ${fmt(y0)} ` +
    `A ${fmt(r)} ${fmt(r)} 0 ${large} 1 ${fmt(x1)} ${fmt(y1)}`
  );
};

const beltArc = (cx: number, cy: number, baseline: number, belt: BeltSpec): string => {
  const r = baseline + belt.offset_sign * (belt.thickness / 2);
  const stroke = belt.defined ? BELT_RAMP[belt.color_index] ?? "#888888" : "#cccccc";
  const dash = belt.defined ? "" : ' stroke-dasharray="2 2"';
  return (
    `<path class="belt belt-${belt.ring}" ` +
    `data-dimension="${escapeXml(belt.dimension)}" ` +
    `data-radius="${fmt(r)}" ` +
    `d="${arcPath(cx, cy, r, belt.angle_start, belt.angle_end)}" ` +
    `fill="none" stroke="${stroke}" stroke-width="${fmt(belt.thickness)}"${dash}/>`
  );
};

const renderGlyph = (node: LandscapeNode, glyph: GlyphSpec): string => {
  const { x, y } = node;
  const [directR, broadR] = glyph.baseline_radii;
  const parts = [
    `<g class="glyph glyph-${glyph.mode}" data-node="${escapeXml(glyph.node_id)}">`,
    `<circle class="glyph-center" cx="${fmt(x)}" cy="${fmt(y)}" ` +
      `r="${fmt(glyph.center_radius)}" fill="#5b5b5b"/>`,
    `<circle class="baseline baseline-direct" cx="${fmt(x)}" cy="${fmt(y)}" ` +
      `r="${fmt(directR)}" fill="none" stroke="#999999" stroke-dasharray="4 3"/>`,
    `<circle class="baseline baseline-broad" cx="${fmt(x)}" cy="${fmt(y)}" ` +
      `r="${fmt(broadR)}" fill="none" stroke="#999999" stroke-dasharray="4 3"/>`,
  ];
  for (const belt of glyph.belts) {
    parts.push(beltArc(x, y, belt.ring === "direct" ? directR : broadR, belt));
  }
  const ring = glyph.prediction_ring_radius;
  if (glyph.mode === "prediction" && ring !== null && ring > 0) {
    parts.push(
      `<circle class="prediction-ring" cx="${fmt(x)}" cy="${fmt(y)}" ` +
        `r="${fmt(ring)}" fill="none" stroke="${PREDICTION_PURPLE}" ` +
        `stroke-width="2.5"/>`,
    );
  }
  parts.push("</g>");
  return parts.join("\n");
};

const renderEdge = (edge: LandscapePayload["edges"][number]): string => {
  const [[x0, y0], [x1, y1], [x2, y2]] = edge.points;
  return (
    `<path class="edge" data-impact-type="${escapeXml(edge.impact_type)}" ` +
    `d="M ${fmt(x0)} ${fmt(y0)} Q ${fmt(x1)} ${fmt(y1)} ${fmt(x2)} ${fmt(y2)}" ` +
    `fill="none" stroke="${hueFor(edge.impact_type)}" ` +
    `stroke-width="${fmt(edge.width)}" stroke-opacity="0.45"/>`
  );
};

const renderNode = (node: LandscapeNode, selected: string | null): string => {
  const cls = node.id === selected ? " selected" : "";
  if (node.kind === "impact_node") {
    const hue = hueFor(node.doc_type ?? "");
    const label = node.topic_path?.length
      ? node.topic_path[node.topic_path.length - 1]
      : node.entity ?? node.id;
    return (
      `<g class="impact-node${cls}" data-node="${escapeXml(node.id)}">` +
      `<circle cx="${fmt(node.x)}" cy="${fmt(node.y)}" r="${fmt(node.r)}" ` +
      `fill="${hue}" fill-opacity="0.85"/>` +
      `<text x="${fmt(node.x)}" y="${fmt(node.y + node.r + 10)}" ` +
      `text-anchor="middle" font-size="9">${escapeXml(label)}</text></g>`
    );
  }
  if (node.kind === "entity_anchor") {
    const side = Math.max(4, node.r);
    return (
      `<rect class="entity-anchor${cls}" data-node="${escapeXml(node.id)}" ` +
      `x="${fmt(node.x - side / 2)}" y="${fmt(node.y - side / 2)}" ` +
      `width="${fmt(side)}" height="${fmt(side)}" fill="#777777"/>`
    );
  }
  // grant_topic nodes are drawn by their glyphs; keep a hit target only.
  return (
    `<circle class="grant-topic${cls}" data-node="${escapeXml(node.id)}" ` +
    `cx="${fmt(node.x)}" cy="${fmt(node.y)}" r="${fmt(node.r)}" ` +
    `fill="transparent" stroke="none"/>`
  );
};

const renderAnchor = (name: string, [x, y]: Point): string =>
  `<g class="anchor" data-anchor="${escapeXml(name)}">` +
  `<path d="M ${fmt(x - 6)} ${fmt(y)} H ${fmt(x + 6)} ` +
  `M ${fmt(x)} ${fmt(y - 6)} V ${fmt(y + 6)}" stroke="#444444"/>` +
  `<text x="${fmt(x)}" y="${fmt(y - 9)}" text-anchor="middle" ` +
  `font-size="10">${escapeXml(name)}</text></g>`;

/**
 * Render the whole scene to an SVG string. Pure: byte-identical payloads
 * produce byte-identical markup.
 */
export const renderLandscape = (
  payload: LandscapePayload,
  selectedGlyph: string | null = null,
): string => {
  const [width, height] = payload.canvas;
  const byId = new Map(payload.nodes.map((n) => [n.id, n]));
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${fmt(width)} ${fmt(height)}" ` +
      `class="landscape landscape-${payload.mode}" data-snapshot="${escapeXml(payload.snapshot_id)}">`,
    `<circle class="containment" cx="${fmt(payload.center[0])}" ` +
      `cy="${fmt(payload.center[1])}" r="${fmt(payload.d_max)}" ` +
      `fill="none" stroke="#dddddd"/>`,
  ];
  for (const edge of payload.edges) parts.push(renderEdge(edge));
  for (const node of payload.nodes) parts.push(renderNode(node, selectedGlyph));
  for (const glyph of payload.glyphs) {
    const node = byId.get(glyph.node_id);
    if (node !== undefined) parts.push(renderGlyph(node, glyph));
  }
  for (const [name, position] of Object.entries(payload.anchors)) {
    parts.push(renderAnchor(name, position));
  }
  parts.push("</svg>");
  return parts.join("\n");
};

/** Visible, non-throwing failure surface for bad payloads. */
export const renderErrorBanner = (message: string): string =>
  `<div class="error-banner" role="alert">${escapeXml(message)}</div>`;
