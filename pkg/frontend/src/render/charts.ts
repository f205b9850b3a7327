/**
 * The non-landscape views: grant field bubbles, the PI table, impact-type
 * bars with baselines, entity distribution charts, and the prediction
 * side panel. All scales are presentation-only (pixels per payload
 * number); no metric is computed here.
 */

import type {
  EntityDistributionPayload,
  FieldsPayload,
  GrantsPayload,
  ImpactTypesPayload,
  PisPayload,
  PredictionsPayload,
} from "../types.js";
import { DIMENSION_ORDER, escapeXml, hueFor } from "./landscape.js";

const BAR_W = 160;

const fmt = (value: number): string => value.toFixed(2);

/** Grant bubbles: one circle per field, geometry straight from /api/fields. */
export const renderFieldBubbles = (
  payload: FieldsPayload,
  selectedField: string | null,
): string => {
  const bubbles = payload.fields.map((bubble) => {
    const name = bubble.field_path.join("/");
    const cls = name === selectedField ? "field-bubble selected" : "field-bubble";
    return (
      `<g class="${cls}" data-field="${escapeXml(name)}">` +
      `<circle cx="${fmt(bubble.x)}" cy="${fmt(bubble.y)}" ` +
      `r="${fmt(bubble.radius)}" fill="#9ecae1" fill-opacity="0.8" ` +
      `stroke="#3182bd"/>` +
      `<text x="${fmt(bubble.x)}" y="${fmt(bubble.y)}" text-anchor="middle" ` +
      `font-size="11">${escapeXml(name)} (${bubble.grant_count})</text></g>`
    );
  });
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" class="field-bubbles" ` +
    `viewBox="0 0 1000 1000">\n${bubbles.join("\n")}\n</svg>`
  );
};

/** Query view: the filtered grant list, compact. */
export const renderGrantList = (payload: GrantsPayload, limit = 20): string => {
  const rows = payload.grants.slice(0, limit).map(
    (g) =>
      `<tr data-grant="${escapeXml(g.grant_id)}">` +
      `<td>${escapeXml(g.grant_id)}</td>` +
      `<td>${escapeXml(g.title)}</td>` +
      `<td>${escapeXml(g.funder_org)}</td>` +
      `<td>${g.grant_start_date.slice(0, 4)}</td>` +
      `<td>${escapeXml(g.field_path.join("/"))}</td></tr>`,
  );
  return (
    `<div class="grant-list"><p class="result-count">${payload.count} grants</p>` +
    `<table><thead><tr><th>id</th><th>title</th><th>funder</th>` +
    `<th>year</th><th>field</th></tr></thead>` +
    `<tbody>${rows.join("")}</tbody></table></div>`
  );
};

/**
 * PI view. Demographic attributes the corpus never ingested render as
 * "not provided" rather than being invented or hidden.
 */
export const renderPiTable = (payload: PisPayload): string => {
  const rows = payload.pis.map((pi) => {
    const career = pi.career_age === null ? "not provided" : String(pi.career_age);
    return (
      `<tr data-pi="${escapeXml(pi.researcher_id)}">` +
      `<td>${escapeXml(pi.name)}</td>` +
      `<td>${pi.h_index}</td><td>${pi.productivity}</td>` +
      `<td>${fmt(pi.avg_log_c10)}</td><td>${career}</td></tr>`
    );
  });
  const scope = payload.field === null ? "all fields" : payload.field;
  return (
    `<div class="pi-view" data-field="${escapeXml(scope)}" ` +
    `data-rank-by="${payload.rank_by}">` +
    `<table><thead><tr><th>PI</th><th>h-index</th><th>papers</th>` +
    `<th>avg log c10</th><th>career age</th></tr></thead>` +
    `<tbody>${rows.join("")}</tbody></table></div>`
  );
};

/**
 * Impact-type selector bars: filtered mean vs corpus baseline per type.
 * Bars scale against the largest value on display; a tick marks the
 * baseline so at-a-glance deviation reads left/right of it.
 */
export const renderImpactTypeBars = (
  payload: ImpactTypesPayload,
  selectedType: string | null,
): string => {
  const peak = Math.max(
    ...payload.types.flatMap((t) => [t.mean ?? 0, t.baseline ?? 0]),
    1e-9,
  );
  const rows = payload.types.map((row, i) => {
    const y = i * 26;
    const cls = row.impact_type === selectedType ? "type-row selected" : "type-row";
    if (row.mean === null || row.baseline === null) {
      return (
        `<g class="${cls}" data-impact-type="${escapeXml(row.impact_type)}" ` +
        `transform="translate(0 ${y})">` +
        `<text x="0" y="14" font-size="10">${escapeXml(row.impact_type)}</text>` +
        `<text x="170" y="14" font-size="9" fill="#999999">no data</text></g>`
      );
    }
    const barW = (row.mean / peak) * BAR_W;
    const tickX = 170 + (row.baseline / peak) * BAR_W;
    return (
      `<g class="${cls}" data-impact-type="${escapeXml(row.impact_type)}" ` +
      `transform="translate(0 ${y})">` +
      `<text x="0" y="14" font-size="10">${escapeXml(row.impact_type)}</text>` +
      `<rect x="170" y="4" width="${fmt(barW)}" height="14" ` +
      `fill="${hueFor(row.impact_type)}"/>` +
      `<line class="baseline-tick" x1="${fmt(tickX)}" x2="${fmt(tickX)}" ` +
      `y1="0" y2="22" stroke="#333333"/></g>`
    );
  });
  const height = payload.types.length * 26;
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" class="impact-type-bars" ` +
    `data-mode="${payload.mode}" viewBox="0 0 360 ${height}">\n` +
    `${rows.join("\n")}\n</svg>`
  );
};

/** Entity charts: horizontal count bars for one doc type x dimension. */
export const renderEntityChart = (payload: EntityDistributionPayload): string => {
  const peak = Math.max(...payload.entries.map((e) => e.count), 1);
  const rows = payload.entries.map((entry, i) => {
    const y = i * 20;
    const barW = (entry.count / peak) * BAR_W;
    return (
      `<g class="entity-row" data-entity="${escapeXml(entry.value)}" ` +
      `transform="translate(0 ${y})">` +
      `<text x="0" y="12" font-size="9">${escapeXml(entry.value)}</text>` +
      `<rect x="140" y="3" width="${fmt(barW)}" height="12" ` +
      `fill="${hueFor(payload.doc_type)}"/>` +
      `<text x="${fmt(142 + barW)}" y="12" font-size="9">${entry.count}</text></g>`
    );
  });
  const height = Math.max(payload.entries.length, 1) * 20;
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" class="entity-chart" ` +
    `data-doc-type="${payload.doc_type}" data-dimension="${payload.dimension}" ` +
    `viewBox="0 0 340 ${height}">\n${rows.join("\n")}\n</svg>`
  );
};

/** Prediction panel: per-topic high-score counts plus the PI investment list. */
export const renderPredictionPanel = (payload: PredictionsPayload): string => {
  const counts = Object.entries(payload.high_counts)
    .map(
      ([topic, n]) =>
        `<li data-topic="${escapeXml(topic)}">${escapeXml(topic)}: ` +
        `<b>${n}</b> high-scoring of ${payload.recent_grants} recent</li>`,
    )
    .join("");
  const pis = payload.ranked_pis
    .map(
      (row) =>
        `<li data-pi="${escapeXml(row.researcher_id)}">` +
        `${escapeXml(row.researcher_id)} (${fmt(row.value)})</li>`,
    )
    .join("");
  return (
    `<div class="prediction-panel" data-impact-type="${escapeXml(payload.impact_type)}" ` +
    `data-threshold="${payload.threshold}">` +
    `<ul class="high-counts">${counts}</ul>` +
    `<h4>PIs worth investment</h4><ol class="pi-investment">${pis}</ol></div>`
  );
};

/** Fixed legend of dimension families in their documented display order. */
export const renderDimensionLegend = (): string => {
  const items = DIMENSION_ORDER.map(
    (family) =>
      `<li class="legend-item" data-family="${family}">` +
      `<span class="swatch" style="background:${hueFor(family)}"></span>` +
      `${family}</li>`,
  );
  return `<ul class="dimension-legend">${items.join("")}</ul>`;
};
