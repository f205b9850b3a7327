/**
 * Keyword hover card: one row per keyword, font size proportional to
 * total_freq, with a small per-word sparkline of its yearly series.
 */

import type { KeywordRow, KeywordsPayload } from "../types.js";
import { escapeXml } from "./landscape.js";

const FONT_MIN = 10;
const FONT_MAX = 26;
const SPARK_W = 60;
const SPARK_H = 16;
const ROW_H = 30;

const fmt = (value: number): string => {
  const s = value.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
};

/**
 * Polyline points for one word's yearly counts, x spread over the year
 * span and y inverted so larger counts sit higher. A single year
 * degenerates to a centered point.
 */
export const sparklinePoints = (yearly: Record<string, number>): string => {
  const years = Object.keys(yearly)
    .map(Number)
    .sort((a, b) => a - b);
  if (years.length === 0) return "";
  const peak = Math.max(...years.map((y) => yearly[String(y)]), 1);
  const span = years[years.length - 1] - years[0];
  return years
    .map((year) => {
      const x = span === 0 ? SPARK_W / 2 : ((year - years[0]) / span) * SPARK_W;
      const y = SPARK_H - (yearly[String(year)] / peak) * SPARK_H;
      return `${fmt(x)},${fmt(y)}`;
    })
    .join(" ");
};

const renderRow = (row: KeywordRow, index: number, peakFreq: number): string => {
  const size = FONT_MIN + (FONT_MAX - FONT_MIN) * (row.total_freq / peakFreq);
  const y = index * ROW_H + ROW_H / 2;
  const points = sparklinePoints(row.yearly);
  const spark =
    points === ""
      ? ""
      : `<polyline class="sparkline" points="${points}" fill="none" ` +
        `stroke="#4e79a7" stroke-width="1.5" ` +
        `transform="translate(150 ${fmt(y - SPARK_H / 2)})"/>`;
  return (
    `<g class="word-row" data-token="${escapeXml(row.token)}">` +
    `<text x="0" y="${fmt(y + 4)}" font-size="${fmt(size)}">` +
    `${escapeXml(row.token)}</text>` +
    `<text x="130" y="${fmt(y + 4)}" font-size="9" fill="#777777">` +
    `${row.total_freq}</text>${spark}</g>`
  );
};

/** Render the keyword payload as a compact word-list cloud. */
export const renderWordCloud = (payload: KeywordsPayload): string => {
  const height = Math.max(payload.keywords.length, 1) * ROW_H;
  const peak = Math.max(...payload.keywords.map((k) => k.total_freq), 1);
  const rows = payload.keywords.map((row, i) => renderRow(row, i, peak));
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" class="word-cloud" ` +
    `viewBox="0 0 220 ${height}" data-topic="${escapeXml(payload.topic_id)}">\n` +
    `${rows.join("\n")}\n</svg>`
  );
};
