/** Shared fakes and payload builders for the UI tests. */

import type { Transport, TransportResponse } from "../src/api.js";
import type {
  BeltSpec,
  GlyphSpec,
  LandscapeNode,
  LandscapePayload,
} from "../src/types.js";

/**
 * Canned-response transport. Routes are matched by "path before the
 * query string"; every request is logged with its full URL. Responses
 * can be deferred so tests can resolve them out of order.
 */
export class FakeTransport {
  readonly log: string[] = [];
  private readonly routes = new Map<string, (url: string) => unknown>();
  private readonly pending: Array<{
    url: string;
    resolve: (r: TransportResponse) => void;
  }> = [];
  deferAll = false;

  respond(path: string, payload: unknown | ((url: string) => unknown)): void {
    this.routes.set(
      path,
      typeof payload === "function"
        ? (payload as (url: string) => unknown)
        : () => payload,
    );
  }

  private lookup(url: string): TransportResponse {
    const path = decodeURIComponent(url.split("?")[0]);
    const handler = this.routes.get(path);
    if (handler === undefined) {
      return {
        status: 404,
        json: () => Promise.resolve({ detail: `no route for ${path}` }),
      };
    }
    const body = handler(url);
    return { status: 200, json: () => Promise.resolve(body) };
  }

  fetch: Transport = (url: string) => {
    this.log.push(url);
    if (!this.deferAll) return Promise.resolve(this.lookup(url));
    return new Promise((resolve) => this.pending.push({ url, resolve }));
  };

  /** Resolve the i-th deferred request (insertion order). */
  release(index: number): void {
    const entry = this.pending[index];
    entry.resolve(this.lookup(entry.url));
  }

  get pendingCount(): number {
    return this.pending.length;
  }
}

export const makeBelt = (overrides: Partial<BeltSpec> = {}): BeltSpec => ({
  dimension: "direct_paper",
  ring: "direct",
  angle_start: 0,
  angle_end: 72,
  offset_sign: 0,
  thickness: 1,
  color_index: 0,
  defined: true,
  ...overrides,
});

export const makeGlyph = (overrides: Partial<GlyphSpec> = {}): GlyphSpec => ({
  node_id: "t0",
  mode: "historical",
  center_radius: 6,
  baseline_radii: [16, 30],
  prediction_ring_radius: null,
  belts: [],
  ...overrides,
});

export const makeNode = (
  overrides: Partial<LandscapeNode> = {},
): LandscapeNode => ({
  id: "t0",
  kind: "grant_topic",
  x: 500,
  y: 500,
  r: 20,
  ...overrides,
});

export const makeScene = (
  glyphs: GlyphSpec[],
  nodes?: LandscapeNode[],
  mode: LandscapePayload["mode"] = "broad",
): LandscapePayload => ({
  snapshot_id: "f1de0000deadbeef",
  mode,
  field: null,
  seed: 0,
  ticks: 120,
  canvas: [1000, 1000],
  center: [500, 500],
  d_max: 250,
  anchors: { grant: [500, 500], patent: [925, 500] },
  nodes:
    nodes ??
    glyphs.map((g, i) => makeNode({ id: g.node_id, x: 400 + 90 * i, y: 500 })),
  edges: [],
  glyphs,
});

/** r attributes of rendered circles bearing a given class. */
export const circleRadii = (svg: string, cls: string): number[] =>
  [...svg.matchAll(new RegExp(`<circle class="${cls}"[^/]*?r="([0-9.]+)"`, "g"))].map(
    (m) => Number(m[1]),
  );
