import { describe, expect, it } from "vitest";

import { Coordinator } from "../src/app.js";
import {
  type Action,
  initialState,
  paramsFor,
  reduce,
  refetchFor,
} from "../src/state.js";
import type { PisPayload, PredictionsPayload } from "../src/types.js";
import { FakeTransport, makeGlyph, makeScene } from "./helpers.js";

const PIS: Record<string, PisPayload> = {
  all: {
    rank_by: "h_index",
    field: null,
    pis: [
      {
        researcher_id: "r1",
        name: "Ada",
        h_index: 9,
        productivity: 14,
        avg_log_c10: 1.2,
        career_age: 21,
        impact: { direct: {}, broad: {} },
      },
      {
        researcher_id: "r2",
        name: "Grace",
        h_index: 7,
        productivity: 11,
        avg_log_c10: 1.0,
        career_age: null,
        impact: { direct: {}, broad: {} },
      },
    ],
  },
  Computing: {
    rank_by: "h_index",
    field: "Computing",
    pis: [
      {
        researcher_id: "r2",
        name: "Grace",
        h_index: 7,
        productivity: 11,
        avg_log_c10: 1.0,
        career_age: null,
        impact: { direct: {}, broad: {} },
      },
    ],
  },
};

const predictions = (threshold: number): PredictionsPayload => ({
  impact_type: "direct_patent",
  threshold,
  topics: ["Physics"],
  test_auc: { Physics: 1.0 },
  recent_grants: 100,
  scores: [],
  high_counts: { Physics: threshold > 0.5 ? 40 : 60 },
  high_score_grants: [],
  ranked_pis: [{ researcher_id: "r1", value: 9 }],
});

const thresholdOf = (url: string): number => {
  const match = url.match(/threshold=([0-9.]+)/);
  return match === null ? 0.5 : Number(match[1]);
};

/** Transport with enough routes for any dispatch in these tests. */
const standardTransport = (): FakeTransport => {
  const t = new FakeTransport();
  t.respond("/api/grants", { count: 0, grants: [] });
  t.respond("/api/fields", { fields: [] });
  t.respond("/api/impact-types", { mode: "broad", grant_count: 0, types: [] });
  t.respond("/api/entity-distribution", {
    doc_type: "patent",
    dimension: "assignee",
    entries: [],
  });
  t.respond("/api/pis", (url: string) =>
    url.includes("field=Computing") ? PIS.Computing : PIS.all,
  );
  t.respond("/api/landscape", (url: string) => {
    if (!url.includes("mode=prediction")) return makeScene([makeGlyph()]);
    const rings = thresholdOf(url) > 0.5 ? [12, 0, 0] : [12, 8, 0];
    return makeScene(
      rings.map((r, i) =>
        makeGlyph({
          node_id: `t${i}`,
          mode: "prediction",
          prediction_ring_radius: r,
        }),
      ),
      undefined,
      "prediction",
    );
  });
  t.respond("/api/predictions", (url: string) => predictions(thresholdOf(url)));
  return t;
};

describe("action to refetch mapping", () => {
  const at = (action: Action) => refetchFor(action, reduce(initialState(), action));

  it("is deterministic per action facet", () => {
    expect(at({ kind: "filter-change", patch: { funderOrg: "NSF-X" } })).toEqual(
      ["grants", "impactTypes"],
    );
    expect(at({ kind: "field-select", field: "Computing" })).toEqual([
      "grants",
      "pis",
      "impactTypes",
      "landscape",
    ]);
    expect(at({ kind: "mode-switch", mode: "direct" })).toEqual([
      "impactTypes",
      "landscape",
    ]);
    expect(at({ kind: "mode-switch", mode: "prediction" })).toEqual([
      "landscape",
      "predictions",
    ]);
    expect(at({ kind: "threshold-change", threshold: 0.9 })).toEqual([
      "landscape",
    ]);
    expect(at({ kind: "glyph-select", nodeId: "t0" })).toEqual([]);
    expect(at({ kind: "glyph-hover", topicId: "grant:Computing" })).toEqual([
      "keywords",
    ]);
    expect(at({ kind: "glyph-hover", topicId: null })).toEqual([]);
  });

  it("narrows entity charts only for charted doc families", () => {
    expect(
      at({ kind: "impact-type-toggle", impactType: "broad_patent" }),
    ).toEqual(["landscape", "entities"]);
    expect(
      at({ kind: "impact-type-toggle", impactType: "direct_paper" }),
    ).toEqual(["landscape"]);
  });
});

describe("reducer", () => {
  it("changes exactly the acted-on facet", () => {
    const base = initialState();
    const after = reduce(base, { kind: "field-select", field: "Computing" });
    expect(after.field).toBe("Computing");
    expect({ ...after, field: base.field }).toEqual(base);
  });

  it("merges filter patches without clobbering siblings", () => {
    let state = initialState();
    state = reduce(state, { kind: "filter-change", patch: { funderOrg: "NSF-X" } });
    state = reduce(state, { kind: "filter-change", patch: { yearMin: 2005 } });
    expect(state.filters.funderOrg).toBe("NSF-X");
    expect(state.filters.yearMin).toBe(2005);
  });
});

describe("request parameters", () => {
  it("threads the full filter set into the grant query", () => {
    let state = initialState();
    state = reduce(state, {
      kind: "filter-change",
      patch: { funderOrg: "NSF-X", yearMin: 2005, yearMax: 2015, amountMin: 1e5 },
    });
    state = reduce(state, { kind: "field-select", field: "Computing" });
    expect(paramsFor("grants", state)).toEqual({
      funder_org: "NSF-X",
      field: "Computing",
      year_min: 2005,
      year_max: 2015,
      amount_min: 1e5,
      amount_max: null,
    });
  });

  it("never sends the paper family to a broad-mode landscape", () => {
    let state = initialState();
    state = reduce(state, {
      kind: "impact-type-toggle",
      impactType: "direct_paper",
    });
    expect(paramsFor("landscape", state).types).toBeNull();
    state = reduce(state, { kind: "mode-switch", mode: "direct" });
    expect(paramsFor("landscape", state).types).toBe("paper");
  });

  it("sends the threshold only in prediction mode", () => {
    let state = initialState();
    expect(paramsFor("landscape", state).threshold).toBeNull();
    state = reduce(state, { kind: "mode-switch", mode: "prediction" });
    state = reduce(state, { kind: "threshold-change", threshold: 0.9 });
    expect(paramsFor("landscape", state).threshold).toBe(0.9);
  });
});

describe("coordinated views", () => {
  it("updates the PI view within one fetch cycle of a field selection", async () => {
    const transport = standardTransport();
    const c = new Coordinator(transport.fetch);
    await c.dispatch({ kind: "field-select", field: "Computing" });

    const pisCalls = transport.log.filter((u) => u.includes("/api/pis"));
    expect(pisCalls).toHaveLength(1);
    expect(pisCalls[0]).toContain("field=Computing");
    expect(c.scenes.pis).toContain('data-field="Computing"');
    expect(c.scenes.pis).toContain("Grace");
    expect(c.scenes.pis).not.toContain("Ada");
    // absent demographics say so instead of vanishing
    expect(c.scenes.pis).toContain("not provided");
  });

  it("drops stale responses when actions overlap in flight", async () => {
    const transport = standardTransport();
    const c = new Coordinator(transport.fetch);
    await c.dispatch({ kind: "mode-switch", mode: "prediction" });

    transport.deferAll = true;
    const first = c.dispatch({ kind: "threshold-change", threshold: 0.2 });
    const second = c.dispatch({ kind: "threshold-change", threshold: 0.9 });
    expect(transport.pendingCount).toBe(4); // 2 views x 2 dispatches

    // the newer request pair lands first; the older resolves late + stale
    transport.release(2);
    transport.release(3);
    await second;
    expect(c.scenes.predictions).toContain('data-threshold="0.9"');

    transport.release(0);
    transport.release(1);
    await first;
    expect(c.scenes.predictions).toContain('data-threshold="0.9"');
    expect(c.scenes.predictions).not.toContain('data-threshold="0.2"');
  });

  it("weakly decreases purple-ring count as the threshold rises", async () => {
    const transport = standardTransport();
    const c = new Coordinator(transport.fetch);
    await c.dispatch({ kind: "mode-switch", mode: "prediction" });
    const ringsAtHalf = (c.scenes.landscape!.match(/prediction-ring/g) ?? [])
      .length;

    await c.dispatch({ kind: "threshold-change", threshold: 0.9 });
    const ringsAtNine = (c.scenes.landscape!.match(/prediction-ring/g) ?? [])
      .length;
    expect(ringsAtHalf).toBe(2);
    expect(ringsAtNine).toBe(1);
    expect(ringsAtNine).toBeLessThanOrEqual(ringsAtHalf);
  });

  it("shows an error banner on a malformed payload instead of crashing", async () => {
    const transport = standardTransport();
    transport.respond("/api/landscape", { snapshot_id: "x" }); // missing keys
    const c = new Coordinator(transport.fetch);
    await c.dispatch({ kind: "mode-switch", mode: "direct" });
    expect(c.scenes.landscape).toContain("error-banner");
    expect(c.scenes.landscape).toContain("missing required key");
    // the sibling view in the same refetch set still rendered
    expect(c.scenes.impactTypes).toContain("impact-type-bars");
  });

  it("surfaces API validation errors in the banner", async () => {
    const transport = standardTransport();
    const c = new Coordinator(transport.fetch);
    await c.dispatch({ kind: "glyph-hover", topicId: "grant:Alchemy" });
    expect(c.scenes.keywords).toContain("error-banner");
    expect(c.scenes.keywords).toContain("404");
  });

  it("clears the keyword overlay when the hover ends", async () => {
    const transport = standardTransport();
    transport.respond("/api/topics/grant:Computing/keywords", {
      topic_id: "grant:Computing",
      count: 1,
      keywords: [{ token: "deep", total_freq: 2, yearly: { "2010": 2 } }],
    });
    const c = new Coordinator(transport.fetch);
    await c.dispatch({ kind: "glyph-hover", topicId: "grant:Computing" });
    expect(c.scenes.keywords).toContain("deep");
    await c.dispatch({ kind: "glyph-hover", topicId: null });
    expect(c.scenes.keywords).toBe("");
  });

  it("boots all six coordinated views", async () => {
    const transport = standardTransport();
    const c = new Coordinator(transport.fetch);
    await c.boot();
    for (const view of [
      "grants",
      "fields",
      "pis",
      "landscape",
      "impactTypes",
      "entities",
    ] as const) {
      expect(c.scenes[view], view).toBeDefined();
      expect(c.scenes[view]).not.toContain("error-banner");
    }
  });
});
