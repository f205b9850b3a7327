/**
 * Browser bootstrap: mount the coordinator onto the static page and wire
 * DOM events to actions. Everything below the event handlers is the same
 * code the tests drive headlessly.
 */

import { Coordinator } from "./app.js";
import { renderDimensionLegend } from "./render/charts.js";
import type { ViewName } from "./state.js";

const VIEW_MOUNTS: Record<ViewName, string> = {
  grants: "view-query",
  fields: "view-grant-bubbles",
  pis: "view-pis",
  landscape: "view-landscape",
  impactTypes: "view-impact-types",
  entities: "view-entities",
  keywords: "view-keywords",
  predictions: "view-predictions",
};

const mount = (view: ViewName, markup: string): void => {
  const host = document.getElementById(VIEW_MOUNTS[view]);
  if (host !== null) host.innerHTML = markup;
};

const coordinator = new Coordinator(
  (url) => fetch(url),
  mount,
  window.location.origin,
);

const wire = (): void => {
  const legend = document.getElementById("legend");
  if (legend !== null) legend.innerHTML = renderDimensionLegend();

  document.getElementById("mode-select")?.addEventListener("change", (e) => {
    const mode = (e.target as HTMLSelectElement).value;
    void coordinator.dispatch({
      kind: "mode-switch",
      mode: mode as "direct" | "broad" | "prediction",
    });
  });
  document.getElementById("threshold")?.addEventListener("change", (e) => {
    void coordinator.dispatch({
      kind: "threshold-change",
      threshold: Number((e.target as HTMLInputElement).value),
    });
  });
  document.getElementById("funder")?.addEventListener("change", (e) => {
    const raw = (e.target as HTMLInputElement).value.trim();
    void coordinator.dispatch({
      kind: "filter-change",
      patch: { funderOrg: raw === "" ? null : raw },
    });
  });

  // Field bubbles, glyphs, and impact-type rows are re-rendered markup,
  // so use one delegated listener per concern instead of per-element.
  document.addEventListener("click", (e) => {
    const target = e.target as Element;
    const bubble = target.closest(".field-bubble");
    if (bubble !== null) {
      void coordinator.dispatch({
        kind: "field-select",
        field: bubble.getAttribute("data-field"),
      });
      return;
    }
    const typeRow = target.closest(".type-row");
    if (typeRow !== null) {
      void coordinator.dispatch({
        kind: "impact-type-toggle",
        impactType: typeRow.getAttribute("data-impact-type"),
      });
      return;
    }
    const glyph = target.closest(".glyph");
    if (glyph !== null) {
      void coordinator.dispatch({
        kind: "glyph-select",
        nodeId: glyph.getAttribute("data-node"),
      });
    }
  });
  document.addEventListener("mouseover", (e) => {
    const glyph = (e.target as Element).closest(".glyph, .impact-node");
    if (glyph === null) return;
    const node = glyph.getAttribute("data-node");
    if (node !== null) {
      void coordinator.dispatch({ kind: "glyph-hover", topicId: node });
    }
  });
};

wire();
void coordinator.boot();
