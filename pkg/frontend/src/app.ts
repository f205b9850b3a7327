/**
 * The coordinator: owns the single ViewState, dispatches actions,
 * refetches exactly the views each action touches, and re-renders from
 * payloads only. Fetches are tagged with a per-view monotone version;
 * a response whose version is no longer current is dropped on arrival,
 * so views never show parameters another action has already replaced.
 */

import { ApiClient, type Transport } from "./api.js";
import {
  renderEntityChart,
  renderFieldBubbles,
  renderGrantList,
  renderImpactTypeBars,
  renderPiTable,
  renderPredictionPanel,
} from "./render/charts.js";
import { renderErrorBanner, renderLandscape } from "./render/landscape.js";
import { renderWordCloud } from "./render/wordcloud.js";
import {
  type Action,
  type ViewName,
  type ViewState,
  initialState,
  paramsFor,
  reduce,
  refetchFor,
} from "./state.js";
import type {
  EntityDistributionPayload,
  FieldsPayload,
  GrantsPayload,
  ImpactTypesPayload,
  KeywordsPayload,
  LandscapePayload,
  PisPayload,
  PredictionsPayload,
} from "./types.js";
import { validatePayload } from "./validate.js";

export type SceneSink = (view: ViewName, markup: string) => void;

export class Coordinator {
  state: ViewState = initialState();
  /** Last rendered markup per view, for sinks that mount lazily. */
  readonly scenes: Partial<Record<ViewName, string>> = {};

  private readonly api: ApiClient;
  private readonly versions: Record<ViewName, number> = {
    grants: 0,
    fields: 0,
    pis: 0,
    landscape: 0,
    impactTypes: 0,
    entities: 0,
    keywords: 0,
    predictions: 0,
  };

  constructor(
    transport: Transport,
    private readonly sink: SceneSink = () => undefined,
    base = "",
  ) {
    this.api = new ApiClient(transport, base);
  }

  /** Fetch and render every view once, for initial page load. */
  async boot(): Promise<void> {
    const views: ViewName[] = [
      "grants",
      "fields",
      "pis",
      "landscape",
      "impactTypes",
      "entities",
    ];
    await Promise.all(views.map((view) => this.refresh(view)));
  }

  /**
   * Apply one action. Resolves after every refetch the action triggered
   * has either rendered or been dropped as stale -- one fetch cycle.
   */
  async dispatch(action: Action): Promise<void> {
    this.state = reduce(this.state, action);
    if (action.kind === "glyph-hover" && action.topicId === null) {
      this.show("keywords", "");
    }
    const views = refetchFor(action, this.state);
    await Promise.all(views.map((view) => this.refresh(view)));
  }

  private show(view: ViewName, markup: string): void {
    this.scenes[view] = markup;
    this.sink(view, markup);
  }

  private async refresh(view: ViewName): Promise<void> {
    const version = ++this.versions[view];
    const snapshot = this.state;
    let markup: string;
    try {
      const payload = await this.fetchPayload(view, snapshot);
      if (this.versions[view] !== version) return; // stale: a newer request owns this view
      validatePayload(view, payload);
      markup = this.renderView(view, payload, snapshot);
    } catch (error) {
      if (this.versions[view] !== version) return;
      markup = renderErrorBanner(
        error instanceof Error ? error.message : String(error),
      );
    }
    this.show(view, markup);
  }

  private fetchPayload(view: ViewName, state: ViewState): Promise<unknown> {
    const params = paramsFor(view, state);
    switch (view) {
      case "grants":
        return this.api.grants(params);
      case "fields":
        return this.api.fields(params);
      case "pis":
        return this.api.pis(params);
      case "landscape":
        return this.api.landscape(params);
      case "impactTypes":
        return this.api.impactTypes(params);
      case "entities":
        return this.api.entityDistribution(params);
      case "keywords":
        return this.api.keywords(state.hoverTopic ?? "", 40);
      case "predictions":
        return this.api.predictions(params);
    }
  }

  private renderView(view: ViewName, payload: unknown, state: ViewState): string {
    switch (view) {
      case "grants":
        return renderGrantList(payload as GrantsPayload);
      case "fields":
        return renderFieldBubbles(payload as FieldsPayload, state.field);
      case "pis":
        return renderPiTable(payload as PisPayload);
      case "landscape":
        return renderLandscape(payload as LandscapePayload, state.selectedGlyph);
      case "impactTypes":
        return renderImpactTypeBars(
          payload as ImpactTypesPayload,
          state.impactType,
        );
      case "entities":
        return renderEntityChart(payload as EntityDistributionPayload);
      case "keywords":
        return renderWordCloud(payload as KeywordsPayload);
      case "predictions":
        return renderPredictionPanel(payload as PredictionsPayload);
    }
  }
}
