/** Wires the controls, the SuperWidget, and the provenance service together.
 *
 * Every control commit posts one event and repaints both views from the
 * response (the mutation response carries the fresh snapshot, so there is no
 * polling). Applying a restore StateMap goes through setValue and therefore
 * records nothing.
 */
import type { ProvenanceApi } from "./api.js";
import { SCENT_HEIGHT, SCENT_WIDTH, buildControl } from "./controls.js";
import type { ControlHandle } from "./controls.js";
import { SuperWidget } from "./superwidget.js";
import type { SnapshotModel, ValueModel, WidgetSpec } from "./types.js";

export const DEMO_WIDGETS: WidgetSpec[] = [
  {
    id: "region",
    kind: "radio-group",
    label: "Region",
    domain: { type: "options", options: ["north", "south", "east", "west"] },
    initial_value: { type: "selection", selected: ["north"] },
  },
  {
    id: "categories",
    kind: "checkbox-group",
    label: "Categories",
    domain: { type: "options", options: ["food", "tech", "travel", "books"] },
    initial_value: { type: "selection", selected: [] },
  },
  {
    id: "price",
    kind: "single-slider",
    label: "Max price",
    domain: { type: "numeric", low: 0, high: 500 },
    initial_value: { type: "numeric", value: 250 },
  },
  {
    id: "years",
    kind: "range-slider",
    label: "Year range",
    domain: { type: "numeric", low: 2000, high: 2026 },
    initial_value: { type: "range", low: 2005, high: 2020 },
  },
  {
    id: "metric",
    kind: "single-select",
    label: "Metric",
    domain: { type: "options", options: ["revenue", "units", "margin"] },
    initial_value: { type: "selection", selected: ["revenue"] },
  },
  {
    id: "tags",
    kind: "multi-select",
    label: "Tags",
    domain: { type: "options", options: ["new", "sale", "eco", "import", "local"] },
    initial_value: { type: "selection", selected: [] },
  },
  {
    id: "search",
    kind: "text-input",
    label: "Search",
    domain: null,
    initial_value: { type: "text", value: "" },
  },
];

export interface AppOptions {
  api: ProvenanceApi;
  root: HTMLElement;
  widgets?: WidgetSpec[];
  viewportWidth?: number;
  viewportHeight?: number;
  coalescingWindowMs?: number;
}

export class App {
  readonly controls = new Map<string, ControlHandle>();
  superWidget!: SuperWidget;
  sessionId!: string;
  snapshot: SnapshotModel | null = null;
  private refreshing: Promise<void> | null = null;

  private constructor(private readonly options: AppOptions) {}

  static async boot(options: AppOptions): Promise<App> {
    const app = new App(options);
    try {
      await app.initialize();
    } catch (error) {
      app.showErrorBanner(error);
      throw error;
    }
    return app;
  }

  private async initialize(): Promise<void> {
    const { api, root } = this.options;
    this.sessionId = await api.createSession({
      coalescing_window_ms: this.options.coalescingWindowMs ?? 300,
    });

    this.superWidget = new SuperWidget({
      onNavigate: (widgetId) => void this.navigateTo(widgetId),
      onRestoreBar: (eventSeq) => void this.applyRestore(eventSeq),
    });
    root.append(this.superWidget.element);

    const panel = document.createElement("div");
    panel.className = "controls-panel";
    root.append(panel);

    for (const spec of this.options.widgets ?? DEMO_WIDGETS) {
      const widget = await api.registerWidget(this.sessionId, spec);
      const control = buildControl(widget, {
        onCommit: (widgetId, value) => void this.commit(widgetId, value),
        onToggleScent: (widgetId, active) => {
          if (active) void this.refreshScent(widgetId);
        },
      });
      this.controls.set(widget.id, control);
      panel.append(control.element);
    }
    await this.refreshViews();
  }

  async commit(widgetId: string, value: ValueModel): Promise<void> {
    const response = await this.options.api.recordEvent(
      this.sessionId,
      widgetId,
      value,
    );
    this.snapshot = response.snapshot;
    await this.refreshViews();
  }

  async applyRestore(eventSeq: number): Promise<void> {
    const response = await this.options.api.restore(this.sessionId, eventSeq);
    for (const [widgetId, value] of Object.entries(response.state)) {
      this.controls.get(widgetId)?.setValue(value);
    }
    this.snapshot = response.snapshot;
    await this.refreshViews();
  }

  async navigateTo(widgetId: string): Promise<void> {
    await this.options.api.navigate(this.sessionId, widgetId);
    const control = this.controls.get(widgetId);
    if (!control) return;
    control.focusTarget.scrollIntoView?.({ behavior: "smooth", block: "center" });
    control.focusTarget.focus?.();
    control.element.classList.add("navigated");
    setTimeout(() => control.element.classList.remove("navigated"), 1200);
  }

  async refreshViews(): Promise<void> {
    // serialize refreshes so a slow layout fetch never paints stale geometry
    const previous = (this.refreshing ?? Promise.resolve()).catch(() => undefined);
    const task = previous.then(async () => {
      const { api } = this.options;
      const [boxes, temporal] = await Promise.all([
        api.aggregateLayout(
          this.sessionId,
          this.options.viewportWidth ?? 720,
          this.options.viewportHeight ?? 200,
        ),
        api.temporalLayout(this.sessionId),
      ]);
      this.superWidget.renderAggregate(boxes);
      this.superWidget.renderTemporal(temporal);
      for (const [widgetId, control] of this.controls) {
        if (control.scentActive()) {
          await this.refreshScent(widgetId);
        }
      }
    });
    this.refreshing = task;
    await task;
  }

  async refreshScent(widgetId: string): Promise<void> {
    const bars = await this.options.api.scent(
      this.sessionId,
      widgetId,
      SCENT_WIDTH,
      SCENT_HEIGHT,
    );
    this.controls.get(widgetId)?.setScentBars(bars);
  }

  async exportDocument(): Promise<unknown> {
    return this.options.api.exportSession(this.sessionId);
  }

  private showErrorBanner(error: unknown): void {
    const banner = document.createElement("div");
    banner.className = "error-banner";
    banner.textContent = `failed to start provenance session: ${String(error)}`;
    this.options.root.prepend(banner);
  }
}
