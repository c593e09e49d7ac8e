/** The SuperWidget: aggregate overview boxes plus the temporal Gantt popover.
 *
 * Geometry arrives fully computed from the service; this module only paints
 * rectangles, routes clicks (box -> navigate, bar -> restore), and shows the
 * hover tooltip.
 */
import { Tooltip } from "./tooltip.js";
import type { AggregateBoxModel, TemporalLayoutModel } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const ROW_HEIGHT = 26;
const LABEL_GUTTER = 110;

export interface SuperWidgetCallbacks {
  onNavigate(widgetId: string): void;
  onRestoreBar(eventSeq: number): void;
}

export class SuperWidget {
  readonly element: HTMLElement;
  readonly tooltip: Tooltip;
  private readonly aggregateSvg: SVGSVGElement;
  private readonly popover: HTMLDivElement;
  private readonly temporalSvg: SVGSVGElement;
  private readonly toggleButton: HTMLButtonElement;

  constructor(
    private readonly callbacks: SuperWidgetCallbacks,
    private readonly width = 720,
  ) {
    this.element = document.createElement("section");
    this.element.className = "superwidget";

    const header = document.createElement("div");
    header.className = "superwidget-header";
    const title = document.createElement("span");
    title.className = "superwidget-title";
    title.textContent = "Session provenance";
    this.toggleButton = document.createElement("button");
    this.toggleButton.type = "button";
    this.toggleButton.className = "temporal-toggle";
    this.toggleButton.textContent = "History";
    this.toggleButton.addEventListener("click", () => this.toggleTemporal());
    header.append(title, this.toggleButton);

    this.aggregateSvg = document.createElementNS(SVG_NS, "svg");
    this.aggregateSvg.setAttribute("class", "aggregate-view");
    this.aggregateSvg.setAttribute("width", String(this.width));
    this.aggregateSvg.setAttribute("height", "64");

    this.popover = document.createElement("div");
    this.popover.className = "temporal-popover";
    this.popover.setAttribute("hidden", "hidden");
    this.temporalSvg = document.createElementNS(SVG_NS, "svg");
    this.temporalSvg.setAttribute("class", "temporal-view");
    this.popover.append(this.temporalSvg);

    this.element.append(header, this.aggregateSvg, this.popover);
    this.tooltip = new Tooltip(this.element);
  }

  temporalOpen(): boolean {
    return !this.popover.hasAttribute("hidden");
  }

  toggleTemporal(open?: boolean): void {
    const next = open === undefined ? !this.temporalOpen() : open;
    if (next) this.popover.removeAttribute("hidden");
    else this.popover.setAttribute("hidden", "hidden");
  }

  renderAggregate(boxes: AggregateBoxModel[]): void {
    while (this.aggregateSvg.firstChild) {
      this.aggregateSvg.removeChild(this.aggregateSvg.firstChild);
    }
    let maxBottom = 64;
    for (const box of boxes) {
      maxBottom = Math.max(maxBottom, box.y + box.side);
      const rect = document.createElementNS(SVG_NS, "rect");
      rect.setAttribute("x", String(box.x));
      rect.setAttribute("y", String(box.y));
      rect.setAttribute("width", String(box.side));
      rect.setAttribute("height", String(box.side));
      rect.setAttribute("rx", "3");
      rect.setAttribute("fill", box.filled ? box.color : "none");
      rect.setAttribute("stroke", box.color);
      rect.setAttribute("stroke-width", "1.5");
      rect.dataset.widgetId = box.widget_id;
      rect.dataset.order = String(box.order);
      rect.dataset.filled = String(box.filled);
      rect.addEventListener("click", () => this.callbacks.onNavigate(box.widget_id));
      rect.addEventListener("mouseenter", (event) => {
        this.tooltip.show(box.tooltip, event.offsetX ?? box.x, event.offsetY ?? box.y);
      });
      rect.addEventListener("mouseleave", () => this.tooltip.hide());
      this.aggregateSvg.append(rect);
    }
    this.aggregateSvg.setAttribute("height", String(maxBottom + 8));
  }

  renderTemporal(layout: TemporalLayoutModel): void {
    while (this.temporalSvg.firstChild) {
      this.temporalSvg.removeChild(this.temporalSvg.firstChild);
    }
    const hasMarkers = layout.bars.some((bar) => bar.row === layout.restore_row);
    const labels = hasMarkers ? [...layout.rows, "restore"] : [...layout.rows];
    const totalRows = Math.max(labels.length, 1);
    const height = totalRows * ROW_HEIGHT;
    this.temporalSvg.setAttribute("width", String(this.width));
    this.temporalSvg.setAttribute("height", String(height));

    labels.forEach((label, row) => {
      const text = document.createElementNS(SVG_NS, "text");
      text.setAttribute("x", "4");
      text.setAttribute("y", String((row + 0.7) * ROW_HEIGHT));
      text.setAttribute("class", "temporal-row-label");
      text.textContent = label;
      this.temporalSvg.append(text);
    });

    const span = Math.max(...layout.bars.map((bar) => bar.end), 1);
    const xScale = (value: number) =>
      LABEL_GUTTER + (value / span) * (this.width - LABEL_GUTTER - 8);
    for (const bar of layout.bars) {
      const rect = document.createElementNS(SVG_NS, "rect");
      const x = xScale(bar.start);
      rect.setAttribute("x", String(x));
      rect.setAttribute("y", String(bar.row * ROW_HEIGHT + 4));
      rect.setAttribute("width", String(Math.max(xScale(bar.end) - x, 1)));
      rect.setAttribute("height", String(ROW_HEIGHT - 8));
      rect.setAttribute("fill", bar.color);
      rect.dataset.eventSeq = String(bar.event_seq);
      rect.dataset.widgetId = bar.widget_id;
      rect.addEventListener("click", () => this.callbacks.onRestoreBar(bar.event_seq));
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent =
        bar.widget_id === ""
          ? `restore (event ${bar.event_seq})`
          : `${bar.widget_id} (event ${bar.event_seq})`;
      rect.append(title);
      this.temporalSvg.append(rect);
    }
  }
}
