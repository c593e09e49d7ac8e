/** Hover tooltip for aggregate boxes: widget id, count, last timestamp. */
import type { TooltipModel } from "./types.js";

export class Tooltip {
  readonly element: HTMLDivElement;

  constructor(parent: HTMLElement) {
    this.element = document.createElement("div");
    this.element.className = "superwidget-tooltip";
    this.element.setAttribute("hidden", "hidden");
    parent.append(this.element);
  }

  show(model: TooltipModel, x: number, y: number): void {
    while (this.element.firstChild) this.element.removeChild(this.element.firstChild);
    const title = document.createElement("div");
    title.className = "tooltip-id";
    title.textContent = model.widget_id;
    const count = document.createElement("div");
    count.textContent = `interactions: ${model.count}`;
    this.element.append(title, count);
    if (model.last_wall_time !== null) {
      const last = document.createElement("div");
      last.textContent = `last: ${new Date(model.last_wall_time).toISOString()}`;
      this.element.append(last);
    }
    this.element.style.left = `${x + 12}px`;
    this.element.style.top = `${y + 12}px`;
    this.element.removeAttribute("hidden");
  }

  hide(): void {
    this.element.setAttribute("hidden", "hidden");
  }
}
