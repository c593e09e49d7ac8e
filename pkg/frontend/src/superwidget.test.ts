import { beforeEach, describe, expect, it } from "vitest";

import { SuperWidget } from "./superwidget.js";
import type { SessionFixtures } from "./testing/fake-api.js";
import rawFixtures from "./fixtures/session-fixtures.json";

const fixtures = rawFixtures as unknown as SessionFixtures;

describe("SuperWidget", () => {
  let navigations: string[];
  let restores: number[];
  let widget: SuperWidget;

  beforeEach(() => {
    document.body.innerHTML = "";
    navigations = [];
    restores = [];
    widget = new SuperWidget({
      onNavigate: (id) => navigations.push(id),
      onRestoreBar: (seq) => restores.push(seq),
    });
    document.body.append(widget.element);
  });

  it("renders one box per registered widget", () => {
    widget.renderAggregate(fixtures.aggregate_by_count["0"]);
    const rects = widget.element.querySelectorAll(".aggregate-view rect");
    expect(rects).toHaveLength(Object.keys(fixtures.widgets).length);
  });

  it("unused boxes are unfilled; colors match the registry", () => {
    widget.renderAggregate(fixtures.aggregate_by_count["0"]);
    for (const rect of widget.element.querySelectorAll(".aggregate-view rect")) {
      expect(rect.getAttribute("fill")).toBe("none");
      const id = (rect as SVGRectElement).dataset.widgetId!;
      expect(rect.getAttribute("stroke")).toBe(fixtures.widgets[id].color);
    }
  });

  it("after the slider event its box is filled and first", () => {
    widget.renderAggregate(fixtures.aggregate_by_count["1"]);
    const first = widget.element.querySelector(
      '.aggregate-view rect[data-order="0"]',
    ) as SVGRectElement;
    expect(first.dataset.widgetId).toBe("price");
    expect(first.dataset.filled).toBe("true");
    expect(first.getAttribute("fill")).toBe(fixtures.widgets.price.color);
  });

  it("box click navigates to its widget", () => {
    widget.renderAggregate(fixtures.aggregate_by_count["0"]);
    const rect = widget.element.querySelector(
      '.aggregate-view rect[data-widget-id="search"]',
    ) as SVGRectElement;
    rect.dispatchEvent(new MouseEvent("click"));
    expect(navigations).toEqual(["search"]);
  });

  it("hover shows id, count and last timestamp; leave hides", () => {
    widget.renderAggregate(fixtures.aggregate_by_count["1"]);
    const rect = widget.element.querySelector(
      '.aggregate-view rect[data-widget-id="price"]',
    ) as SVGRectElement;
    rect.dispatchEvent(new MouseEvent("mouseenter"));
    const tooltip = widget.element.querySelector(".superwidget-tooltip")!;
    expect(tooltip.hasAttribute("hidden")).toBe(false);
    const box = fixtures.aggregate_by_count["1"].find((b) => b.widget_id === "price")!;
    expect(tooltip.textContent).toContain("price");
    expect(tooltip.textContent).toContain(`interactions: ${box.tooltip.count}`);
    expect(tooltip.textContent).toContain(
      new Date(box.tooltip.last_wall_time!).toISOString(),
    );
    rect.dispatchEvent(new MouseEvent("mouseleave"));
    expect(tooltip.hasAttribute("hidden")).toBe(true);
  });

  it("hovering an unused box shows count 0 and no timestamp", () => {
    widget.renderAggregate(fixtures.aggregate_by_count["0"]);
    const rect = widget.element.querySelector(
      '.aggregate-view rect[data-widget-id="tags"]',
    ) as SVGRectElement;
    rect.dispatchEvent(new MouseEvent("mouseenter"));
    const tooltip = widget.element.querySelector(".superwidget-tooltip")!;
    expect(tooltip.textContent).toContain("interactions: 0");
    expect(tooltip.textContent).not.toContain("last:");
  });

  it("renders one temporal row per widget and one bar per event", () => {
    const layout = fixtures.temporal_by_count["3"];
    widget.renderTemporal(layout);
    const labels = widget.element.querySelectorAll(".temporal-view text");
    expect(labels).toHaveLength(layout.rows.length);
    const bars = widget.element.querySelectorAll(".temporal-view rect");
    expect(bars).toHaveLength(3);
  });

  it("bar colors match their widget's registry color", () => {
    widget.renderTemporal(fixtures.temporal_by_count["3"]);
    for (const rect of widget.element.querySelectorAll(".temporal-view rect")) {
      const id = (rect as SVGRectElement).dataset.widgetId!;
      expect(rect.getAttribute("fill")).toBe(fixtures.widgets[id].color);
    }
  });

  it("restore meta-events appear as a dedicated bottom row", () => {
    widget.renderTemporal(fixtures.temporal_by_count["4"]);
    const labels = [...widget.element.querySelectorAll(".temporal-view text")].map(
      (t) => t.textContent,
    );
    expect(labels[labels.length - 1]).toBe("restore");
  });

  it("clicking a bar requests a restore to that event", () => {
    widget.renderTemporal(fixtures.temporal_by_count["3"]);
    const bar = widget.element.querySelector(
      '.temporal-view rect[data-event-seq="0"]',
    ) as SVGRectElement;
    bar.dispatchEvent(new MouseEvent("click"));
    expect(restores).toEqual([0]);
  });

  it("temporal popover toggles", () => {
    expect(widget.temporalOpen()).toBe(false);
    widget.toggleTemporal();
    expect(widget.temporalOpen()).toBe(true);
    widget.toggleTemporal();
    expect(widget.temporalOpen()).toBe(false);
  });

  it("rerendering replaces geometry instead of accumulating", () => {
    widget.renderAggregate(fixtures.aggregate_by_count["0"]);
    widget.renderAggregate(fixtures.aggregate_by_count["1"]);
    const rects = widget.element.querySelectorAll(".aggregate-view rect");
    expect(rects).toHaveLength(Object.keys(fixtures.widgets).length);
  });
});
