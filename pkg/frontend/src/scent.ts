/** Render scent bars (server-computed geometry) into an SVG overlay. */
import type { ScentBarModel } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export function renderScentBars(
  svg: SVGSVGElement,
  bars: ScentBarModel[],
  width: number,
  height: number,
): void {
  while (svg.firstChild) svg.removeChild(svg.firstChild);
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  if (bars.length === 0) return;
  const slot = height / bars.length;
  for (const bar of bars) {
    const rect = document.createElementNS(SVG_NS, "rect");
    rect.setAttribute("x", "0");
    rect.setAttribute("y", String(bar.offset));
    rect.setAttribute("width", String(bar.length));
    rect.setAttribute("height", String(Math.max(slot - 1, 1)));
    rect.setAttribute("fill", bar.color);
    rect.dataset.key = bar.key;
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = bar.key;
    rect.append(title);
    svg.append(rect);
  }
}
