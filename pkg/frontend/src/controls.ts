/** The seven tracked controls, each with a colored provenance button and scent overlay.
 *
 * Commit semantics: selection controls commit on change; sliders commit on
 * release and throttled during drag (the engine coalesces drag commits);
 * text commits on Enter or blur when dirty. `setValue` updates the DOM
 * without committing, so applying a restore never feeds back into the log.
 */
import { renderScentBars } from "./scent.js";
import type { ScentBarModel, ValueModel, WidgetModel } from "./types.js";

export const SCENT_WIDTH = 160;
export const SCENT_HEIGHT = 18;
const DRAG_COMMIT_MS = 300;

export interface ControlCallbacks {
  onCommit(widgetId: string, value: ValueModel): void;
  onToggleScent(widgetId: string, active: boolean): void;
}

export interface ControlHandle {
  readonly widget: WidgetModel;
  /** Panel root (label, provenance button, control, scent overlay). */
  readonly element: HTMLElement;
  /** The focusable input element, target of click-to-navigate. */
  readonly focusTarget: HTMLElement;
  getValue(): ValueModel;
  /** Programmatic update (restore application); never commits. */
  setValue(value: ValueModel): void;
  setScentBars(bars: ScentBarModel[]): void;
  scentActive(): boolean;
  readonly provenanceButton: HTMLButtonElement;
}

function panelSkeleton(widget: WidgetModel, callbacks: ControlCallbacks) {
  const panel = document.createElement("div");
  panel.className = "widget-panel";
  panel.dataset.widgetId = widget.id;

  const header = document.createElement("div");
  header.className = "widget-header";

  const label = document.createElement("span");
  label.className = "widget-label";
  label.textContent = widget.label || widget.id;

  const button = document.createElement("button");
  button.className = "prov-button";
  button.type = "button";
  button.title = `provenance: ${widget.id}`;
  button.textContent = "◉"; // fisheye glyph
  button.style.borderColor = widget.color;
  button.style.color = widget.color;

  const scent = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  scent.setAttribute("class", "scent-overlay");
  scent.setAttribute("width", String(SCENT_WIDTH));
  scent.setAttribute("height", String(SCENT_HEIGHT));
  scent.setAttribute("hidden", "hidden");

  let active = false;
  button.addEventListener("click", () => {
    active = !active;
    if (active) {
      button.classList.add("filled");
      button.style.background = widget.color;
      scent.removeAttribute("hidden");
    } else {
      button.classList.remove("filled");
      button.style.background = "";
      scent.setAttribute("hidden", "hidden");
    }
    callbacks.onToggleScent(widget.id, active);
  });

  header.append(label, button);

  const body = document.createElement("div");
  body.className = "widget-body";

  panel.append(header, body, scent);
  return {
    panel,
    body,
    button,
    scent,
    isActive: () => active,
  };
}

function optionList(widget: WidgetModel): string[] {
  return widget.domain && widget.domain.type === "options"
    ? widget.domain.options
    : [];
}

function numericBounds(widget: WidgetModel): { low: number; high: number } {
  return widget.domain && widget.domain.type === "numeric"
    ? { low: widget.domain.low, high: widget.domain.high }
    : { low: 0, high: 100 };
}

export function buildControl(
  widget: WidgetModel,
  callbacks: ControlCallbacks,
): ControlHandle {
  switch (widget.kind) {
    case "radio-group":
      return buildChoiceGroup(widget, callbacks, "radio");
    case "checkbox-group":
      return buildChoiceGroup(widget, callbacks, "checkbox");
    case "single-slider":
      return buildSingleSlider(widget, callbacks);
    case "range-slider":
      return buildRangeSlider(widget, callbacks);
    case "single-select":
      return buildSelect(widget, callbacks, false);
    case "multi-select":
      return buildSelect(widget, callbacks, true);
    case "text-input":
      return buildTextInput(widget, callbacks);
  }
}

function makeHandle(
  widget: WidgetModel,
  skeleton: ReturnType<typeof panelSkeleton>,
  focusTarget: HTMLElement,
  getValue: () => ValueModel,
  setValue: (value: ValueModel) => void,
): ControlHandle {
  return {
    widget,
    element: skeleton.panel,
    focusTarget,
    getValue,
    setValue,
    setScentBars: (bars) =>
      renderScentBars(skeleton.scent, bars, SCENT_WIDTH, SCENT_HEIGHT),
    scentActive: skeleton.isActive,
    provenanceButton: skeleton.button,
  };
}

function buildChoiceGroup(
  widget: WidgetModel,
  callbacks: ControlCallbacks,
  inputType: "radio" | "checkbox",
): ControlHandle {
  const skeleton = panelSkeleton(widget, callbacks);
  const inputs = new Map<string, HTMLInputElement>();
  const group = document.createElement("div");
  group.className = "choice-group";
  group.tabIndex = -1;

  const initial = new Set(
    widget.initial_value.type === "selection" ? widget.initial_value.selected : [],
  );
  for (const option of optionList(widget)) {
    const wrapper = document.createElement("label");
    const input = document.createElement("input");
    input.type = inputType;
    input.name = `${inputType}-${widget.id}`;
    input.value = option;
    input.checked = initial.has(option);
    input.addEventListener("change", () => {
      callbacks.onCommit(widget.id, read());
    });
    inputs.set(option, input);
    wrapper.append(input, document.createTextNode(option));
    group.append(wrapper);
  }
  skeleton.body.append(group);

  const read = (): ValueModel => ({
    type: "selection",
    selected: [...inputs.entries()].filter(([, i]) => i.checked).map(([o]) => o),
  });
  const write = (value: ValueModel) => {
    if (value.type !== "selection") return;
    const selected = new Set(value.selected);
    for (const [option, input] of inputs) {
      input.checked = selected.has(option);
    }
  };
  return makeHandle(widget, skeleton, group, read, write);
}

function buildSingleSlider(
  widget: WidgetModel,
  callbacks: ControlCallbacks,
): ControlHandle {
  const skeleton = panelSkeleton(widget, callbacks);
  const bounds = numericBounds(widget);
  const slider = document.createElement("input");
  slider.type = "range";
  slider.min = String(bounds.low);
  slider.max = String(bounds.high);
  slider.step = "any";
  if (widget.initial_value.type === "numeric") {
    slider.value = String(widget.initial_value.value);
  }
  const readout = document.createElement("span");
  readout.className = "slider-readout";
  readout.textContent = slider.value;

  let dragTimer: ReturnType<typeof setTimeout> | null = null;
  const commit = () => {
    if (dragTimer !== null) {
      clearTimeout(dragTimer);
      dragTimer = null;
    }
    callbacks.onCommit(widget.id, read());
  };
  slider.addEventListener("input", () => {
    readout.textContent = slider.value;
    if (dragTimer !== null) clearTimeout(dragTimer);
    dragTimer = setTimeout(commit, DRAG_COMMIT_MS);
  });
  slider.addEventListener("change", commit);
  skeleton.body.append(slider, readout);

  const read = (): ValueModel => ({ type: "numeric", value: Number(slider.value) });
  const write = (value: ValueModel) => {
    if (value.type !== "numeric") return;
    slider.value = String(value.value);
    readout.textContent = slider.value;
  };
  return makeHandle(widget, skeleton, slider, read, write);
}

function buildRangeSlider(
  widget: WidgetModel,
  callbacks: ControlCallbacks,
): ControlHandle {
  const skeleton = panelSkeleton(widget, callbacks);
  const bounds = numericBounds(widget);
  const low = document.createElement("input");
  const high = document.createElement("input");
  for (const input of [low, high]) {
    input.type = "range";
    input.min = String(bounds.low);
    input.max = String(bounds.high);
    input.step = "any";
  }
  if (widget.initial_value.type === "range") {
    low.value = String(widget.initial_value.low);
    high.value = String(widget.initial_value.high);
  }
  const readout = document.createElement("span");
  readout.className = "slider-readout";
  const updateReadout = () => {
    readout.textContent = `${low.value} .. ${high.value}`;
  };
  updateReadout();

  const clampPair = (moved: HTMLInputElement) => {
    if (Number(low.value) > Number(high.value)) {
      if (moved === low) high.value = low.value;
      else low.value = high.value;
    }
  };
  let dragTimer: ReturnType<typeof setTimeout> | null = null;
  const commit = () => {
    if (dragTimer !== null) {
      clearTimeout(dragTimer);
      dragTimer = null;
    }
    callbacks.onCommit(widget.id, read());
  };
  for (const input of [low, high]) {
    input.addEventListener("input", () => {
      clampPair(input);
      updateReadout();
      if (dragTimer !== null) clearTimeout(dragTimer);
      dragTimer = setTimeout(commit, DRAG_COMMIT_MS);
    });
    input.addEventListener("change", () => {
      clampPair(input);
      updateReadout();
      commit();
    });
  }
  const pair = document.createElement("div");
  pair.className = "range-pair";
  pair.append(low, high);
  skeleton.body.append(pair, readout);

  const read = (): ValueModel => ({
    type: "range",
    low: Number(low.value),
    high: Number(high.value),
  });
  const write = (value: ValueModel) => {
    if (value.type !== "range") return;
    low.value = String(value.low);
    high.value = String(value.high);
    updateReadout();
  };
  return makeHandle(widget, skeleton, low, read, write);
}

function buildSelect(
  widget: WidgetModel,
  callbacks: ControlCallbacks,
  multiple: boolean,
): ControlHandle {
  const skeleton = panelSkeleton(widget, callbacks);
  const select = document.createElement("select");
  select.multiple = multiple;
  if (multiple) select.size = Math.min(optionList(widget).length, 5);
  const initial = new Set(
    widget.initial_value.type === "selection" ? widget.initial_value.selected : [],
  );
  for (const option of optionList(widget)) {
    const element = document.createElement("option");
    element.value = option;
    element.textContent = option;
    element.selected = initial.has(option);
    select.append(element);
  }
  select.addEventListener("change", () => callbacks.onCommit(widget.id, read()));
  skeleton.body.append(select);

  const read = (): ValueModel => ({
    type: "selection",
    selected: [...select.options].filter((o) => o.selected).map((o) => o.value),
  });
  const write = (value: ValueModel) => {
    if (value.type !== "selection") return;
    const selected = new Set(value.selected);
    for (const option of select.options) {
      option.selected = selected.has(option.value);
    }
  };
  return makeHandle(widget, skeleton, select, read, write);
}

function buildTextInput(
  widget: WidgetModel,
  callbacks: ControlCallbacks,
): ControlHandle {
  const skeleton = panelSkeleton(widget, callbacks);
  const input = document.createElement("input");
  input.type = "text";
  input.value = widget.initial_value.type === "text" ? widget.initial_value.value : "";

  let committed = input.value;
  const commitIfDirty = () => {
    if (input.value !== committed) {
      committed = input.value;
      callbacks.onCommit(widget.id, read());
    }
  };
  input.addEventListener("keydown", (event) => {
    if (event.key === "Enter") commitIfDirty();
  });
  input.addEventListener("blur", commitIfDirty);
  skeleton.body.append(input);

  const read = (): ValueModel => ({ type: "text", value: input.value });
  const write = (value: ValueModel) => {
    if (value.type !== "text") return;
    input.value = value.value;
    committed = value.value;
  };
  return makeHandle(widget, skeleton, input, read, write);
}
