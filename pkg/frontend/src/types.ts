/** Wire types mirroring the provenance service's JSON contract. */

export type ValueModel =
  | { type: "numeric"; value: number }
  | { type: "range"; low: number; high: number }
  | { type: "selection"; selected: string[] }
  | { type: "text"; value: string };

export type DomainModel =
  | { type: "numeric"; low: number; high: number }
  | { type: "options"; options: string[] }
  | null;

export type WidgetKind =
  | "radio-group"
  | "checkbox-group"
  | "single-slider"
  | "range-slider"
  | "single-select"
  | "multi-select"
  | "text-input";

export interface WidgetSpec {
  id: string;
  kind: WidgetKind;
  label: string;
  domain: DomainModel;
  initial_value: ValueModel;
}

export interface WidgetModel extends WidgetSpec {
  registration_index: number;
  color_index: number;
  color: string;
}

export interface WidgetStatsModel {
  count: number;
  first_seq: number | null;
  last_seq: number | null;
  last_wall_time: number | null;
  record: Record<string, unknown>;
}

export interface SnapshotModel {
  global_count: number;
  widgets: WidgetModel[];
  per_widget: Record<string, WidgetStatsModel>;
}

export interface TooltipModel {
  widget_id: string;
  count: number;
  last_wall_time: number | null;
}

export interface AggregateBoxModel {
  widget_id: string;
  order: number;
  x: number;
  y: number;
  side: number;
  color: string;
  filled: boolean;
  tooltip: TooltipModel;
}

export interface TemporalBarModel {
  widget_id: string;
  row: number;
  start: number;
  end: number;
  color: string;
  event_seq: number;
}

export interface TemporalLayoutModel {
  rows: string[];
  restore_row: number;
  bars: TemporalBarModel[];
}

export interface ScentBarModel {
  key: string;
  offset: number;
  length: number;
  color: string;
}

export interface RecordEventResponse {
  seq: number;
  snapshot: SnapshotModel;
}

export interface RestoreResponse {
  state: Record<string, ValueModel>;
  snapshot: SnapshotModel;
}

export interface SessionConfigModel {
  palette?: string[];
  coalescing_window_ms?: number;
  a_min?: number;
  a_max?: number;
}
