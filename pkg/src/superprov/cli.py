"""`spw`: inspect exported interaction logs from the command line.

Subcommands: report, gantt, aggregate, bias, restore. Exit codes: 0 success,
2 parse/schema error (including unreadable input), 3 invalid arguments.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import analysis, layout, persistence, recovery
from .errors import MalformedLog, ParseError, ProvenanceError, SchemaError

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 3 instead of argparse's default 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spw", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    report = sub.add_parser("report", help="print a session audit report")
    report.add_argument("log")
    report.add_argument("--format", choices=["text", "json"], default="text")

    gantt = sub.add_parser("gantt", help="render the temporal Gantt view to SVG")
    gantt.add_argument("log")
    gantt.add_argument("-o", "--output", required=True)
    gantt.add_argument("--mode", choices=["sequence", "wall-clock"], default="sequence")
    gantt.add_argument("--width", type=float, default=960.0)
    gantt.add_argument("--height", type=float, default=0.0, help="0 = 28px per row")

    aggregate = sub.add_parser("aggregate", help="render the aggregate view to SVG")
    aggregate.add_argument("log")
    aggregate.add_argument("-o", "--output", required=True)
    aggregate.add_argument("--width", type=float, default=640.0)
    aggregate.add_argument("--height", type=float, default=480.0)

    bias = sub.add_parser("bias", help="untouched controls, usage ranking, co-interaction")
    bias.add_argument("log")
    bias.add_argument("--window", type=int, default=1)

    restore = sub.add_parser("restore", help="print the full UI state at a sequence index")
    restore.add_argument("log")
    restore.add_argument("--seq", type=int, required=True)
    restore.add_argument("--format", choices=["text", "json"], default="json")

    return parser


def _load_snapshot(path: str):
    try:
        with open(path, "rb") as fp:
            data = fp.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    widgets, events = persistence.load_log(data)
    return recovery.replay(widgets, events)


def _cmd_report(args) -> int:
    snapshot = _load_snapshot(args.log)
    report = analysis.audit_report(snapshot)
    if args.format == "json":
        print(
            json.dumps(
                persistence.report_to_json(report), indent=2, ensure_ascii=False
            )
        )
        return EXIT_OK
    print(f"events: {report.global_count}")
    print(f"widgets: {len(report.widgets)}")
    if report.started_at is not None:
        print(f"span: {report.started_at} .. {report.ended_at} ms")
    for w in report.widgets:
        line = f"  {w.id} [{w.kind.value}] count={w.count}"
        if w.last_wall_time is not None:
            line += f" last={w.last_wall_time}"
        if w.last_value is not None:
            line += f" value={json.dumps(persistence.value_to_json(w.last_value), ensure_ascii=False)}"
        print(line)
    return EXIT_OK


def _cmd_gantt(args) -> int:
    snapshot = _load_snapshot(args.log)
    mode = layout.SEQUENCE_MODE if args.mode == "sequence" else layout.WALL_CLOCK_MODE
    temporal = layout.compute_temporal_layout(snapshot, mode)
    height = args.height if args.height > 0 else max(temporal.total_rows, 1) * 28.0
    svg = persistence.render_svg(temporal, args.width, height)
    with open(args.output, "wb") as fp:
        fp.write(svg)
    print(f"wrote {args.output} ({len(temporal.bars)} bars)")
    return EXIT_OK


def _cmd_aggregate(args) -> int:
    snapshot = _load_snapshot(args.log)
    boxes = layout.compute_aggregate_layout(snapshot, args.width, args.height)
    svg = persistence.render_svg(boxes, args.width, args.height)
    with open(args.output, "wb") as fp:
        fp.write(svg)
    print(f"wrote {args.output} ({len(boxes)} boxes)")
    return EXIT_OK


def _cmd_bias(args) -> int:
    snapshot = _load_snapshot(args.log)
    untouched = analysis.untouched_widgets(snapshot)
    print("untouched:", ", ".join(untouched) if untouched else "(none)")
    print("usage ranking:")
    for widget_id, count in analysis.usage_ranking(snapshot):
        print(f"  {widget_id}: {count}")
    matrix = analysis.co_interaction(snapshot, args.window)
    print(f"co-interaction (window {args.window}):")
    pairs = matrix.pairs()
    if not pairs:
        print("  (none)")
    for a, b, count in pairs:
        print(f"  {a} + {b}: {count}")
    return EXIT_OK


def _cmd_restore(args) -> int:
    snapshot = _load_snapshot(args.log)
    if not 0 <= args.seq < len(snapshot.events):
        print(
            f"spw restore: seq {args.seq} out of range for log of length "
            f"{len(snapshot.events)}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    state = recovery.state_at(snapshot, args.seq)
    if args.format == "json":
        payload = {
            widget_id: persistence.value_to_json(value)
            for widget_id, value in state.items()
        }
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        for widget_id, value in state.items():
            print(f"{widget_id} = {json.dumps(persistence.value_to_json(value), ensure_ascii=False)}")
    return EXIT_OK


_COMMANDS = {
    "report": _cmd_report,
    "gantt": _cmd_gantt,
    "aggregate": _cmd_aggregate,
    "bias": _cmd_bias,
    "restore": _cmd_restore,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, SchemaError, MalformedLog) as exc:
        print(f"spw: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ProvenanceError as exc:
        print(f"spw: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"spw: {exc}", file=sys.stderr)
        return EXIT_PARSE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
