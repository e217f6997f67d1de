"""Command-line interface.

    lassim validate scenario.json
    lassim simulate --scenario F --condition hud|nohud --duration S --seed N --out T.csv
    lassim serve    --scenario F --condition hud|nohud --port P [--mode live|quiz]
    lassim quiz     --scenario F --seed N --count 4 [--out questions.json]
    lassim metrics  T.csv
    lassim stats    --responses R.csv --items items.json [--out report.csv]
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .driver import DriverParams
from .hud import question_to_dict
from .scenario import ScenarioError, load_scenario
from .session import (
    ConfigError,
    SessionConfig,
    compute_metrics,
    config_from_dict,
    generate_questions,
    read_log,
    run_headless,
    write_log,
)
from .stats import acceptance_report, load_responses, write_report_csv

_CONDITIONS = {"hud": "hud_on", "nohud": "hud_off"}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lassim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a scenario file")
    p.add_argument("file")

    p = sub.add_parser("simulate", help="run a headless session and write telemetry")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--scenario", help="scenario JSON file")
    src.add_argument("--config", help="full session config JSON file")
    p.add_argument("--condition", choices=sorted(_CONDITIONS), default="hud")
    p.add_argument("--duration", type=float, default=150.0, help="seconds (default 150)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="telemetry CSV path")
    p.add_argument("--target-y", type=float, default=None,
                   help="driver target lateral position (default: right lane center)")
    p.add_argument("--no-assist", action="store_true", help="disable the assistance torque")

    p = sub.add_parser("serve", help="serve a live or quiz session over WebSocket")
    p.add_argument("--scenario", required=True)
    p.add_argument("--condition", choices=sorted(_CONDITIONS), default="hud")
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--mode", choices=["live", "quiz"], default="live")
    p.add_argument("--duration", type=float, default=150.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=4, help="quiz questions (quiz mode)")
    p.add_argument("--answers-out", default=None, help="write quiz answers JSON here")

    p = sub.add_parser("quiz", help="generate anticipation questions as JSON")
    p.add_argument("--scenario", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=4)
    p.add_argument("--duration", type=float, default=150.0)
    p.add_argument("--out", default=None, help="output path (default: stdout)")

    p = sub.add_parser("metrics", help="summarize a telemetry CSV")
    p.add_argument("file")

    p = sub.add_parser("stats", help="acceptance-scale report from questionnaire CSV")
    p.add_argument("--responses", required=True)
    p.add_argument("--items", required=True, help="JSON mapping item_N -> reverse flag")
    p.add_argument("--out", default=None, help="report CSV path (default: stdout table)")

    return parser


def _cmd_validate(args: argparse.Namespace) -> int:
    spec = load_scenario(args.file)
    print(
        f"OK: {spec.num_lanes} lanes x {spec.lane_width} m, {spec.road_length} m road, "
        f"{len(spec.obstacles)} obstacle(s)"
    )
    return 0


def _default_driver(spec, target_y: float | None, seed: int) -> DriverParams:
    if target_y is None:
        target_y = spec.lane_centers()[0]  # right-most lane center
    return DriverParams(target_y=target_y, seed=seed)


def _cmd_simulate(args: argparse.Namespace) -> int:
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            config = config_from_dict(json.load(fh))
    else:
        spec = load_scenario(args.scenario)
        config = SessionConfig(
            scenario=spec,
            condition=_CONDITIONS[args.condition],
            mode="headless",
            driver=_default_driver(spec, args.target_y, args.seed),
            seed=args.seed,
            assist=not args.no_assist,
        )
    log = run_headless(config, args.duration)
    write_log(log, args.out)
    metrics = compute_metrics(log)
    print(json.dumps(dataclasses.asdict(metrics)))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve

    spec = load_scenario(args.scenario)
    config = SessionConfig(
        scenario=spec,
        condition=_CONDITIONS[args.condition],
        mode=args.mode,
        seed=args.seed,
    )
    print(f"serving {args.mode} session on ws://{args.host}:{args.port}/ws", flush=True)
    serve(
        config,
        port=args.port,
        host=args.host,
        duration=args.duration,
        quiz_count=args.count,
        answers_path=args.answers_out,
    )
    return 0


def _cmd_quiz(args: argparse.Namespace) -> int:
    spec = load_scenario(args.scenario)
    config = SessionConfig(scenario=spec, mode="quiz", seed=args.seed)
    questions = generate_questions(config, args.duration, args.count)
    doc = {"questions": [question_to_dict(q) for q in questions]}
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_metrics(args: argparse.Namespace) -> int:
    metrics = compute_metrics(read_log(args.file))
    print(json.dumps(dataclasses.asdict(metrics)))
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    reports = acceptance_report(load_responses(args.responses, args.items))
    if args.out:
        write_report_csv(reports, args.out)
    else:
        print("scale        mean_hud sd_hud  mean_nohud sd_nohud  t       df  p")
        for r in reports:
            print(
                f"{r.scale:<12} {r.mean_hud:+.3f}   {r.sd_hud:.3f}   "
                f"{r.mean_nohud:+.3f}     {r.sd_nohud:.3f}    {r.t:+.3f}  {r.df:<3} {r.p:.4f}"
            )
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "simulate": _cmd_simulate,
    "serve": _cmd_serve,
    "quiz": _cmd_quiz,
    "metrics": _cmd_metrics,
    "stats": _cmd_stats,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ScenarioError, ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
