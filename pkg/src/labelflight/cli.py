"""Command-line entry points.

Subcommands: ``scene`` (generate a scene file), ``layout`` (build and export
one second-level layout), ``simulate`` (run seeded trials and aggregate),
``serve`` (run the interactive session server), and ``replay`` (feed a
recorded client log through a fresh session).

Exit codes: 0 success, 2 unreadable/invalid input, 3 layout failure.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

from .conditions import MethodCondition, layout_for
from .config import EngineConfig
from .export import layout_to_json, layout_to_svg
from .layout import LayoutError
from .protocol import replay_log
from .scenes import generate_scene, labels_for, load_scene, save_scene
from .simulate import CompareConfig, TrialLimits, AgentConfig, compare_methods, run_null_trial
from .server import SessionServer, start_static_server

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_LAYOUT = 3


def _engine_config(args: argparse.Namespace) -> EngineConfig:
    return EngineConfig(
        central_fov_deg=args.fov_deg,
        tick_hz=args.tick_hz,
        dwell_seconds=args.dwell_ms / 1000.0,
        max_circles=args.max_circles,
        relax_iters=args.relax_iters,
    )


def _add_engine_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--fov-deg", type=float, default=30.0, help="full central field of view in degrees")
    parser.add_argument("--tick-hz", type=float, default=60.0, help="logical tick rate")
    parser.add_argument("--dwell-ms", type=float, default=400.0, help="dwell selection threshold")
    parser.add_argument("--max-circles", type=int, default=6, help="second-level circle budget")
    parser.add_argument("--relax-iters", type=int, default=60, help="relaxation passes before removal starts")


def cmd_scene(args: argparse.Namespace) -> int:
    scene = generate_scene(args.seed, args.objects, args.preset, args.letters)
    save_scene(scene, args.out)
    print(f"wrote {args.out} ({len(scene.objects)} objects)")
    return EXIT_OK


def cmd_layout(args: argparse.Namespace) -> int:
    try:
        scene = load_scene(args.scene)
    except (OSError, ValueError) as exc:
        print(f"error: cannot load scene: {exc}", file=sys.stderr)
        return EXIT_INPUT
    condition = MethodCondition(args.method)
    cfg = _engine_config(args)
    labels = labels_for(scene)
    if condition is not MethodCondition.CC2:
        if not args.letter:
            print("error: --letter is required for ec1/ec2/ec3", file=sys.stderr)
            return EXIT_INPUT
        labels = [l for l in labels if l.text and l.text[0].lower() == args.letter.lower()]
        if not labels:
            print(f"warning: no labels start with {args.letter!r}; writing empty layout", file=sys.stderr)
    try:
        mcl = layout_for(condition, labels, scene.object_map(), scene.spawn, cfg=cfg)
    except LayoutError as exc:
        print(f"error: layout failed: {exc}", file=sys.stderr)
        return EXIT_LAYOUT
    Path(args.out).write_text(layout_to_json(mcl, letter=args.letter, condition=condition.value))
    print(f"wrote {args.out}")
    if args.svg:
        Path(args.svg).write_text(layout_to_svg(mcl))
        print(f"wrote {args.svg}")
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.trials < 1:
        print("error: --trials must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    names = [c.strip().lower() for c in args.conditions.split(",") if c.strip()]
    null_conditions = [c for c in names if c == "cc1"]
    try:
        conditions = tuple(MethodCondition(c) for c in names if c != "cc1")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    cfg = _engine_config(args)
    limits = TrialLimits(max_seconds=args.max_seconds)
    config = CompareConfig(
        conditions=conditions,
        trials=args.trials,
        n_objects=args.objects,
        preset=args.preset,
        letters=args.letters,
        scene_seed_base=args.seed,
        agent=AgentConfig(seed=args.seed),
        limits=limits,
        engine=cfg,
    )
    report = compare_methods(config)
    for name in null_conditions:
        for _ in range(args.trials):
            report.records.append(run_null_trial(limits, cfg))
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    jsonl = "".join(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n" for r in report.records)
    Path(f"{out}.jsonl").write_text(jsonl)
    Path(f"{out}.csv").write_text(report.to_csv())
    Path(f"{out}.json").write_text(json.dumps(report.to_dict(), sort_keys=True, separators=(",", ":")) + "\n")
    print(report.to_text())
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    scene = None
    if args.scene:
        try:
            scene = load_scene(args.scene)
        except (OSError, ValueError) as exc:
            print(f"error: cannot load scene: {exc}", file=sys.stderr)
            return EXIT_INPUT
    cfg = _engine_config(args)
    server = SessionServer(scene=scene, cfg=cfg)
    if args.static:
        start_static_server(args.static, args.host, args.static_port)
        print(f"demo UI on http://{args.host}:{args.static_port}/")
    print(f"tcp on {args.host}:{args.port}, websocket on {args.host}:{args.ws_port}")
    try:
        asyncio.run(server.serve(args.host, args.port, args.ws_port))
    except KeyboardInterrupt:
        pass
    return EXIT_OK


def cmd_replay(args: argparse.Namespace) -> int:
    try:
        lines = Path(args.log).read_text().splitlines()
    except OSError as exc:
        print(f"error: cannot read log: {exc}", file=sys.stderr)
        return EXIT_INPUT
    scene = None
    if args.scene:
        try:
            scene = load_scene(args.scene)
        except (OSError, ValueError) as exc:
            print(f"error: cannot load scene: {exc}", file=sys.stderr)
            return EXIT_INPUT
    cfg = _engine_config(args)
    responses = replay_log(lines, cfg=cfg, scene=scene)
    text = "\n".join(responses) + ("\n" if responses else "")
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out} ({len(responses)} records)")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="labelflight", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_scene = sub.add_parser("scene", help="generate a deterministic scene file")
    p_scene.add_argument("--seed", type=int, default=0)
    p_scene.add_argument("--objects", type=int, default=60)
    p_scene.add_argument("--preset", choices=("grid", "scatter"), default="grid")
    p_scene.add_argument("--letters", default=None, help="restrict object-name initials, e.g. 'st'")
    p_scene.add_argument("--out", required=True)
    p_scene.set_defaults(func=cmd_scene)

    p_layout = sub.add_parser("layout", help="build and export one layout")
    p_layout.add_argument("--scene", required=True)
    p_layout.add_argument("--letter", default=None)
    p_layout.add_argument("--method", choices=("cc2", "ec1", "ec2", "ec3"), default="ec3")
    p_layout.add_argument("--out", required=True)
    p_layout.add_argument("--svg", default=None)
    _add_engine_flags(p_layout)
    p_layout.set_defaults(func=cmd_layout)

    p_sim = sub.add_parser("simulate", help="run seeded trials and aggregate metrics")
    p_sim.add_argument("--scene", default=None, help="unused placeholder for parity; scenes are generated per seed")
    p_sim.add_argument("--conditions", default="ec1,ec2,ec3")
    p_sim.add_argument("--trials", type=int, default=20)
    p_sim.add_argument("--objects", type=int, default=60)
    p_sim.add_argument("--preset", choices=("grid", "scatter"), default="scatter")
    p_sim.add_argument("--letters", default=None)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--max-seconds", type=float, default=60.0)
    p_sim.add_argument("--out", required=True, help="output path prefix")
    _add_engine_flags(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_serve = sub.add_parser("serve", help="run the interactive session server")
    p_serve.add_argument("--scene", default=None)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8765)
    p_serve.add_argument("--ws-port", type=int, default=8766)
    p_serve.add_argument("--static", default=None, help="directory with the built demo UI")
    p_serve.add_argument("--static-port", type=int, default=8000)
    _add_engine_flags(p_serve)
    p_serve.set_defaults(func=cmd_serve)

    p_replay = sub.add_parser("replay", help="replay a recorded client log")
    p_replay.add_argument("--log", required=True)
    p_replay.add_argument("--scene", default=None)
    p_replay.add_argument("--out", default=None)
    _add_engine_flags(p_replay)
    p_replay.set_defaults(func=cmd_replay)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
