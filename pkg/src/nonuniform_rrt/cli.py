"""Command-line front end.

    nurrt plan --scene narrow_corridors.json --planner both --seeds 1..30 \\
        --metrics runs.csv --summary
    nurrt summarize runs.csv
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import (PLANNERS, BenchConfig, format_rows, format_summary, read_csv,
                    run_trial, summarize, write_csv)
from .partition import extract_regions, merge_cells, partition_to_dict
from .render import render_svg
from .scene import SceneError, load_scene, rasterize
from .scenarios import bundled_path

EXIT_OK, EXIT_NO_PATH, EXIT_USAGE = 0, 1, 2


def parse_seeds(text: str):
    if ".." in text:
        a, b = text.split("..", 1)
        lo, hi = int(a), int(b)
        if hi < lo:
            raise argparse.ArgumentTypeError(f"empty seed range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _seeds(text):
    try:
        return parse_seeds(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed spec {text!r}; use N or A..B") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nurrt", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    pl = sub.add_parser("plan", help="run planners on a scene")
    pl.add_argument("--scene", required=True,
                    help="scene JSON file, or the name of a bundled scenario")
    pl.add_argument("--planner", choices=[*PLANNERS, "both"], default="nonuniform")
    pl.add_argument("--cell-size", type=float, default=2.0)
    seeds = pl.add_mutually_exclusive_group()
    seeds.add_argument("--seed", type=int, default=None)
    seeds.add_argument("--seeds", type=_seeds, default=None, metavar="A..B")
    pl.add_argument("--max-iters", type=int, default=20000)
    pl.add_argument("--step", type=float, default=5.0)
    pl.add_argument("--goal-bias", type=float, default=0.05)
    pl.add_argument("--goal-tol", type=float, default=0.5)
    pl.add_argument("--shrinking-ball", action="store_true")
    pl.add_argument("--conservative-collision", action="store_true")
    pl.add_argument("--svg", type=Path)
    pl.add_argument("--metrics", type=Path, help="CSV output (default: stdout)")
    pl.add_argument("--dump-partition", type=Path)
    pl.add_argument("--summary", action="store_true")

    sm = sub.add_parser("summarize", help="summarize a metrics CSV")
    sm.add_argument("csv", type=Path)
    return p


def _resolve_scene(arg: str) -> Path:
    path = Path(arg)
    if not path.exists() and path.parent == Path("."):
        bundled = bundled_path(arg)
        if bundled is not None:
            return bundled
    return path


def _svg_path(base: Path, planner: str, seed: int, multi: bool) -> Path:
    if not multi:
        return base
    return base.with_name(f"{base.stem}_{planner}_{seed}{base.suffix}")


def cmd_plan(args) -> int:
    scene_path = _resolve_scene(args.scene)
    try:
        scene = load_scene(scene_path)
    except FileNotFoundError:
        print(f"error: scene file not found: {args.scene}", file=sys.stderr)
        return EXIT_USAGE
    except SceneError as exc:
        print(f"error: invalid scene {scene_path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cfg = BenchConfig(cell_size=args.cell_size, max_iters=args.max_iters, step=args.step,
                      goal_bias=args.goal_bias, goal_tol=args.goal_tol,
                      shrinking_ball=args.shrinking_ball,
                      conservative=args.conservative_collision)
    if not (cfg.step > 0 and 0 <= cfg.goal_bias < 1 and cfg.max_iters > 0):
        print("error: need --step > 0, 0 <= --goal-bias < 1, --max-iters > 0", file=sys.stderr)
        return EXIT_USAGE
    try:
        grid = rasterize(scene, cfg.cell_size)
    except SceneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    partition = merge_cells(grid)
    graph = extract_regions(partition)
    if args.dump_partition:
        args.dump_partition.write_text(json.dumps(partition_to_dict(partition, graph), indent=1) + "\n")

    seeds = args.seeds or [args.seed if args.seed is not None else 0]
    planners = PLANNERS if args.planner == "both" else (args.planner,)
    multi = len(seeds) * len(planners) > 1
    rows = []
    for planner in planners:
        for seed in seeds:
            row, result = run_trial(scene, planner, seed, cfg)
            rows.append(row)
            if result is None:
                print(f"{planner} seed {seed}: no path ({row['reason']})", file=sys.stderr)
            if args.svg:
                show = planner == "nonuniform"
                svg = render_svg(scene, partition if show else None, graph if show else None, result)
                _svg_path(args.svg, planner, seed, multi).write_text(svg)

    if args.metrics:
        with open(args.metrics, "w", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    if args.summary:
        print(format_summary(summarize(format_rows(rows))))
    return EXIT_NO_PATH if any(r["status"] != "ok" for r in rows) else EXIT_OK


def cmd_summarize(args) -> int:
    try:
        with open(args.csv, newline="") as fh:
            rows = read_csv(fh)
    except FileNotFoundError:
        print(f"error: metrics file not found: {args.csv}", file=sys.stderr)
        return EXIT_USAGE
    if not rows:
        print(f"error: {args.csv} has no rows", file=sys.stderr)
        return EXIT_USAGE
    print(format_summary(summarize(rows)))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "plan":
        return cmd_plan(args)
    return cmd_summarize(args)


if __name__ == "__main__":
    sys.exit(main())
