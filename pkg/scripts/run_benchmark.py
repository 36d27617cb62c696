"""Time-to-equal-quality comparison of the two planners on one scene.

For every seed the non-uniform planner runs once; the uniform RRT* then runs
until its smoothed path is within ``tolerance`` of that length, or until
``max_iters``. Per-seed rows go to a CSV and the medians are printed.

    python scripts/run_benchmark.py --scene narrow_corridors --seeds 30 --out h2h.csv
"""

from __future__ import annotations

import argparse
import csv
import statistics
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from nonuniform_rrt import load_scene, plan, plan_uniform, rasterize
from nonuniform_rrt.scenarios import bundled_path


@dataclass(frozen=True)
class HeadToHeadConfig:
    scene: str = "narrow_corridors"
    seeds: int = 30
    cell_size: float = 2.0
    tolerance: float = 0.02
    max_iters: int = 20000
    step: float = 5.0
    out: str = "head_to_head.csv"


def run(cfg: HeadToHeadConfig):
    path = Path(cfg.scene)
    scene = load_scene(path if path.exists() else bundled_path(cfg.scene))
    rows = []
    for seed in range(1, cfg.seeds + 1):
        t0 = time.perf_counter()
        nu = plan(scene, cfg.cell_size, seed)
        nu_time = time.perf_counter() - t0
        target = (1.0 + cfg.tolerance) * nu.smoothed_length
        t0 = time.perf_counter()
        u = plan_uniform(scene, rasterize(scene, cfg.cell_size), seed, max_iters=cfg.max_iters,
                         step=cfg.step, target_length=target)
        u_time = time.perf_counter() - t0
        rows.append({
            "seed": seed,
            "nonuniform_ms": round(nu_time * 1e3, 3),
            "nonuniform_nodes": nu.tree_size,
            "nonuniform_len": round(nu.smoothed_length, 6),
            "uniform_ms": round(u_time * 1e3, 3),
            "uniform_nodes": u.tree_size,
            "uniform_len": round(u.smoothed_length, 6),
            "reached": u.smoothed_length <= target,
        })
        print(f"seed {seed:3d}: {rows[-1]}")
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(HeadToHeadConfig):
        parser.add_argument(f"--{f.name.replace('_', '-')}", type=type(f.default), default=f.default)
    cfg = HeadToHeadConfig(**vars(parser.parse_args()))
    rows = run(cfg)
    with open(cfg.out, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)

    def med(key):
        return statistics.median(r[key] for r in rows)

    print(f"config: {asdict(cfg)}")
    print(f"median time  nonuniform {med('nonuniform_ms'):.2f} ms, uniform {med('uniform_ms'):.1f} ms, "
          f"ratio {med('uniform_ms') / med('nonuniform_ms'):.0f}x")
    print(f"median nodes nonuniform {med('nonuniform_nodes')}, uniform {med('uniform_nodes')}, "
          f"ratio {med('uniform_nodes') / med('nonuniform_nodes'):.0f}x")
    print(f"uniform reached the target on {sum(r['reached'] for r in rows)}/{len(rows)} seeds")


if __name__ == "__main__":
    main()
