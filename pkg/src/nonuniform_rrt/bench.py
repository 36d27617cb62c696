"""Benchmark trials, CSV rows and summary statistics."""

from __future__ import annotations

import csv
import io
import math
import statistics
import time
from dataclasses import dataclass

from . import nonuniform
from .baseline import plan_uniform
from .scene import Scene, rasterize
from .tree import NoPathError, PlanResult

CSV_HEADER = ["planner", "seed", "cell_size", "n_regions", "tree_size", "iterations",
              "collision_checks", "time_ms", "feasible_len", "smoothed_len", "status"]
SUMMARY_METRICS = ["tree_size", "collision_checks", "time_ms", "feasible_len", "smoothed_len"]
PLANNERS = ("nonuniform", "uniform")


@dataclass(frozen=True)
class BenchConfig:
    cell_size: float = 2.0
    max_iters: int = 20000
    step: float = 5.0
    goal_bias: float = 0.05
    goal_tol: float = 0.5
    shrinking_ball: bool = False
    conservative: bool = False


def fmt(v) -> str:
    """Six significant digits for floats, plain text otherwise."""
    if isinstance(v, float):
        return "" if math.isnan(v) else f"{v:.6g}"
    return str(v)


def run_trial(scene: Scene, planner: str, seed: int, cfg: BenchConfig):
    """Run one planner once. Returns ``(row, result)``; result is None on no-path."""
    t0 = time.perf_counter()
    result = None
    status = "ok"
    try:
        if planner == "nonuniform":
            result = nonuniform.plan(scene, cfg.cell_size, seed, conservative=cfg.conservative)
        elif planner == "uniform":
            grid = rasterize(scene, cfg.cell_size)
            result = plan_uniform(scene, grid, seed, max_iters=cfg.max_iters, step=cfg.step,
                                  goal_bias=cfg.goal_bias, goal_tol=cfg.goal_tol,
                                  shrinking_ball=cfg.shrinking_ball,
                                  conservative=cfg.conservative)
        else:
            raise ValueError(f"unknown planner {planner!r}")
    except NoPathError as exc:
        status = "no-path"
        no_path_reason = str(exc)
    elapsed = time.perf_counter() - t0
    row = {"planner": planner, "seed": seed, "cell_size": float(cfg.cell_size)}
    if result is None:
        row.update(n_regions="", tree_size="", iterations="", collision_checks="",
                   time_ms=elapsed * 1e3, feasible_len=math.nan, smoothed_len=math.nan,
                   status=status)
        row["reason"] = no_path_reason
    else:
        row.update(n_regions=result.n_regions, tree_size=result.tree_size,
                   iterations=result.iterations, collision_checks=result.collision_checks,
                   time_ms=elapsed * 1e3, feasible_len=result.feasible_length,
                   smoothed_len=result.smoothed_length, status=status)
    return row, result


def format_rows(rows):
    """Rows with every field serialized as it appears in the CSV."""
    return [{k: fmt(r[k]) for k in CSV_HEADER} for r in rows]


def write_csv(rows, fh) -> None:
    w = csv.DictWriter(fh, fieldnames=CSV_HEADER, lineterminator="\n")
    w.writeheader()
    for r in format_rows(rows):
        w.writerow(r)


def read_csv(fh):
    return list(csv.DictReader(fh))


def csv_text(rows) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def summarize(rows) -> dict:
    """Mean and median per planner over successful rows, plus
    uniform / non-uniform ratios of both."""
    if not rows:
        raise ValueError("no rows to summarize")
    out = {"planners": {}, "ratios": {}}
    for planner in sorted({r["planner"] for r in rows}):
        mine = [r for r in rows if r["planner"] == planner]
        ok = [r for r in mine if r["status"] == "ok"]
        stats = {"runs": len(mine), "ok": len(ok)}
        for m in SUMMARY_METRICS:
            vals = [float(r[m]) for r in ok if r[m] != ""]
            vals = [v for v in vals if not math.isnan(v)]
            stats[m] = ({"mean": statistics.fmean(vals), "median": statistics.median(vals)}
                        if vals else {"mean": math.nan, "median": math.nan})
        out["planners"][planner] = stats
    p = out["planners"]
    if "uniform" in p and "nonuniform" in p:
        for m in SUMMARY_METRICS:
            out["ratios"][m] = {
                k: _ratio(p["uniform"][m][k], p["nonuniform"][m][k]) for k in ("mean", "median")
            }
    return out


def _ratio(a, b):
    if math.isnan(a) or math.isnan(b):
        return math.nan
    if b == 0:
        return math.inf if a > 0 else math.nan
    return a / b


def format_summary(summary: dict) -> str:
    lines = []
    head = f"{'planner':<12}{'runs':>6}{'ok':>5}" + "".join(f"{m:>20}" for m in SUMMARY_METRICS)
    lines.append("mean / median")
    lines.append(head)
    for planner, st in summary["planners"].items():
        cells = "".join(f"{fmt(st[m]['mean']) + ' / ' + fmt(st[m]['median']):>20}"
                        for m in SUMMARY_METRICS)
        lines.append(f"{planner:<12}{st['runs']:>6}{st['ok']:>5}" + cells)
    if summary["ratios"]:
        lines.append("")
        lines.append("uniform / nonuniform")
        for m, r in summary["ratios"].items():
            lines.append(f"  {m:<18} mean {fmt(r['mean']):>10}   median {fmt(r['median']):>10}")
    return "\n".join(lines)
