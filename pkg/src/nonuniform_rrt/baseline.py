"""Uniform-sampling RRT* baseline and random shortcut smoothing."""

from __future__ import annotations

import math
import time

import numpy as np

from .collision import CollisionChecker
from .scene import Point2, Scene, OccupancyGrid
from .tree import (NoFeasibleParent, NoPathError, PlanResult, SearchTree,
                   choose_parent_and_rewire, dedupe, nearest, path_length)

SMOOTH_ITERS = 200


def _point_at(path, cum, s):
    k = int(np.searchsorted(cum, s, side="right")) - 1
    k = min(max(k, 0), len(path) - 2)
    seg = cum[k + 1] - cum[k]
    t = 0.0 if seg == 0 else (s - cum[k]) / seg
    a, b = path[k], path[k + 1]
    return k, Point2(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))


def shortcut_smooth(grid: OccupancyGrid, path, rng, iters: int = SMOOTH_ITERS,
                    checker: CollisionChecker = None):
    """Random shortcutting followed by one greedy vertex-skipping pass.

    Shortcuts are only accepted when collision-free and strictly shorter, so
    the output is never longer than the input.
    """
    checker = checker or CollisionChecker(grid)
    path = dedupe(list(path))
    for _ in range(iters):
        if len(path) < 3:
            break
        cum = np.concatenate([[0.0], np.cumsum([path[k].dist(path[k + 1])
                                                for k in range(len(path) - 1)])])
        s1, s2 = sorted(rng.uniform(0.0, cum[-1], size=2))
        k1, p1 = _point_at(path, cum, s1)
        k2, p2 = _point_at(path, cum, s2)
        if k1 == k2:
            continue
        old = (s2 - s1)
        if p1.dist(p2) < old - 1e-9 and checker.free(p1, p2):
            path = dedupe(path[:k1 + 1] + [p1, p2] + path[k2 + 1:])
    # greedy: from each kept vertex jump to the farthest visible one
    out = [path[0]]
    k = 0
    while k < len(path) - 1:
        nxt = k + 1
        for m in range(len(path) - 1, k + 1, -1):
            if checker.free(path[k], path[m]):
                nxt = m
                break
        out.append(path[nxt])
        k = nxt
    return out if path_length(out) <= path_length(path) else path


def _steer(a: Point2, b: Point2, step: float) -> Point2:
    d = a.dist(b)
    if d <= step:
        return b
    t = step / d
    return Point2(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))


def plan_uniform(
    scene: Scene,
    grid: OccupancyGrid,
    seed,
    max_iters: int = 20000,
    step: float = 5.0,
    goal_bias: float = 0.05,
    goal_tol: float = 0.5,
    shrinking_ball: bool = False,
    conservative: bool = False,
    target_length: float = None,
    smooth_iters: int = SMOOTH_ITERS,
    history: list = None,
) -> PlanResult:
    """Classic RRT* with a fixed neighbour radius equal to ``step``.

    With ``target_length`` set, the run stops as soon as the smoothed best path
    is no longer than it. ``history`` collects ``(iteration, best_cost)``
    whenever the best cost changes.
    """
    if not step > 0 or not 0 <= goal_bias < 1:
        raise ValueError("need step > 0 and 0 <= goal_bias < 1")
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    checker = CollisionChecker(grid, conservative)
    tree = SearchTree(scene.start, capacity=1024)
    goal = scene.goal
    # nodes whose direct edge to the goal is known free
    goal_links = []
    best_cost = math.inf
    best_node = None
    smoothed = None
    reached = False
    it = 0
    gamma = 2.0 * math.sqrt(1.5 * scene.width * scene.height / math.pi)
    for it in range(1, max_iters + 1):
        if rng.random() < goal_bias:
            q = goal
        else:
            x, y = rng.uniform(0.0, scene.width), rng.uniform(0.0, scene.height)
            q = Point2(float(x), float(y))
        near_id = nearest(tree, q)
        p = _steer(tree.points[near_id], q, step)
        if p.dist(tree.points[near_id]) <= 1e-9:
            continue
        if not checker.free(tree.points[near_id], p):
            continue
        radius = step
        if shrinking_ball:
            nn = len(tree) + 1
            radius = min(step, gamma * math.sqrt(math.log(nn) / nn))
        cands = set(tree.near(p, radius))
        cands.add(near_id)
        try:
            k = choose_parent_and_rewire(tree, p, cands, checker.free)
        except NoFeasibleParent:
            continue
        if p.dist(goal) <= goal_tol and (p.dist(goal) <= 1e-9 or checker.free(p, goal)):
            goal_links.append(k)
        if not goal_links:
            continue
        cost, node = min((tree.cost[g] + tree.points[g].dist(goal), g) for g in goal_links)
        if cost < best_cost - 1e-12:
            best_cost, best_node = cost, node
            if history is not None:
                history.append((it, best_cost))
            if target_length is not None:
                smoothed = shortcut_smooth(grid, _goal_path(tree, best_node, goal),
                                           np.random.default_rng([seed, it]),
                                           smooth_iters, checker)
                if path_length(smoothed) <= target_length:
                    reached = True
                    break
    if best_node is None:
        raise NoPathError(f"no path within {max_iters} iterations")
    feasible = _goal_path(tree, best_node, goal)
    if not reached:
        smoothed = shortcut_smooth(grid, feasible, np.random.default_rng([seed, it]),
                                   smooth_iters, checker)
    return PlanResult(
        planner="uniform",
        feasible_path=feasible,
        smoothed_path=smoothed,
        tree_size=len(tree),
        iterations=it,
        collision_checks=checker.calls,
        elapsed=time.perf_counter() - t0,
        tree=tree,
    )


def _goal_path(tree: SearchTree, node: int, goal: Point2):
    return dedupe(tree.backtrack(node) + [goal])
