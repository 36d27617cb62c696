"""Search tree and the RRT* primitives shared by both planners."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from .scene import Point2

COST_EPS = 1e-12


class NoPathError(RuntimeError):
    """No start-to-goal path could be produced."""


class NoFeasibleParent(RuntimeError):
    """Every candidate parent failed the edge test."""


def path_length(path) -> float:
    return sum(path[k].dist(path[k + 1]) for k in range(len(path) - 1))


def dedupe(path, tol: float = 1e-9):
    """Drop consecutive repeated waypoints."""
    out = [path[0]]
    for p in path[1:]:
        if p.dist(out[-1]) > tol:
            out.append(p)
    if len(out) == 1 and len(path) > 1:
        out.append(path[-1])
    return out


class SearchTree:
    """Nodes stored in growable arrays; ids are dense insertion indices."""

    def __init__(self, root: Point2, capacity: int = 64):
        self._xy = np.empty((capacity, 2))
        self._cost = np.empty(capacity)
        self.points = []
        self.parent = []
        self.children = []
        self._append(root, None, 0.0)

    def __len__(self):
        return len(self.points)

    def _append(self, p: Point2, parent, cost) -> int:
        k = len(self.points)
        if k == self._xy.shape[0]:
            self._xy = np.concatenate([self._xy, np.empty_like(self._xy)])
            self._cost = np.concatenate([self._cost, np.empty_like(self._cost)])
        self._xy[k] = (p.x, p.y)
        self._cost[k] = cost
        self.points.append(p)
        self.parent.append(parent)
        self.children.append(set())
        if parent is not None:
            self.children[parent].add(k)
        return k

    @property
    def xy(self) -> np.ndarray:
        return self._xy[:len(self.points)]

    @property
    def cost(self) -> np.ndarray:
        """Cost-from-start per node (a view; do not write through it)."""
        return self._cost[:len(self.points)]

    def edges(self):
        return [(self.parent[k], k) for k in range(1, len(self.points))]

    def near(self, p: Point2, radius: float):
        d2 = ((self.xy - (p.x, p.y)) ** 2).sum(axis=1)
        return [int(k) for k in np.flatnonzero(d2 <= radius * radius + 1e-12)]

    def set_parent(self, k: int, new_parent: int) -> None:
        old = self.parent[k]
        self.children[old].discard(k)
        self.children[new_parent].add(k)
        self.parent[k] = new_parent
        delta = self._cost[new_parent] + self.points[new_parent].dist(self.points[k]) - self._cost[k]
        stack = [k]
        while stack:
            v = stack.pop()
            self._cost[v] += delta
            stack.extend(self.children[v])

    def backtrack(self, k: int):
        """Waypoints from the root to node k."""
        out = []
        while k is not None:
            out.append(self.points[k])
            k = self.parent[k]
        return out[::-1]

    def root_walk_cost(self, k: int) -> float:
        return path_length(self.backtrack(k))


def nearest(tree: SearchTree, p: Point2) -> int:
    d2 = ((tree.xy - (p.x, p.y)) ** 2).sum(axis=1)
    return int(np.argmin(d2))


def choose_parent_and_rewire(
    tree: SearchTree,
    p: Point2,
    candidates: Iterable[int],
    edge_ok: Callable[[Point2, Point2], bool],
) -> int:
    """Insert p under its cheapest feasible candidate, then re-parent any
    candidate whose cost strictly drops by routing through p."""
    cands = np.array(sorted(set(candidates)), dtype=int)
    if cands.size == 0:
        raise NoFeasibleParent("no candidate parents")
    xy = tree.xy[cands]
    d = np.hypot(xy[:, 0] - p.x, xy[:, 1] - p.y)
    total = tree.cost[cands] + d
    parent = None
    for idx in np.lexsort((cands, total)):
        c = int(cands[idx])
        if edge_ok(tree.points[c], p):
            parent, best = c, float(total[idx])
            break
    if parent is None:
        raise NoFeasibleParent(f"all {cands.size} candidate edges rejected")
    k = tree._append(p, parent, best)
    through = best + d
    # costs only drop while rewiring, so this prefilter is a superset; re-read below
    for idx in np.flatnonzero(through < tree.cost[cands] - COST_EPS):
        c = int(cands[idx])
        if c == parent:
            continue
        if through[idx] < tree._cost[c] - COST_EPS and edge_ok(p, tree.points[c]):
            tree.set_parent(c, k)
    return k


@dataclass
class PlanResult:
    planner: str
    feasible_path: list
    smoothed_path: Optional[list]
    tree_size: int
    iterations: int
    collision_checks: int
    elapsed: float
    n_regions: int = 0
    tree: Optional[SearchTree] = field(default=None, repr=False)

    @property
    def feasible_length(self) -> float:
        return path_length(self.feasible_path)

    @property
    def smoothed_length(self) -> float:
        return path_length(self.smoothed_path) if self.smoothed_path else math.nan
