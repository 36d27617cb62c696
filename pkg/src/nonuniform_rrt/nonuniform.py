"""RRT* restricted to critical regions, followed by corner-point refinement.

Exploration places at most one sample per region, at the region's midpoint,
and needs no collision checks: every edge it creates joins two points on the
closure of one free rectangle. Start and goal are attached to a *home* group,
the lowest-id group whose closed rectangle contains them.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field

import numpy as np

from .collision import CollisionChecker
from .partition import (Partition, RegionGraph, extract_regions, group_containing,
                        merge_cells, region_center, region_endpoints)
from .scene import Point2, Scene, rasterize
from .tree import (NoPathError, PlanResult, SearchTree, choose_parent_and_rewire,
                   dedupe)


class ExplorationExhausted(NoPathError):
    """No unexplored region is adjacent to the tree."""


class InvalidPosition(ValueError):
    """A point lies on no region and in no group."""


def _always(_a, _b):
    return True


@dataclass
class ExplorationState:
    tree: SearchTree
    node_region: dict  # node id -> region id, or None for start/goal
    node_group: dict  # node id -> home group for start/goal nodes
    explored_regions: set
    rng: np.random.Generator
    # group id -> ids of nodes lying on a region incident to it or homed in it
    touching: dict = field(default_factory=dict)
    frontier: set = field(default_factory=set)

    @classmethod
    def start(cls, partition: Partition, graph: RegionGraph, start: Point2, seed) -> "ExplorationState":
        g = group_containing(partition, start)
        if g is None:
            raise NoPathError("start lies in an obstacle cell; try a smaller cell size")
        st = cls(SearchTree(start), {0: None}, {0: g}, set(), np.random.default_rng(seed))
        st._touch(0, (g,), graph)
        return st

    def _touch(self, node: int, groups, graph: RegionGraph) -> None:
        for g in groups:
            self.touching.setdefault(g, set()).add(node)
            for rid in graph.regions_of_group.get(g, ()):
                if rid not in self.explored_regions:
                    self.frontier.add(rid)

    def node_groups(self, node: int, graph: RegionGraph):
        rid = self.node_region[node]
        if rid is None:
            return (self.node_group[node],)
        r = graph.regions[rid]
        return (r.group_a, r.group_b)


def nearby_regions(state: ExplorationState, graph: RegionGraph, partition: Partition = None):
    """Unexplored regions sharing a group with a sampled region or with a
    start/goal node."""
    return set(state.frontier)


def nearby_vertices(state: ExplorationState, partition: Partition, graph: RegionGraph,
                    p: Point2, region: int = None):
    """Tree nodes that can be joined to p without leaving a free rectangle.

    ``region`` names the region p was sampled on; otherwise p is located
    geometrically, first on a region and then inside a group.
    """
    if region is None:
        hits = [r.id for r in graph.regions if r.contains(p)]
        if len(hits) == 1:
            region = hits[0]
    if region is not None:
        r = graph.regions[region]
        groups = (r.group_a, r.group_b)
    else:
        g = group_containing(partition, p)
        if g is None:
            raise InvalidPosition(f"{tuple(p)} lies on no region and in no group")
        groups = (g,)
    out = set()
    for g in groups:
        out |= state.touching.get(g, set())
    return out


def choose_region(state: ExplorationState) -> int:
    """Draw one frontier region uniformly; advances the RNG only."""
    frontier = sorted(state.frontier)
    if not frontier:
        raise ExplorationExhausted("no unexplored region borders the tree")
    return frontier[int(state.rng.integers(len(frontier)))]


def sample_step(state: ExplorationState, graph: RegionGraph, partition: Partition) -> int:
    rid = choose_region(state)
    p = region_center(graph.regions[rid])
    cands = nearby_vertices(state, partition, graph, p, region=rid)
    k = choose_parent_and_rewire(state.tree, p, cands, _always)
    state.node_region[k] = rid
    state.explored_regions.add(rid)
    state.frontier.discard(rid)
    r = graph.regions[rid]
    state._touch(k, (r.group_a, r.group_b), graph)
    return k


def explore(scene: Scene, partition: Partition, graph: RegionGraph, seed):
    """Grow the region tree until the goal connects.

    Returns ``(state, path, path_nodes)`` where ``path_nodes`` are tree ids
    along the path, goal last.
    """
    state = ExplorationState.start(partition, graph, scene.start, seed)
    goal_group = group_containing(partition, scene.goal)
    if goal_group is None:
        raise NoPathError("goal lies in an obstacle cell; try a smaller cell size")
    tree = state.tree
    if goal_group != state.node_group[0]:
        while True:
            try:
                k = sample_step(state, graph, partition)
            except ExplorationExhausted:
                raise ExplorationExhausted(
                    "free space is disconnected at this grid resolution") from None
            if goal_group in state.node_groups(k, graph):
                break
    cands = state.touching.get(goal_group, set())
    g = choose_parent_and_rewire(tree, scene.goal, cands, _always)
    state.node_region[g] = None
    state.node_group[g] = goal_group
    nodes = []
    k = g
    while k is not None:
        nodes.append(k)
        k = tree.parent[k]
    nodes.reverse()
    return state, [tree.points[k] for k in nodes], nodes


def exploit(scene: Scene, checker: CollisionChecker, graph: RegionGraph,
            path_nodes, node_region):
    """Shortest path over region endpoints (and midpoints) taken in path order.

    Returns the refined waypoint list, or None when the layered graph has no
    start-to-goal route (possible only with conservative collision checks);
    ``plan`` then keeps the feasible path.
    """
    layers = [[scene.start]]
    for k in path_nodes[1:-1]:
        r = graph.regions[node_region[k]]
        a, b = region_endpoints(r)
        layers.append([a, region_center(r), b])
    layers.append([scene.goal])
    pts, layer_of = [], []
    for li, layer in enumerate(layers):
        for p in layer:
            pts.append(p)
            layer_of.append(li)
    goal = len(pts) - 1
    dist = {0: 0.0}
    prev = {}
    done = set()
    heap = [(0.0, 0)]
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == goal:
            break
        for v in range(u + 1, len(pts)):
            if layer_of[v] <= layer_of[u] or v in done:
                continue
            nd = d + pts[u].dist(pts[v])
            if nd < dist.get(v, float("inf")) and checker.free(pts[u], pts[v]):
                dist[v] = nd
                prev[v] = u
                heapq.heappush(heap, (nd, v))
    if goal not in done:
        return None
    out = [pts[goal]]
    u = goal
    while u != 0:
        u = prev[u]
        out.append(pts[u])
    return dedupe(out[::-1])


def plan(scene: Scene, cell_size: float, seed, conservative: bool = False) -> PlanResult:
    t0 = time.perf_counter()
    grid = rasterize(scene, cell_size)
    partition = merge_cells(grid)
    graph = extract_regions(partition)
    state, feasible, nodes = explore(scene, partition, graph, seed)
    checker = CollisionChecker(grid, conservative)
    smoothed = exploit(scene, checker, graph, nodes, state.node_region)
    if smoothed is None:
        smoothed = dedupe(feasible)
    elapsed = time.perf_counter() - t0
    return PlanResult(
        planner="nonuniform",
        feasible_path=dedupe(feasible),
        smoothed_path=smoothed,
        tree_size=len(state.tree),
        iterations=len(state.explored_regions),
        collision_checks=checker.calls,
        elapsed=elapsed,
        n_regions=len(graph.regions),
        tree=state.tree,
    )
