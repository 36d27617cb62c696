"""Greedy merging of free grid cells into rectangles and extraction of the
boundary segments ("critical regions") shared by neighbouring rectangles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .scene import TOL, OccupancyGrid, Point2


@dataclass(frozen=True)
class CellGroup:
    id: int
    i_range: tuple  # inclusive (i0, i1)
    j_range: tuple  # inclusive (j0, j1)

    @property
    def n_cells(self) -> int:
        return (self.i_range[1] - self.i_range[0] + 1) * (self.j_range[1] - self.j_range[0] + 1)

    def bounds(self, cell_size: float):
        """Rectangle in meters as (x0, y0, x1, y1)."""
        return (self.i_range[0] * cell_size, self.j_range[0] * cell_size,
                (self.i_range[1] + 1) * cell_size, (self.j_range[1] + 1) * cell_size)


@dataclass(frozen=True, eq=False)
class Partition:
    grid: OccupancyGrid
    groups: tuple
    cell_to_group: np.ndarray  # -1 for obstacle cells

    def group_bounds(self, gid: int):
        return self.groups[gid].bounds(self.grid.cell_size)


@dataclass(frozen=True)
class CriticalRegion:
    id: int
    group_a: int
    group_b: int
    segment: tuple  # (Point2, Point2), lexicographically ordered

    @property
    def length(self) -> float:
        return self.segment[0].dist(self.segment[1])

    def contains(self, p: Point2) -> bool:
        (a, b) = self.segment
        return (min(a.x, b.x) - TOL <= p.x <= max(a.x, b.x) + TOL
                and min(a.y, b.y) - TOL <= p.y <= max(a.y, b.y) + TOL)


@dataclass(frozen=True)
class RegionGraph:
    regions: tuple
    regions_of_group: dict  # group id -> tuple of region ids

    def region_between(self, m: int, n: int):
        """Region id shared by groups m and n (either order), or None."""
        for rid in self.regions_of_group.get(m, ()):
            r = self.regions[rid]
            if {r.group_a, r.group_b} == {m, n}:
                return rid
        return None


_DIRECTIONS = ("+i", "-i", "+j", "-j")


def merge_cells(grid: OccupancyGrid) -> Partition:
    """Seeds are taken row-major (j, then i). Each group grows one full strip at
    a time on whichever side yields the largest rectangle, ties resolved in the
    order +i, -i, +j, -j, until no side can grow."""
    n = grid.n
    free = ~grid.occupancy
    owner = np.full((n, n), -1, dtype=int)
    groups = []
    for j in range(n):
        for i in range(n):
            if not free[i, j] or owner[i, j] >= 0:
                continue
            i0 = i1 = i
            j0 = j1 = j

            def open_strip(a0, a1, b0, b1):
                if a0 < 0 or b0 < 0 or a1 >= n or b1 >= n:
                    return False
                return bool(free[a0:a1 + 1, b0:b1 + 1].all()
                            and (owner[a0:a1 + 1, b0:b1 + 1] < 0).all())

            while True:
                w, h = i1 - i0 + 1, j1 - j0 + 1
                options = {
                    "+i": (open_strip(i1 + 1, i1 + 1, j0, j1), (w + 1) * h),
                    "-i": (open_strip(i0 - 1, i0 - 1, j0, j1), (w + 1) * h),
                    "+j": (open_strip(i0, i1, j1 + 1, j1 + 1), w * (h + 1)),
                    "-j": (open_strip(i0, i1, j0 - 1, j0 - 1), w * (h + 1)),
                }
                best = None
                for d in _DIRECTIONS:
                    ok, area = options[d]
                    if ok and (best is None or area > options[best][1]):
                        best = d
                if best is None:
                    break
                if best == "+i":
                    i1 += 1
                elif best == "-i":
                    i0 -= 1
                elif best == "+j":
                    j1 += 1
                else:
                    j0 -= 1
            gid = len(groups)
            owner[i0:i1 + 1, j0:j1 + 1] = gid
            groups.append(CellGroup(gid, (i0, i1), (j0, j1)))
    owner.setflags(write=False)
    return Partition(grid, tuple(groups), owner)


def _shared_segment(ga: CellGroup, gb: CellGroup):
    """Shared boundary of two disjoint cell rectangles in cell coordinates,
    as ((x0, y0), (x1, y1)) or None when they meet in less than an edge."""
    ai0, ai1 = ga.i_range[0], ga.i_range[1] + 1
    aj0, aj1 = ga.j_range[0], ga.j_range[1] + 1
    bi0, bi1 = gb.i_range[0], gb.i_range[1] + 1
    bj0, bj1 = gb.j_range[0], gb.j_range[1] + 1
    if ai1 == bi0 or bi1 == ai0:
        x = ai1 if ai1 == bi0 else ai0
        lo, hi = max(aj0, bj0), min(aj1, bj1)
        if hi > lo:
            return (x, lo), (x, hi)
    if aj1 == bj0 or bj1 == aj0:
        y = aj1 if aj1 == bj0 else aj0
        lo, hi = max(ai0, bi0), min(ai1, bi1)
        if hi > lo:
            return (lo, y), (hi, y)
    return None


def extract_regions(partition: Partition) -> RegionGraph:
    """Regions are numbered in order of (group_a, group_b)."""
    s = partition.grid.cell_size
    groups = partition.groups
    own = partition.cell_to_group
    n = partition.grid.n
    # candidate neighbours from cell adjacency across each group's border
    pairs = set()
    for g in groups:
        (i0, i1), (j0, j1) = g.i_range, g.j_range
        border = []
        if i1 + 1 < n:
            border.append(own[i1 + 1, j0:j1 + 1])
        if j1 + 1 < n:
            border.append(own[i0:i1 + 1, j1 + 1])
        for other in border:
            for h in np.unique(other):
                if h >= 0:
                    pairs.add((min(g.id, int(h)), max(g.id, int(h))))
    regions = []
    by_group = {g.id: [] for g in groups}
    for a, b in sorted(pairs):
        seg = _shared_segment(groups[a], groups[b])
        if seg is None:
            continue
        (x0, y0), (x1, y1) = seg
        rid = len(regions)
        regions.append(CriticalRegion(rid, a, b, (Point2(x0 * s, y0 * s), Point2(x1 * s, y1 * s))))
        by_group[a].append(rid)
        by_group[b].append(rid)
    return RegionGraph(tuple(regions), {k: tuple(v) for k, v in by_group.items()})


def group_containing(partition: Partition, p: Point2):
    """Lowest-id group whose closed rectangle contains p, or None."""
    s = partition.grid.cell_size
    n = partition.grid.n
    best = None
    for fx in {int(np.floor((p.x - TOL) / s)), int(np.floor((p.x + TOL) / s))}:
        for fy in {int(np.floor((p.y - TOL) / s)), int(np.floor((p.y + TOL) / s))}:
            if 0 <= fx < n and 0 <= fy < n:
                g = int(partition.cell_to_group[fx, fy])
                if g >= 0 and (best is None or g < best):
                    best = g
    return best


def region_center(region: CriticalRegion) -> Point2:
    a, b = region.segment
    return Point2(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))


def region_endpoints(region: CriticalRegion):
    a, b = region.segment
    return (a, b) if (a.x, a.y) <= (b.x, b.y) else (b, a)


def partition_to_dict(partition: Partition, graph: RegionGraph) -> dict:
    """JSON-ready dump of groups and regions."""
    s = partition.grid.cell_size
    return {
        "n": partition.grid.n,
        "cell_size": s,
        "groups": [
            {"id": g.id, "i_range": list(g.i_range), "j_range": list(g.j_range),
             "rect": [list(g.bounds(s)[:2]), list(g.bounds(s)[2:])]}
            for g in partition.groups
        ],
        "regions": [
            {"id": r.id, "groups": [r.group_a, r.group_b],
             "segment": [list(r.segment[0]), list(r.segment[1])]}
            for r in graph.regions
        ],
    }
