"""Exact segment-versus-grid tests.

Obstacle cells are closed squares and the area outside the workspace counts
as obstacle. A segment collides when it enters the interior of the union of
obstacle cells: the open interior of an obstacle cell, an edge shared by two
obstacle cells, or a lattice point surrounded by obstacle cells. It also
collides when it slips diagonally through a lattice point whose two other
cells are both obstacles (a pinch). Running along an edge between a free and
an obstacle cell, or wrapping a single obstacle corner, is allowed.

``conservative=True`` switches to closed cells: any contact with an obstacle
cell counts.
"""

from __future__ import annotations

import math

from .scene import TOL, OccupancyGrid, Point2


def _padded(grid: OccupancyGrid):
    """Occupancy as nested lists with a one-cell obstacle border, cached."""
    pad = grid.__dict__.get("_padded")
    if pad is None:
        n = grid.n
        occ = grid.occupancy.tolist()
        pad = [[True] * (n + 2)]
        for i in range(n):
            pad.append([True] + occ[i] + [True])
        pad.append([True] * (n + 2))
        grid.__dict__["_padded"] = pad
    return pad


def _breakpoints(s: float, ax, ay, bx, by):
    """Sorted parameters in [0, 1] where the segment crosses grid lines."""
    ts = {0.0, 1.0}
    for a, b in ((ax, bx), (ay, by)):
        d = b - a
        if abs(d) <= TOL:
            continue
        lo, hi = (a, b) if a < b else (b, a)
        for k in range(math.ceil((lo - TOL) / s), math.floor((hi + TOL) / s) + 1):
            t = (k * s - a) / d
            if 0.0 < t < 1.0:
                ts.add(t)
    return sorted(ts)


def _classify(s: float, x: float, y: float):
    """(kind, i, j) for a point: kind 0 = open cell (i, j), 1 = vertical edge
    x = i*s, 2 = horizontal edge y = j*s, 3 = lattice point (i*s, j*s)."""
    fx, fy = x / s, y / s
    rx, ry = round(fx), round(fy)
    on_x = abs(fx - rx) * s <= TOL
    on_y = abs(fy - ry) * s <= TOL
    if on_x and on_y:
        return 3, rx, ry
    if on_x:
        return 1, rx, math.floor(fy)
    if on_y:
        return 2, math.floor(fx), ry
    return 0, math.floor(fx), math.floor(fy)


def _point_blocked(pad, kind, i, j) -> bool:
    # pad is offset by one in both axes
    if kind == 0:
        return pad[i + 1][j + 1]
    if kind == 1:
        return pad[i][j + 1] and pad[i + 1][j + 1]
    if kind == 2:
        return pad[i + 1][j] and pad[i + 1][j + 1]
    return pad[i][j] and pad[i + 1][j] and pad[i][j + 1] and pad[i + 1][j + 1]


def _closed_cells_at(grid: OccupancyGrid, x: float, y: float):
    """Cells whose closed square contains (x, y), in index order."""
    s, n = grid.cell_size, grid.n
    fx, fy = x / s, y / s
    ix = {math.floor(fx + TOL / s), math.floor(fx - TOL / s)}
    iy = {math.floor(fy + TOL / s), math.floor(fy - TOL / s)}
    return sorted((i, j) for i in ix for j in iy if 0 <= i < n and 0 <= j < n)


def cells_traversed(grid: OccupancyGrid, a: Point2, b: Point2):
    """Supercover of the closed segment ab in traversal order."""
    ax, ay, bx, by = a.x, a.y, b.x, b.y
    ts = _breakpoints(grid.cell_size, ax, ay, bx, by)
    probes = []
    for k, t in enumerate(ts):
        probes.append(t)
        if k + 1 < len(ts):
            probes.append(0.5 * (t + ts[k + 1]))
    out, seen = [], set()
    for t in probes:
        for c in _closed_cells_at(grid, ax + t * (bx - ax), ay + t * (by - ay)):
            if c not in seen:
                seen.add(c)
                out.append(c)
    return out


def segment_collides(grid: OccupancyGrid, a: Point2, b: Point2, conservative: bool = False) -> bool:
    if conservative:
        occ = grid.occupancy
        return any(occ[c] for c in cells_traversed(grid, a, b))
    s = grid.cell_size
    pad = _padded(grid)
    ax, ay, bx, by = a.x, a.y, b.x, b.y
    if abs(ax - bx) <= TOL and abs(ay - by) <= TOL:
        return _point_blocked(pad, *_classify(s, ax, ay))
    ts = _breakpoints(s, ax, ay, bx, by)
    dx, dy = bx - ax, by - ay
    prev_cell = None
    for k in range(len(ts) - 1):
        t = 0.5 * (ts[k] + ts[k + 1])
        kind, i, j = _classify(s, ax + t * dx, ay + t * dy)
        if _point_blocked(pad, kind, i, j):
            return True
        if kind == 0:
            # diagonal step through a lattice point: the two side cells must
            # not both be obstacles
            if prev_cell is not None and abs(prev_cell[0] - i) == 1 and abs(prev_cell[1] - j) == 1:
                if pad[prev_cell[0] + 1][j + 1] and pad[i + 1][prev_cell[1] + 1]:
                    return True
            prev_cell = (i, j)
        elif kind != 3:
            prev_cell = None
    return False


class CollisionChecker:
    """Counts every segment test it performs."""

    def __init__(self, grid: OccupancyGrid, conservative: bool = False):
        self.grid = grid
        self.conservative = conservative
        self.calls = 0

    def collides(self, a: Point2, b: Point2) -> bool:
        self.calls += 1
        return segment_collides(self.grid, a, b, self.conservative)

    def free(self, a: Point2, b: Point2) -> bool:
        return not self.collides(a, b)
