"""Continuous planning scene, JSON loading and occupancy-grid rasterization.

Obstacles are closed point sets. A grid cell is an obstacle cell when an
obstacle overlaps it with positive area, so an obstacle that only touches a
cell along an edge or at a corner leaves that cell free.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

TOL = 1e-9


class SceneError(ValueError):
    """Raised for malformed or invalid scene descriptions."""


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise SceneError(f"non-finite point ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y

    def dist(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Rect:
    min: Point2
    max: Point2

    def __post_init__(self):
        if not (self.min.x < self.max.x and self.min.y < self.max.y):
            raise SceneError("rect requires min < max componentwise")

    def contains(self, p: Point2) -> bool:
        return (self.min.x - TOL <= p.x <= self.max.x + TOL
                and self.min.y - TOL <= p.y <= self.max.y + TOL)

    def overlaps_cell(self, x0, y0, x1, y1) -> bool:
        return (min(x1, self.max.x) - max(x0, self.min.x) > TOL
                and min(y1, self.max.y) - max(y0, self.min.y) > TOL)


@dataclass(frozen=True)
class Circle:
    center: Point2
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise SceneError("circle radius must be positive")

    def contains(self, p: Point2) -> bool:
        return self.center.dist(p) <= self.radius + TOL

    def overlaps_cell(self, x0, y0, x1, y1) -> bool:
        # closest point of the closed cell to the center; strict inequality
        # means the disc enters the open cell
        cx = min(max(self.center.x, x0), x1)
        cy = min(max(self.center.y, y0), y1)
        return math.hypot(cx - self.center.x, cy - self.center.y) < self.radius - TOL


@dataclass(frozen=True)
class Polygon:
    vertices: tuple

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise SceneError("polygon needs at least 3 vertices")
        if _self_intersects(self.vertices):
            raise SceneError("polygon is self-intersecting")
        if abs(_signed_area([(v.x, v.y) for v in self.vertices])) <= TOL:
            raise SceneError("polygon has zero area")

    def contains(self, p: Point2) -> bool:
        vs = self.vertices
        n = len(vs)
        for k in range(n):
            if _point_segment_dist(p, vs[k], vs[(k + 1) % n]) <= TOL:
                return True
        inside = False
        for k in range(n):
            a, b = vs[k], vs[(k + 1) % n]
            if (a.y > p.y) != (b.y > p.y):
                xc = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
                if p.x < xc:
                    inside = not inside
        return inside

    def overlaps_cell(self, x0, y0, x1, y1) -> bool:
        # bounding-box separating axes first, then exact clipped area
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        if min(xs) >= x1 - TOL or max(xs) <= x0 + TOL:
            return False
        if min(ys) >= y1 - TOL or max(ys) <= y0 + TOL:
            return False
        clipped = _clip_to_box([(v.x, v.y) for v in self.vertices], x0, y0, x1, y1)
        return abs(_signed_area(clipped)) > TOL * (x1 - x0)


Obstacle = Union[Rect, Circle, Polygon]


@dataclass(frozen=True)
class Scene:
    width: float
    height: float
    start: Point2
    goal: Point2
    obstacles: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not (self.width > 0 and self.height > 0):
            raise SceneError("workspace width and height must be positive")
        if abs(self.width - self.height) > TOL:
            raise SceneError(
                f"workspace must be square, got {self.width} x {self.height}")
        for name in ("start", "goal"):
            if not point_is_free(self, getattr(self, name)):
                raise SceneError(f"{name} {tuple(getattr(self, name))} is "
                                 "outside the workspace or inside an obstacle")


@dataclass(frozen=True, eq=False)
class OccupancyGrid:
    """``occupancy[i, j]`` is True for an obstacle cell; i indexes x, j indexes y."""

    n: int
    cell_size: float
    occupancy: np.ndarray

    def __post_init__(self):
        if self.n < 1 or self.occupancy.shape != (self.n, self.n):
            raise ValueError("occupancy must be an n x n array with n >= 1")
        self.occupancy.setflags(write=False)

    @property
    def size(self) -> float:
        return self.n * self.cell_size

    @classmethod
    def from_array(cls, occupancy, cell_size: float = 1.0) -> "OccupancyGrid":
        occ = np.array(occupancy, dtype=bool)
        return cls(occ.shape[0], float(cell_size), occ)

    def cell_bounds(self, i: int, j: int):
        s = self.cell_size
        return i * s, j * s, (i + 1) * s, (j + 1) * s

    def __eq__(self, other):
        return (isinstance(other, OccupancyGrid) and self.n == other.n
                and self.cell_size == other.cell_size
                and np.array_equal(self.occupancy, other.occupancy))

    __hash__ = None


def point_is_free(scene: Scene, p: Point2) -> bool:
    if not (-TOL <= p.x <= scene.width + TOL and -TOL <= p.y <= scene.height + TOL):
        return False
    return not any(ob.contains(p) for ob in scene.obstacles)


def rasterize(scene: Scene, cell_size: float) -> OccupancyGrid:
    if not cell_size > 0:
        raise SceneError("cell_size must be positive")
    ratio = scene.width / cell_size
    n = round(ratio)
    if n < 1 or abs(ratio - n) > TOL:
        raise SceneError(
            f"workspace width {scene.width} is not a multiple of cell size {cell_size}")
    occ = np.zeros((n, n), dtype=bool)
    for ob in scene.obstacles:
        bx0, by0, bx1, by1 = _bbox(ob)
        i0 = max(0, int(math.floor(bx0 / cell_size)) - 1)
        i1 = min(n - 1, int(math.floor(bx1 / cell_size)) + 1)
        j0 = max(0, int(math.floor(by0 / cell_size)) - 1)
        j1 = min(n - 1, int(math.floor(by1 / cell_size)) + 1)
        for i in range(i0, i1 + 1):
            for j in range(j0, j1 + 1):
                if occ[i, j]:
                    continue
                if ob.overlaps_cell(i * cell_size, j * cell_size,
                                    (i + 1) * cell_size, (j + 1) * cell_size):
                    occ[i, j] = True
    return OccupancyGrid(n, float(cell_size), occ)


# -- loading -----------------------------------------------------------------

_SCENE_KEYS = {"width", "height", "start", "goal", "obstacles"}
_OBSTACLE_KEYS = {
    "rect": {"type", "min", "max"},
    "circle": {"type", "center", "radius"},
    "polygon": {"type", "vertices"},
}


def _point(value, what) -> Point2:
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(c, (int, float)) and not isinstance(c, bool)
                       for c in value)):
        raise SceneError(f"{what} must be a pair of numbers, got {value!r}")
    return Point2(float(value[0]), float(value[1]))


def _number(value, what) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise SceneError(f"{what} must be a number, got {value!r}")
    return float(value)


def _obstacle(spec, k) -> Obstacle:
    if not isinstance(spec, dict):
        raise SceneError(f"obstacle {k} must be an object")
    kind = spec.get("type")
    if kind not in _OBSTACLE_KEYS:
        raise SceneError(f"obstacle {k}: unknown type {kind!r}")
    extra = set(spec) - _OBSTACLE_KEYS[kind]
    missing = _OBSTACLE_KEYS[kind] - set(spec)
    if extra:
        raise SceneError(f"obstacle {k}: unknown fields {sorted(extra)}")
    if missing:
        raise SceneError(f"obstacle {k}: missing fields {sorted(missing)}")
    if kind == "rect":
        return Rect(_point(spec["min"], "rect.min"), _point(spec["max"], "rect.max"))
    if kind == "circle":
        return Circle(_point(spec["center"], "circle.center"),
                      _number(spec["radius"], "circle.radius"))
    verts = spec["vertices"]
    if not isinstance(verts, list):
        raise SceneError(f"obstacle {k}: vertices must be a list")
    return Polygon(tuple(_point(v, "polygon vertex") for v in verts))


def scene_from_dict(data: dict) -> Scene:
    if not isinstance(data, dict):
        raise SceneError("scene must be a JSON object")
    extra = set(data) - _SCENE_KEYS
    missing = _SCENE_KEYS - set(data)
    if extra:
        raise SceneError(f"unknown scene fields {sorted(extra)}")
    if missing:
        raise SceneError(f"missing scene fields {sorted(missing)}")
    if not isinstance(data["obstacles"], list):
        raise SceneError("obstacles must be a list")
    return Scene(
        width=_number(data["width"], "width"),
        height=_number(data["height"], "height"),
        start=_point(data["start"], "start"),
        goal=_point(data["goal"], "goal"),
        obstacles=tuple(_obstacle(o, k) for k, o in enumerate(data["obstacles"])),
    )


def scene_to_dict(scene: Scene) -> dict:
    obstacles = []
    for ob in scene.obstacles:
        if isinstance(ob, Rect):
            obstacles.append({"type": "rect", "min": list(ob.min), "max": list(ob.max)})
        elif isinstance(ob, Circle):
            obstacles.append({"type": "circle", "center": list(ob.center),
                              "radius": ob.radius})
        else:
            obstacles.append({"type": "polygon",
                              "vertices": [list(v) for v in ob.vertices]})
    return {"width": scene.width, "height": scene.height,
            "start": list(scene.start), "goal": list(scene.goal),
            "obstacles": obstacles}


def load_scene(path) -> Scene:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise FileNotFoundError(f"scene file not found: {path}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneError(f"{path}: malformed JSON ({exc})") from exc
    return scene_from_dict(data)


# -- geometry helpers ----------------------------------------------------------

def _bbox(ob: Obstacle):
    if isinstance(ob, Rect):
        return ob.min.x, ob.min.y, ob.max.x, ob.max.y
    if isinstance(ob, Circle):
        r = ob.radius
        return ob.center.x - r, ob.center.y - r, ob.center.x + r, ob.center.y + r
    xs = [v.x for v in ob.vertices]
    ys = [v.y for v in ob.vertices]
    return min(xs), min(ys), max(xs), max(ys)


def _signed_area(pts) -> float:
    if len(pts) < 3:
        return 0.0
    s = 0.0
    for k in range(len(pts)):
        x0, y0 = pts[k]
        x1, y1 = pts[(k + 1) % len(pts)]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def _clip_to_box(pts, x0, y0, x1, y1):
    """Sutherland-Hodgman clip; the area of the result is exact for simple
    polygons even when concavity produces degenerate connecting edges."""

    def clip(poly, inside, cross):
        out = []
        for k in range(len(poly)):
            cur, prev = poly[k], poly[k - 1]
            if inside(cur):
                if not inside(prev):
                    out.append(cross(prev, cur))
                out.append(cur)
            elif inside(prev):
                out.append(cross(prev, cur))
        return out

    def at_x(xv):
        return lambda p, q: (xv, p[1] + (q[1] - p[1]) * (xv - p[0]) / (q[0] - p[0]))

    def at_y(yv):
        return lambda p, q: (p[0] + (q[0] - p[0]) * (yv - p[1]) / (q[1] - p[1]), yv)

    for inside, cross in (
        (lambda p: p[0] >= x0, at_x(x0)),
        (lambda p: p[0] <= x1, at_x(x1)),
        (lambda p: p[1] >= y0, at_y(y0)),
        (lambda p: p[1] <= y1, at_y(y1)),
    ):
        pts = clip(pts, inside, cross)
        if not pts:
            break
    return pts


def _point_segment_dist(p: Point2, a: Point2, b: Point2) -> float:
    dx, dy = b.x - a.x, b.y - a.y
    L2 = dx * dx + dy * dy
    t = 0.0 if L2 == 0 else max(0.0, min(1.0, ((p.x - a.x) * dx + (p.y - a.y) * dy) / L2))
    return math.hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy))


def _orient(a, b, c) -> float:
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def _segments_cross(a, b, c, d) -> bool:
    d1, d2 = _orient(c, d, a), _orient(c, d, b)
    d3, d4 = _orient(a, b, c), _orient(a, b, d)
    if ((d1 > TOL and d2 < -TOL) or (d1 < -TOL and d2 > TOL)) and \
            ((d3 > TOL and d4 < -TOL) or (d3 < -TOL and d4 > TOL)):
        return True
    # touching or collinear overlap counts as self-intersection for non-adjacent edges
    return (_point_segment_dist(a, c, d) <= TOL or _point_segment_dist(b, c, d) <= TOL
            or _point_segment_dist(c, a, b) <= TOL or _point_segment_dist(d, a, b) <= TOL)


def _self_intersects(vs) -> bool:
    n = len(vs)
    for k in range(n):
        a, b = vs[k], vs[(k + 1) % n]
        if a.dist(b) <= TOL:
            return True
        for m in range(k + 1, n):
            if m == k or (m + 1) % n == k or m == (k + 1) % n:
                continue
            if _segments_cross(a, b, vs[m], vs[(m + 1) % n]):
                return True
    return False
