import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import grids, random_grid
from nonuniform_rrt.collision import CollisionChecker, cells_traversed, segment_collides
from nonuniform_rrt.scene import OccupancyGrid, Point2


def clip(a, b, box):
    """Liang-Barsky: parameter interval of segment ab inside a closed box, or None."""
    x0, y0, x1, y1 = box
    t0, t1 = 0.0, 1.0
    dx, dy = b.x - a.x, b.y - a.y
    for p, q in ((-dx, a.x - x0), (dx, x1 - a.x), (-dy, a.y - y0), (dy, y1 - a.y)):
        if p == 0:
            if q < -1e-12:
                return None
            continue
        r = q / p
        if p < 0:
            t0 = max(t0, r)
        else:
            t1 = min(t1, r)
    return (t0, t1) if t0 <= t1 + 1e-12 else None


def supercover_oracle(grid, a, b):
    return {(i, j) for i in range(grid.n) for j in range(grid.n)
            if clip(a, b, grid.cell_bounds(i, j)) is not None}


def interior_oracle(grid, a, b):
    """True when ab passes through the open interior of some obstacle cell or
    leaves the workspace. Exact for segments in general position."""
    size = grid.size
    if min(a.x, a.y, b.x, b.y) < 0 or max(a.x, a.y, b.x, b.y) > size:
        return True
    for i, j in zip(*np.nonzero(grid.occupancy)):
        box = grid.cell_bounds(i, j)
        iv = clip(a, b, box)
        if iv is None or iv[1] - iv[0] <= 1e-12:
            continue
        t = 0.5 * (iv[0] + iv[1])
        x, y = a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)
        if box[0] < x < box[2] and box[1] < y < box[3]:
            return True
    return False


def grid_from(rows):
    """Build a grid from a picture: rows listed top (high j) to bottom, '#' = obstacle."""
    n = len(rows)
    occ = np.zeros((n, n), bool)
    for r, line in enumerate(rows):
        for i, ch in enumerate(line):
            occ[i, n - 1 - r] = ch == "#"
    return OccupancyGrid.from_array(occ)


# -- supercover ------------------------------------------------------------

@pytest.mark.parametrize("seed", range(6))
def test_supercover_matches_clip_oracle(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 33))
    grid = random_grid(rng, n, 0.0, float(rng.choice([0.5, 1.0, 2.0])))
    for _ in range(40):
        a = Point2(*rng.uniform(0, grid.size, 2))
        b = Point2(*rng.uniform(0, grid.size, 2))
        assert set(cells_traversed(grid, a, b)) == supercover_oracle(grid, a, b)


def test_supercover_on_lattice_aligned_segments():
    grid = OccupancyGrid.from_array(np.zeros((6, 6), bool))
    cases = [((0, 0), (6, 6)), ((1, 1), (1, 5)), ((0, 2), (6, 2)), ((2, 2), (2, 2)),
             ((0.5, 0.5), (5.5, 3.5)), ((6, 0), (0, 6))]
    for a, b in cases:
        a, b = Point2(*a), Point2(*b)
        assert set(cells_traversed(grid, a, b)) == supercover_oracle(grid, a, b)


def test_supercover_traversal_order_is_connected():
    grid = OccupancyGrid.from_array(np.zeros((20, 20), bool))
    cells = cells_traversed(grid, Point2(0.3, 0.7), Point2(19.2, 13.9))
    assert cells[0] == (0, 0) and cells[-1] == (19, 13)
    for (i0, j0), (i1, j1) in zip(cells, cells[1:]):
        assert max(abs(i1 - i0), abs(j1 - j0)) == 1


# -- open-interior semantics -------------------------------------------------

@pytest.mark.parametrize("seed", range(8))
def test_collision_matches_interior_oracle(seed):
    rng = np.random.default_rng(100 + seed)
    n = int(rng.integers(3, 33))
    grid = random_grid(rng, n, rng.uniform(0.05, 0.5), 1.0)
    for _ in range(60):
        a = Point2(*rng.uniform(0, n, 2))
        b = a if rng.random() < 0.05 else Point2(*rng.uniform(0, n, 2))
        assert segment_collides(grid, a, b) == interior_oracle(grid, a, b)


def test_grazing_a_free_obstacle_edge_is_allowed():
    grid = grid_from(["...",
                      ".#.",
                      "..."])
    a, b = Point2(0.0, 1.0), Point2(3.0, 1.0)
    assert not segment_collides(grid, a, b)
    # dense sampling agrees: no sample lands in the open obstacle cell
    t = np.linspace(0, 1, 100_000)
    xs, ys = a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)
    assert not ((xs > 1) & (xs < 2) & (ys > 1) & (ys < 2)).any()
    assert segment_collides(grid, a, b, conservative=True)


def test_edge_between_two_obstacle_cells_collides():
    grid = grid_from(["...",
                      "##.",
                      "..."])
    # x = 1 runs along the edge shared by the two obstacle cells
    assert segment_collides(grid, Point2(1.0, 1.2), Point2(1.0, 1.8))
    grid2 = grid_from(["##.",
                       "##.",
                       "..."])
    assert segment_collides(grid2, Point2(1.0, 1.0), Point2(1.0, 3.0))
    assert not segment_collides(grid2, Point2(2.0, 0.0), Point2(2.0, 3.0))


def test_wrapping_a_single_corner_is_allowed():
    grid = grid_from(["...",
                      ".#.",
                      "..."])
    assert not segment_collides(grid, Point2(0.0, 2.0), Point2(2.0, 0.0))
    assert not segment_collides(grid, Point2(1.0, 0.0), Point2(3.0, 2.0))


def test_diagonal_pinch_collides():
    # obstacle cells (0,1) and (1,0) meet only at the lattice point (1,1);
    # slipping diagonally between them is blocked
    grid = grid_from(["...",
                      "#..",
                      ".#."])
    assert segment_collides(grid, Point2(0.5, 0.5), Point2(1.5, 1.5))
    assert not segment_collides(grid, Point2(1.5, 1.5), Point2(2.5, 2.5))


def test_leaving_the_workspace_collides():
    grid = OccupancyGrid.from_array(np.zeros((4, 4), bool))
    assert segment_collides(grid, Point2(1, 1), Point2(5, 1))
    assert not segment_collides(grid, Point2(0, 0), Point2(4, 0))  # along the boundary
    assert not segment_collides(grid, Point2(0, 0), Point2(4, 4))


def test_degenerate_segment_is_a_point_test():
    grid = grid_from(["..",
                      "#."])
    assert segment_collides(grid, Point2(0.5, 0.5), Point2(0.5, 0.5))
    assert not segment_collides(grid, Point2(1.0, 0.5), Point2(1.0, 0.5))
    assert not segment_collides(grid, Point2(1.5, 1.5), Point2(1.5, 1.5))


def test_checker_counts_calls():
    grid = OccupancyGrid.from_array(np.zeros((3, 3), bool))
    ch = CollisionChecker(grid)
    ch.collides(Point2(0, 0), Point2(1, 1))
    ch.free(Point2(0, 0), Point2(2, 1))
    assert ch.calls == 2


coord = st.floats(0, 1, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(grids(min_n=2), coord, coord, coord, coord, st.booleans())
def test_collision_is_symmetric(grid, ax, ay, bx, by, cons):
    a = Point2(ax * grid.size, ay * grid.size)
    b = Point2(bx * grid.size, by * grid.size)
    assert segment_collides(grid, a, b, cons) == segment_collides(grid, b, a, cons)


@settings(max_examples=200, deadline=None)
@given(grids(min_n=2), coord, coord, coord, coord)
def test_conservative_mode_is_stricter(grid, ax, ay, bx, by):
    a = Point2(ax * grid.size, ay * grid.size)
    b = Point2(bx * grid.size, by * grid.size)
    if segment_collides(grid, a, b):
        assert segment_collides(grid, a, b, conservative=True)
    cover = cells_traversed(grid, a, b)
    assert segment_collides(grid, a, b, conservative=True) == any(grid.occupancy[c] for c in cover)


@settings(max_examples=100, deadline=None)
@given(grids(min_n=2), st.lists(st.tuples(coord, coord), min_size=3, max_size=3))
def test_free_segments_compose(grid, pts):
    # a free segment stays free on any sub-segment
    a, b = (Point2(x * grid.size, y * grid.size) for x, y in pts[:2])
    if not segment_collides(grid, a, b):
        t = pts[2][0]
        m = Point2(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
        assert not segment_collides(grid, a, m)
        assert not segment_collides(grid, m, b)
