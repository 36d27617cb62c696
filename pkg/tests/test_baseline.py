import numpy as np
import pytest

from nonuniform_rrt.baseline import plan_uniform, shortcut_smooth
from nonuniform_rrt.collision import segment_collides
from nonuniform_rrt.nonuniform import plan
from nonuniform_rrt.scene import OccupancyGrid, Point2, Rect, Scene, rasterize
from nonuniform_rrt.tree import NoPathError, path_length


def empty_grid(n=15, s=2.0):
    return OccupancyGrid.from_array(np.zeros((n, n), bool), s)


@pytest.mark.parametrize("seed", range(3))
def test_empty_scene_is_near_straight(bundled, seed):
    scene = bundled["empty"]
    res = plan_uniform(scene, rasterize(scene, 2.0), seed, max_iters=1500)
    straight = scene.start.dist(scene.goal)
    assert res.smoothed_length <= 1.05 * straight
    assert res.smoothed_length <= res.feasible_length + 1e-9


def test_walled_scene_raises():
    scene = Scene(30.0, 30.0, Point2(3, 3), Point2(27, 27),
                  (Rect(Point2(14, 0), Point2(16, 30)),))
    with pytest.raises(NoPathError, match="300 iterations"):
        plan_uniform(scene, rasterize(scene, 2.0), 0, max_iters=300)


@pytest.mark.parametrize("shrinking", [False, True])
def test_tree_edges_respect_step_and_obstacles(bundled, shrinking):
    scene = bundled["single_box"]
    grid = rasterize(scene, 2.0)
    hist = []
    res = plan_uniform(scene, grid, 3, max_iters=3000, step=4.0, shrinking_ball=shrinking,
                       history=hist)
    t = res.tree
    for u, v in t.edges():
        assert t.points[u].dist(t.points[v]) <= 4.0 + 1e-9
        assert not segment_collides(grid, t.points[u], t.points[v])
    for path in (res.feasible_path, res.smoothed_path):
        assert path[0] == scene.start and path[-1] == scene.goal
        for a, b in zip(path, path[1:]):
            assert not segment_collides(grid, a, b)
    # the best cost only ever improves
    costs = [c for _, c in hist]
    assert costs and all(b < a for a, b in zip(costs, costs[1:]))
    assert costs[-1] == pytest.approx(res.feasible_length)
    assert res.iterations == 3000 and res.tree_size <= 3001


def test_target_length_stops_early(bundled):
    scene = bundled["empty"]
    target = 1.02 * scene.start.dist(scene.goal)
    res = plan_uniform(scene, rasterize(scene, 2.0), 1, max_iters=20000, target_length=target)
    assert res.smoothed_length <= target
    assert res.iterations < 20000


def test_same_seed_same_tree(bundled):
    scene = bundled["spiral"]
    grid = rasterize(scene, 2.0)
    runs = []
    for _ in range(2):
        try:
            runs.append(plan_uniform(scene, grid, 9, max_iters=4000))
        except NoPathError:
            runs.append(None)
    if runs[0] is None:
        assert runs[1] is None
    else:
        assert runs[0].tree.edges() == runs[1].tree.edges()
        assert runs[0].smoothed_path == runs[1].smoothed_path


def test_invalid_parameters():
    scene = Scene(10.0, 10.0, Point2(1, 1), Point2(9, 9))
    with pytest.raises(ValueError):
        plan_uniform(scene, empty_grid(5), 0, step=0)
    with pytest.raises(ValueError):
        plan_uniform(scene, empty_grid(5), 0, goal_bias=1.0)


# -- shortcut smoothing ------------------------------------------------------

def test_straight_path_is_unchanged():
    path = [Point2(1, 1), Point2(10, 10)]
    assert shortcut_smooth(empty_grid(), path, np.random.default_rng(0)) == path


def test_dogleg_collapses_to_chord():
    path = [Point2(1, 1), Point2(1, 20), Point2(20, 20), Point2(25, 5)]
    out = shortcut_smooth(empty_grid(), path, np.random.default_rng(0))
    chord = path[0].dist(path[-1])
    assert path_length(out) <= 1.01 * chord


@pytest.mark.parametrize("seed", range(10))
def test_smoothing_never_lengthens_or_collides(bundled, seed):
    scene = bundled["narrow_corridors"]
    grid = rasterize(scene, 2.0)
    rng = np.random.default_rng(seed)
    # the region-tree path is free but far from taut
    base = plan(scene, 2.0, seed).feasible_path
    out = shortcut_smooth(grid, base, rng)
    assert path_length(out) <= path_length(base) + 1e-9
    assert out[0] == base[0] and out[-1] == base[-1]
    for a, b in zip(out, out[1:]):
        assert not segment_collides(grid, a, b)
