import numpy as np
import pytest
from hypothesis import strategies as st

from nonuniform_rrt.nonuniform import ExplorationState, sample_step
from nonuniform_rrt.partition import extract_regions, merge_cells
from nonuniform_rrt.scene import OccupancyGrid, Point2, load_scene
from nonuniform_rrt.scenarios import NAMES, bundled_path


def random_grid(rng, n, density, cell_size=1.0):
    return OccupancyGrid.from_array(rng.random((n, n)) < density, cell_size)


@st.composite
def grids(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    size = draw(st.sampled_from([0.5, 1.0, 2.0]))
    return OccupancyGrid.from_array(np.array(bits).reshape(n, n), size)


def point_on_segment(p: Point2, a: Point2, b: Point2, tol=1e-9) -> bool:
    cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
    if abs(cross) > tol * max(1.0, a.dist(b)):
        return False
    return (min(a.x, b.x) - tol <= p.x <= max(a.x, b.x) + tol
            and min(a.y, b.y) - tol <= p.y <= max(a.y, b.y) + tol)


@pytest.fixture(scope="session")
def bundled():
    return {name: load_scene(bundled_path(name)) for name in NAMES}


def random_state(rng):
    """A partially explored state on a random grid, or None if the draw is unusable."""
    n = int(rng.integers(4, 20))
    grid = random_grid(rng, n, rng.uniform(0, 0.4))
    part = merge_cells(grid)
    graph = extract_regions(part)
    free = np.argwhere(~grid.occupancy)
    if len(free) == 0:
        return None
    i, j = free[rng.integers(len(free))]
    start = Point2(i + rng.random(), j + rng.random())
    state = ExplorationState.start(part, graph, start, int(rng.integers(1 << 30)))
    for _ in range(int(rng.integers(0, 12))):
        if not state.frontier:
            break
        sample_step(state, graph, part)
    return part, graph, state


def regions_oracle(state, graph):
    groups = set()
    for k in range(len(state.tree)):
        rid = state.node_region[k]
        if rid is None:
            groups.add(state.node_group[k])
        else:
            groups |= {graph.regions[rid].group_a, graph.regions[rid].group_b}
    return {r.id for r in graph.regions
            if r.id not in state.explored_regions and ({r.group_a, r.group_b} & groups)}


def vertices_oracle(state, graph, groups):
    out = set()
    for k in range(len(state.tree)):
        rid = state.node_region[k]
        mine = ({state.node_group[k]} if rid is None
                else {graph.regions[rid].group_a, graph.regions[rid].group_b})
        if mine & set(groups):
            out.add(k)
    return out


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[key])
