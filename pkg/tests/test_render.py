import xml.etree.ElementTree as ET

from nonuniform_rrt.nonuniform import plan
from nonuniform_rrt.partition import extract_regions, merge_cells
from nonuniform_rrt.render import render_svg
from nonuniform_rrt.scene import rasterize

NS = "{http://www.w3.org/2000/svg}"


def elements(svg, cls):
    root = ET.fromstring(svg.encode())
    return [e for e in root.iter() if e.get("class") == cls]


def full_render(scene, seed=0):
    part = merge_cells(rasterize(scene, 2.0))
    graph = extract_regions(part)
    return render_svg(scene, part, graph, plan(scene, 2.0, seed)), part, graph


def test_element_counts_match_inputs(bundled):
    scene = bundled["spiral"]
    svg, part, graph = full_render(scene)
    res = plan(scene, 2.0, 0)
    assert len(elements(svg, "obstacle")) == len(scene.obstacles)
    assert len(elements(svg, "group")) == len(part.groups)
    assert len(elements(svg, "region")) == len(graph.regions)
    assert len(elements(svg, "tree-edge")) == res.tree_size - 1
    assert len(elements(svg, "feasible-path")) == 1
    assert len(elements(svg, "smoothed-path")) == 1
    assert [g.find(NS + "title").text for g in elements(svg, "group")] == \
        [str(g.id) for g in part.groups]


def test_obstacle_shapes(bundled):
    svg = render_svg(bundled["spiral"])
    tags = {e.tag.removeprefix(NS) for e in elements(svg, "obstacle")}
    assert tags == {"rect", "circle", "polygon"}


def test_empty_scene_shows_one_group(bundled):
    svg, part, _ = full_render(bundled["empty"])
    assert len(elements(svg, "group")) == 1
    assert elements(svg, "region") == []


def test_render_is_deterministic(bundled):
    assert full_render(bundled["narrow_corridors"], 4)[0] == full_render(bundled["narrow_corridors"], 4)[0]


def test_y_axis_points_up(bundled):
    scene = bundled["single_box"]
    svg = render_svg(scene)
    start = elements(svg, "start")[0]
    goal = elements(svg, "goal")[0]
    # the goal sits higher in the world, so lower on the canvas
    assert float(goal.get("cy")) < float(start.get("cy"))
