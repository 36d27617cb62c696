"""Non-uniform sampling RRT* over critical regions of a rectangular cell
decomposition, with a uniform RRT* baseline."""

from .baseline import plan_uniform, shortcut_smooth
from .collision import CollisionChecker, cells_traversed, segment_collides
from .nonuniform import explore, exploit, nearby_regions, nearby_vertices, plan, sample_step
from .partition import (extract_regions, group_containing, merge_cells, region_center,
                        region_endpoints)
from .scene import OccupancyGrid, Point2, Scene, SceneError, load_scene, point_is_free, rasterize
from .tree import NoPathError, PlanResult, SearchTree, choose_parent_and_rewire, nearest, path_length

__all__ = [
    "CollisionChecker", "NoPathError", "OccupancyGrid", "PlanResult", "Point2", "Scene",
    "SceneError", "SearchTree", "cells_traversed", "choose_parent_and_rewire", "explore",
    "exploit", "extract_regions", "group_containing", "load_scene", "merge_cells",
    "nearby_regions", "nearby_vertices", "nearest", "path_length", "plan", "plan_uniform",
    "point_is_free", "rasterize", "region_center", "region_endpoints", "sample_step",
    "segment_collides", "shortcut_smooth",
]
