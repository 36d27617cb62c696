"""Deterministic SVG 1.1 rendering of scenes, partitions, trees and paths.

Colours: search tree blue, feasible path red, smoothed path green.
"""

from __future__ import annotations

from xml.sax.saxutils import quoteattr

from .scene import Circle, Rect, Scene

SCALE = 20.0  # pixels per meter
MARGIN = 10.0


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


class _Canvas:
    def __init__(self, scene: Scene):
        self.h = scene.height
        self.lines = []

    def x(self, v):
        return _fmt(MARGIN + v * SCALE)

    def y(self, v):
        return _fmt(MARGIN + (self.h - v) * SCALE)

    def add(self, text):
        self.lines.append(text)


def render_svg(scene: Scene, partition=None, graph=None, result=None) -> str:
    c = _Canvas(scene)
    w = _fmt(2 * MARGIN + scene.width * SCALE)
    h = _fmt(2 * MARGIN + scene.height * SCALE)
    c.add('<?xml version="1.0" encoding="UTF-8"?>')
    c.add(f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
          f'viewBox="0 0 {w} {h}">')
    c.add(f'<rect class="workspace" x="{c.x(0)}" y="{c.y(scene.height)}" '
          f'width="{_fmt(scene.width * SCALE)}" height="{_fmt(scene.height * SCALE)}" '
          'fill="white" stroke="black" stroke-width="2"/>')

    for ob in scene.obstacles:
        if isinstance(ob, Rect):
            c.add(f'<rect class="obstacle" x="{c.x(ob.min.x)}" y="{c.y(ob.max.y)}" '
                  f'width="{_fmt((ob.max.x - ob.min.x) * SCALE)}" '
                  f'height="{_fmt((ob.max.y - ob.min.y) * SCALE)}" fill="dimgray"/>')
        elif isinstance(ob, Circle):
            c.add(f'<circle class="obstacle" cx="{c.x(ob.center.x)}" cy="{c.y(ob.center.y)}" '
                  f'r="{_fmt(ob.radius * SCALE)}" fill="dimgray"/>')
        else:
            pts = " ".join(f"{c.x(v.x)},{c.y(v.y)}" for v in ob.vertices)
            c.add(f'<polygon class="obstacle" points="{pts}" fill="dimgray"/>')

    if partition is not None:
        s = partition.grid.cell_size
        for g in partition.groups:
            x0, y0, x1, y1 = g.bounds(s)
            c.add(f'<rect class="group" x="{c.x(x0)}" y="{c.y(y1)}" width="{_fmt((x1 - x0) * SCALE)}" '
                  f'height="{_fmt((y1 - y0) * SCALE)}" fill="none" stroke="lightgray" '
                  f'stroke-width="1"><title>{g.id}</title></rect>')
    if graph is not None:
        for r in graph.regions:
            a, b = r.segment
            c.add(f'<line class="region" x1="{c.x(a.x)}" y1="{c.y(a.y)}" x2="{c.x(b.x)}" '
                  f'y2="{c.y(b.y)}" stroke="orange" stroke-width="2"/>')

    if result is not None:
        tree = result.tree
        if tree is not None:
            for u, v in tree.edges():
                a, b = tree.points[u], tree.points[v]
                c.add(f'<line class="tree-edge" x1="{c.x(a.x)}" y1="{c.y(a.y)}" x2="{c.x(b.x)}" '
                      f'y2="{c.y(b.y)}" stroke="blue" stroke-width="1"/>')
        for cls, path, colour in (("feasible-path", result.feasible_path, "red"),
                                  ("smoothed-path", result.smoothed_path, "green")):
            if path:
                pts = " ".join(f"{c.x(p.x)},{c.y(p.y)}" for p in path)
                c.add(f'<polyline class={quoteattr(cls)} points="{pts}" fill="none" '
                      f'stroke="{colour}" stroke-width="3"/>')

    for name, p, colour in (("start", scene.start, "black"), ("goal", scene.goal, "magenta")):
        c.add(f'<circle class="{name}" cx="{c.x(p.x)}" cy="{c.y(p.y)}" r="5" fill="{colour}"/>')
    c.add("</svg>")
    return "\n".join(c.lines) + "\n"
