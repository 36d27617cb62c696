"""Regenerate the bundled scenario files from the ASCII layouts below.

Each layout is a 15 x 15 cell map with 2 m cells, top row first; '#' marks an
obstacle cell. Obstacle rows are written as merged horizontal rectangles.

    python scripts/make_scenarios.py
"""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "nonuniform_rrt" / "scenarios"
CELL = 2.0

# Two barriers, each crossed only through an S-bend one cell wide, plus
# clutter attached to walls (so the free space has a single homotopy class).
NARROW_CORRIDORS = """
. . . . # # # . . . # # # . .
. . . . # # # # . . # # # . .
. . . . # # # . . . # # # . .
. . # . # # # . . . . . # . .
. . # . # # # . # . # . # . .
. . . . . . # . # . # . . . .
. . . . # . # . . . # # # . .
. . . . # . . . . . # # # # .
. . . . # # # . # # # # # . .
. . . . # # # . . . # # # . .
. . . . # # # # . . # # # . .
# # . . # # # . . . # # # . .
. . . . # # # . . # # # # . .
. . . . # # # . . . # # # . .
. . . . # # # . . . # # # . .
"""

SPIRAL = """
. . . . . . . . . . . . . . .
. # # # # # # # # # # # # # .
. # . . . . . . . . . . . # .
. # . # # # # # # # # . . # .
. # . # . . . . . . # . . # .
. # . # . # # # # . # . . # .
. # . # . # . . # . # . . # .
. # . # . # . . # . # . . # .
. # . # . # . . # . # . . # .
. # . # . . . . # . # . . # .
. # . # # # # # # . # . . # .
. # . . . . . . . . # . . # .
. # # # # # # # # # # . . # .
. . . . . . . . . . . . . # .
. . . . . . . . . . . . . # .
"""


def ascii_obstacles(layout, cell=CELL):
    rows = [r.replace(" ", "") for r in layout.strip().splitlines()]
    n = len(rows)
    obstacles = []
    for r, row in enumerate(rows):
        j = n - 1 - r
        i = 0
        while i < n:
            if row[i] != "#":
                i += 1
                continue
            k = i
            while k < n and row[k] == "#":
                k += 1
            obstacles.append({"type": "rect", "min": [i * cell, j * cell],
                              "max": [k * cell, (j + 1) * cell]})
            i = k
    return n * cell, obstacles


def main():
    scenes = {}
    size, obs = ascii_obstacles(NARROW_CORRIDORS)
    scenes["narrow_corridors"] = {"width": size, "height": size, "start": [3, 3],
                                  "goal": [27, 27], "obstacles": obs}
    size, obs = ascii_obstacles(SPIRAL)
    obs += [
        {"type": "circle", "center": [23.0, 17.0], "radius": 0.8},
        {"type": "polygon", "vertices": [[24.5, 10.5], [25.5, 10.5], [25.0, 11.5]]},
    ]
    scenes["spiral"] = {"width": size, "height": size, "start": [14, 14],
                        "goal": [29, 1], "obstacles": obs}
    # box hangs from the top wall, so the only route passes below it and
    # wraps its lower-right corner (16, 12)
    scenes["single_box"] = {"width": 30, "height": 30, "start": [4, 4], "goal": [26, 26],
                            "obstacles": [{"type": "rect", "min": [14, 12], "max": [16, 30]}]}
    scenes["empty"] = {"width": 30, "height": 30, "start": [3, 3], "goal": [27, 27],
                       "obstacles": []}
    OUT.mkdir(parents=True, exist_ok=True)
    for name, data in scenes.items():
        (OUT / f"{name}.json").write_text(json.dumps(data, indent=1) + "\n")
        print("wrote", OUT / f"{name}.json")


if __name__ == "__main__":
    main()
