"""Bundled scenario files (30 m x 30 m workspaces, meant for 2 m cells).

narrow_corridors is an approximation of a cluttered map crossed only through
narrow bends; it is not a reproduction of any published map.
"""

from pathlib import Path

_HERE = Path(__file__).resolve().parent

NAMES = ("empty", "narrow_corridors", "single_box", "spiral")


def bundled_path(name: str):
    """Path of a bundled scenario given ``name`` or ``name.json``; None if unknown."""
    stem = name[:-5] if name.endswith(".json") else name
    if stem not in NAMES:
        return None
    return _HERE / f"{stem}.json"
