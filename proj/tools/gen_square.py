#!/usr/bin/env python3
"""Regenerates the SYS-SQUARE corpus files (N x N counter-free square builders).

Layout per N: seed S at the origin, bottom row B1..B(N-1) chained by
strength-2 glues, left column L1..L(N-1) likewise, and one filler F that
needs a west 'h' bond plus a south 'v' bond (temperature 2), so the interior
fills as a staircase and the unique terminal assembly is the full square.

Usage: tools/gen_square.py [corpus-dir]
"""

import json
import sys

SIDES = ("north", "east", "south", "west")


def tile_lines(tile: dict) -> str:
    lines = [f'      "name": {json.dumps(tile["name"])}']
    for side in SIDES:
        if side in tile:
            label, strength = tile[side]
            lines.append(f'      "{side}": [{json.dumps(label)}, {strength}]')
    return "    {\n" + ",\n".join(lines) + "\n    }"


def tileset(n: int) -> str:
    tiles = [{"name": "S", "north": ["l1", 2], "east": ["b1", 2]}]
    for k in range(1, n):
        tile = {"name": f"B{k}", "north": ["v", 1], "west": [f"b{k}", 2]}
        if k < n - 1:
            tile["east"] = [f"b{k + 1}", 2]
        tiles.append(tile)
    for k in range(1, n):
        tile = {"name": f"L{k}", "east": ["h", 1], "south": [f"l{k}", 2]}
        if k < n - 1:
            tile["north"] = [f"l{k + 1}", 2]
        tiles.append(tile)
    tiles.append(
        {
            "name": "F",
            "north": ["v", 1],
            "east": ["h", 1],
            "south": ["v", 1],
            "west": ["h", 1],
        }
    )
    description = (
        f"Directed temperature-2 builder of the {n}x{n} square: "
        "strength-2 chains grow the bottom row and left column, and the "
        "filler tile F completes each interior cell once its west and "
        "south neighbours are in place."
    )
    return (
        "{\n"
        '  "schema_version": 1,\n'
        '  "kind": "tileset",\n'
        f'  "name": "SYS-SQUARE-{n}",\n'
        f'  "description": {json.dumps(description)},\n'
        '  "temperature": 2,\n'
        '  "tiles": [\n'
        + ",\n".join(tile_lines(t) for t in tiles)
        + "\n  ],\n"
        '  "seed": [\n'
        '    {"x": 0, "y": 0, "tile": "S"}\n'
        "  ]\n"
        "}\n"
    )


def shape(n: int) -> str:
    rows = ["#" * n for _ in range(n - 1)]
    rows.append("@" + "#" * (n - 1))
    body = ",\n".join(f"    {json.dumps(r)}" for r in rows)
    return (
        "{\n"
        '  "schema_version": 1,\n'
        '  "kind": "shape",\n'
        '  "grid": [\n' + body + "\n  ]\n"
        "}\n"
    )


def main() -> None:
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "corpus"
    for n in range(4, 9):
        with open(f"{out_dir}/sys-square-{n}.json", "w") as f:
            f.write(tileset(n))
        with open(f"{out_dir}/square-{n}.shape", "w") as f:
            f.write(shape(n))


if __name__ == "__main__":
    main()
