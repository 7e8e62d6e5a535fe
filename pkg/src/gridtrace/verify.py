"""Brute-force oracles for certifying traced rings against the source mask.

These deliberately share no logic with the scan in `trace`: boundary edges
are enumerated straight off the pixel grid, and rasterization casts rays
against ring segments. Both are meant for tests and verification runs, not
for speed.
"""

from __future__ import annotations

import numpy as np

from .raster import BitRaster

__all__ = ["boundary_edges", "rasterize_even_odd", "unit_edges"]

# An undirected unit segment on the corner grid, endpoints in lexicographic order.
Edge = tuple[tuple[int, int], tuple[int, int]]


def boundary_edges(raster: BitRaster) -> set[Edge]:
    """Every pixel side separating a marked pixel from an unmarked one.

    Out-of-bounds neighbors count as unmarked, so raster borders of marked
    pixels are included.
    """
    grid = raster._bits.tolist()
    w, h = raster.width, raster.height
    edges: set[Edge] = set()
    for y in range(h):
        row = grid[y]
        for x in range(w):
            if not row[x]:
                continue
            if y == 0 or not grid[y - 1][x]:
                edges.add(((x, y), (x + 1, y)))
            if y == h - 1 or not grid[y + 1][x]:
                edges.add(((x, y + 1), (x + 1, y + 1)))
            if x == 0 or not row[x - 1]:
                edges.add(((x, y), (x, y + 1)))
            if x == w - 1 or not row[x + 1]:
                edges.add(((x + 1, y), (x + 1, y + 1)))
    return edges


def unit_edges(grid_rings) -> list[Edge]:
    """Decompose rings into undirected unit segments, with multiplicity."""
    edges: list[Edge] = []
    for ring in grid_rings:
        pts = np.asarray(ring).tolist()
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x0 == x1:
                lo, hi = (y0, y1) if y0 < y1 else (y1, y0)
                edges.extend(((x0, y), (x0, y + 1)) for y in range(lo, hi))
            else:
                lo, hi = (x0, x1) if x0 < x1 else (x1, x0)
                edges.extend(((x, y0), (x + 1, y0)) for x in range(lo, hi))
    return edges


def rasterize_even_odd(grid_rings, width: int, height: int) -> BitRaster:
    """Fill rings back into a raster with the even-odd rule.

    Pixel (x, y) is marked iff a +x ray from its center (x+0.5, y+0.5)
    crosses ring segments an odd number of times. Centers sit at
    half-integer ordinates and segments on integer lines, so no crossing is
    ever ambiguous.
    """
    if width == 0 or height == 0:
        return BitRaster(width, height)
    # crossings[y, c]: segments at corner column c spanning pixel row y; the
    # ray from pixel (x, y) crosses those with c >= x + 1.
    crossings = np.zeros((height, width + 1), dtype=np.int64)
    for ring in grid_rings:
        pts = np.asarray(ring).tolist()
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x0 == x1:
                if not 0 <= x0 <= width:
                    raise ValueError(f"ring segment column {x0} outside corner grid")
                lo, hi = (y0, y1) if y0 < y1 else (y1, y0)
                crossings[max(lo, 0) : min(hi, height), x0] += 1
    right_counts = crossings[:, ::-1].cumsum(axis=1)[:, ::-1]
    bits = (right_counts[:, 1:] % 2).astype(bool)
    return BitRaster(width, height, bits)
