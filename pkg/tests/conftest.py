"""Shared helpers for the test suite."""

import numpy as np

from gridtrace import BitRaster, signed_area
from gridtrace.verify import unit_edges


def raster_from_int(width: int, height: int, mask: int) -> BitRaster:
    """Raster whose row-major bits are the binary digits of `mask`."""
    bits = ((mask >> np.arange(width * height)) & 1).astype(bool).reshape(height, width)
    return BitRaster(width, height, bits)


def ring_validity_errors(grid_rings, marked_count: int) -> list[str]:
    """Check the ring validity contract; empty list means all good.

    Every ring must be closed and walk in axis-aligned steps, no unit edge
    may appear twice across the whole ring set, and the signed areas must
    sum to exactly minus the marked pixel count.
    """
    errors = []
    for k, ring in enumerate(grid_rings):
        pts = np.asarray(ring).tolist()
        if len(pts) < 2 or pts[0] != pts[-1]:
            errors.append(f"ring {k} not closed")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if (x0 == x1) == (y0 == y1):
                errors.append(f"ring {k} has non-orthogonal step ({x0},{y0})->({x1},{y1})")
                break
    edges = unit_edges(grid_rings)
    if len(edges) != len(set(edges)):
        errors.append("a unit edge appears more than once")
    total = sum(signed_area(r) for r in grid_rings)
    if total != -marked_count:
        errors.append(f"area sum {total} != -{marked_count}")
    return errors
