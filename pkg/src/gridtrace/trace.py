"""Single-pass detection of orthogonal boundary vertices on a binary raster.

The scan slides a 2x2 pixel window over every corner position (x, y) with
0 <= x <= width and 0 <= y <= height, rows top to bottom, left to right
within a row. Each window is classified by a 4-bit code built from its four
pixels (out-of-bounds pixels read as unmarked):

    bit 1: pixel (x-1, y-1)    bit 2: pixel (x,   y-1)
    bit 4: pixel (x-1, y  )    bit 8: pixel (x,   y  )

A boundary vertex sits at the window center wherever a horizontal boundary
edge meets a vertical one. Codes 0, 3, 5, 10, 12 and 15 are flat or empty
and produce nothing; codes 6 and 9 are diagonal touches and produce two
coinciding vertices so touching regions stay separate, non-overlapping
rings; every other code produces one vertex.

Vertices are wired into circular linked lists as they are found. An edge
whose far endpoint has not been scanned yet leaves an "open" vertex behind:
at most one to the left on the current row (the pending horizontal edge)
and at most one per corner column (pending vertical edges). When the far
endpoint appears, the open vertex's next link is resolved. Top-left corner
vertices (codes 7, 8, 9) are also recorded as ring entry points; code 7 is
kept because interior holes begin there.

Vertices live in a flat arena; links are arena indices, -1 meaning unset.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import BitRaster

__all__ = ["Delineation", "TraceError", "classify_window", "detect", "window_types"]

# Window codes that yield one vertex, keyed by what they do to the open
# slots; 6 and 9 yield two coinciding vertices.
_VERTEX_CODES = frozenset({1, 2, 4, 6, 7, 8, 9, 11, 13, 14})

_ACTIONABLE = np.zeros(16, dtype=bool)
_ACTIONABLE[list(_VERTEX_CODES)] = True

# Corner rows per scan block; bounds transient index-array memory on big rasters.
_BLOCK_CORNERS = 2_000_000


class TraceError(RuntimeError):
    """Internal wiring inconsistency; raised instead of emitting bad geometry."""


@dataclass
class Delineation:
    """Vertex arena plus ring entry points produced by `detect`.

    xs/ys give each vertex's corner coordinates, next_ids the successor in
    its circular list, corners the arena indices of ring entry points in
    scan order.
    """

    xs: list[int]
    ys: list[int]
    next_ids: list[int]
    corners: list[int]

    @property
    def vertex_count(self) -> int:
        return len(self.xs)

    def dump(self) -> str:
        """One line per vertex: 'index x y next is_entry', for golden tests."""
        entry = set(self.corners)
        return "\n".join(
            f"{i} {self.xs[i]} {self.ys[i]} {self.next_ids[i]} {1 if i in entry else 0}"
            for i in range(len(self.xs))
        )


def classify_window(raster: BitRaster, x: int, y: int) -> int:
    """Classify the 2x2 window centered on corner (x, y) into its 4-bit code."""
    return (
        (1 if raster.get(x - 1, y - 1) else 0)
        + (2 if raster.get(x, y - 1) else 0)
        + (4 if raster.get(x - 1, y) else 0)
        + (8 if raster.get(x, y) else 0)
    )

def window_types(raster: BitRaster) -> np.ndarray:
    """Window codes for the whole (height+1) x (width+1) corner grid at once."""
    h, w = raster.height, raster.width
    padded = np.zeros((h + 2, w + 2), dtype=np.uint8)
    padded[1 : h + 1, 1 : w + 1] = raster._bits
    return (
        padded[: h + 1, : w + 1]
        + (padded[: h + 1, 1:] << 1)
        + (padded[1:, : w + 1] << 2)
        + (padded[1:, 1:] << 3)
    )


def detect(raster: BitRaster) -> Delineation:
    """Find all boundary vertices and wire them into circular linked lists.

    Runs in one pass over the corner grid. Any attempt to pair an edge
    endpoint with an open slot that is empty, or a dangling link left at the
    end of the scan, raises TraceError rather than returning partial
    geometry.
    """
    w, h = raster.width, raster.height
    codes = window_types(raster)
    corner_cols = w + 1

    xs: list[int] = []
    ys: list[int] = []
    nxt: list[int] = []
    corners: list[int] = []
    top: list[int] = [-1] * corner_cols
    left = -1

    block = max(1, _BLOCK_CORNERS // corner_cols)
    for y_start in range(0, h + 1, block):
        sub = codes[y_start : y_start + block].ravel()
        hits = np.flatnonzero(_ACTIONABLE[sub])
        if hits.size == 0:
            continue
        bt = sub[hits].tolist()
        bx = (hits % corner_cols).tolist()
        by = (hits // corner_cols + y_start).tolist()
        for x, y, t in zip(bx, by, bt):
            if t == 8 or t == 7:
                # top-left corner: both edges still open, remember as entry
                v = len(xs)
                xs.append(x)
                ys.append(y)
                nxt.append(-1)
                top[x] = v
                left = v
                corners.append(v)
            elif t == 1:
                # bottom-right corner: closes the left and top open edges
                tv = top[x]
                if tv < 0 or left < 0:
                    raise TraceError(f"code 1 at ({x},{y}) with no open vertex to pair")
                v = len(xs)
                xs.append(x)
                ys.append(y)
                nxt.append(tv)
                nxt[left] = v
                top[x] = -1
                left = -1
            elif t == 2:
                # closes the top edge, opens a horizontal edge to the right
                tv = top[x]
                if tv < 0:
                    raise TraceError(f"code 2 at ({x},{y}) with no open top vertex")
                v = len(xs)
                xs.append(x)
                ys.append(y)
                nxt.append(-1)
                nxt[tv] = v
                top[x] = -1
                left = v
            elif t == 4:
                # closes the left edge, opens a vertical edge downward
                if left < 0:
                    raise TraceError(f"code 4 at ({x},{y}) with no open left vertex")
                v = len(xs)
                xs.append(x)
                ys.append(y)
                nxt.append(left)
                left = -1
                top[x] = v
            elif t == 13:
                tv = top[x]
                if tv < 0:
                    raise TraceError(f"code 13 at ({x},{y}) with no open top vertex")
                v = len(xs)
                xs.append(x)
                ys.append(y)
                nxt.append(tv)
                top[x] = -1
                left = v
            elif t == 11:
                if left < 0:
                    raise TraceError(f"code 11 at ({x},{y}) with no open left vertex")
                v = len(xs)
                xs.append(x)
                ys.append(y)
                nxt.append(-1)
                nxt[left] = v
                left = -1
                top[x] = v
            elif t == 14:
                tv = top[x]
                if tv < 0 or left < 0:
                    raise TraceError(f"code 14 at ({x},{y}) with no open vertex to pair")
                v = len(xs)
                xs.append(x)
                ys.append(y)
                nxt.append(left)
                nxt[tv] = v
                top[x] = -1
                left = -1
            elif t == 6:
                # diagonal touch: one vertex acts like code 2, the other like 4
                tv = top[x]
                if tv < 0 or left < 0:
                    raise TraceError(f"code 6 at ({x},{y}) with no open vertex to pair")
                v1 = len(xs)
                xs.append(x)
                ys.append(y)
                nxt.append(-1)
                nxt[tv] = v1
                v2 = len(xs)
                xs.append(x)
                ys.append(y)
                nxt.append(left)
                top[x] = v2
                left = v1
            else:
                # code 9, diagonal touch: one vertex closes like code 1, the
                # other starts a new ring like code 8
                tv = top[x]
                if tv < 0 or left < 0:
                    raise TraceError(f"code 9 at ({x},{y}) with no open vertex to pair")
                v1 = len(xs)
                xs.append(x)
                ys.append(y)
                nxt.append(tv)
                nxt[left] = v1
                v2 = len(xs)
                xs.append(x)
                ys.append(y)
                nxt.append(-1)
                top[x] = v2
                left = v2
                corners.append(v2)

    if left != -1:
        raise TraceError("scan finished with an unclosed horizontal edge")
    for x, tv in enumerate(top):
        if tv != -1:
            raise TraceError(f"scan finished with an unclosed vertical edge in column {x}")
    n = len(xs)
    if n:
        links = np.asarray(nxt, dtype=np.int64)
        if links.min() < 0:
            raise TraceError("scan finished with an unlinked vertex")
        if np.bincount(links, minlength=n).max() > 1:
            raise TraceError("vertex linked more than once; lists are not disjoint cycles")
    return Delineation(xs, ys, nxt, corners)
