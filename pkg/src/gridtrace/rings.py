"""Ring formation: walk circular vertex lists into closed coordinate rings.

Each unvisited entry corner starts a walk that follows next links back to
the start, emitting the ring in grid coordinates and, through the
grid-to-world transform, in (longitude, latitude). Rings that contain
several entry corners are emitted once.

Rings are numpy coordinate arrays of shape (n+1, 2), closed by repeating
the first coordinate: integer grid corners (int64) and float world
positions. Hand-built rings as plain coordinate-pair lists are accepted
everywhere rings are consumed.

Orientation falls out of the wiring: with y growing downward, outer rings
have negative shoelace area and hole rings positive. A north-up transform
(negative e) flips that to the conventional counterclockwise outer /
clockwise hole winding in world coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .trace import Delineation
from .transform import IDENTITY, AffineTransform

__all__ = [
    "GridRing",
    "Polygon",
    "RingTraversalError",
    "TopologyError",
    "WorldRing",
    "assemble_polygons",
    "collapse_ring",
    "form_rings",
    "signed_area",
]

GridRing = np.ndarray  # (n+1, 2) int64, first row equals last
WorldRing = np.ndarray  # (n+1, 2) float64, first row equals last


class RingTraversalError(RuntimeError):
    """Vertex lists are not clean circular lists covering every vertex."""


class TopologyError(ValueError):
    """Ring set cannot be assembled into polygons (e.g. orphan hole)."""

    def __init__(self, message: str, ring_index: int | None = None):
        super().__init__(message)
        self.ring_index = ring_index


@dataclass
class Polygon:
    """One outer ring with its holes, both as indices into the ring lists."""

    outer: int
    holes: list[int] = field(default_factory=list)


def form_rings(
    delineation: Delineation,
    transform: AffineTransform = IDENTITY,
    collapse_collinear: bool = False,
) -> tuple[list[GridRing], list[WorldRing]]:
    """Convert circular vertex lists into closed rings, grid and world forms.

    Rings come out in entry-corner (scan) order, each closed by repeating
    its first coordinate. Coordinates are kept vertex-for-vertex unless
    collapse_collinear is set, which merges runs of collinear steps without
    changing the traced geometry.

    Raises RingTraversalError if a walk fails to close within vertex_count
    steps or some vertex is unreachable from every entry corner.
    """
    nxt = delineation.next_ids
    n = delineation.vertex_count
    visited = bytearray(n)
    order: list[int] = []
    bounds: list[int] = [0]
    append = order.append
    for corner in delineation.corners:
        if visited[corner]:
            continue
        i = corner
        steps = 0
        while True:
            append(i)
            visited[i] = 1
            i = nxt[i]
            steps += 1
            if i == corner:
                break
            if i < 0 or steps > n:
                raise RingTraversalError(
                    f"walk from corner {corner} did not close after {steps} steps"
                )
        bounds.append(len(order))
    if len(order) != n:
        raise RingTraversalError(
            f"{n - len(order)} vertices unreachable from any entry corner"
        )

    # Materialize all rings in bulk: gather walk-ordered coordinates, insert
    # each ring's closing point, then hand out per-ring views. Per-vertex
    # Python work here would dominate the pipeline on large rasters.
    walk = np.asarray(order, dtype=np.intp)
    ring_count = len(bounds) - 1
    starts = np.asarray(bounds[:-1], dtype=np.intp)
    ends = np.asarray(bounds[1:], dtype=np.intp)
    closed = np.insert(walk, ends, walk[starts]) if ring_count else walk
    gx = np.asarray(delineation.xs, dtype=np.int64)[closed]
    gy = np.asarray(delineation.ys, dtype=np.int64)[closed]
    grid_coords = np.stack([gx, gy], axis=1)
    world_coords = np.stack(
        [
            transform.a * gx + transform.b * gy + transform.c,
            transform.d * gx + transform.e * gy + transform.f,
        ],
        axis=1,
    )
    grid_coords.setflags(write=False)
    world_coords.setflags(write=False)

    offsets = np.arange(ring_count + 1) + np.asarray(bounds, dtype=np.intp)
    grid_rings: list[GridRing] = []
    world_rings: list[WorldRing] = []
    for k in range(ring_count):
        start, end = offsets[k], offsets[k + 1]
        ring = grid_coords[start:end]
        wring = world_coords[start:end]
        if collapse_collinear:
            ring = collapse_ring(ring)
            lon = transform.a * ring[:, 0] + transform.b * ring[:, 1] + transform.c
            lat = transform.d * ring[:, 0] + transform.e * ring[:, 1] + transform.f
            wring = np.stack([lon, lat], axis=1)
        grid_rings.append(ring)
        world_rings.append(wring)
    return grid_rings, world_rings


def collapse_ring(coords) -> GridRing:
    """Drop interior points of straight runs from a closed ring.

    Geometry-preserving; the ring stays closed and keeps its start point.
    Rings straight out of `form_rings` have no straight runs, so this only
    changes rings that were modified or built by hand.
    """
    ring = np.asarray(coords)
    if len(ring) <= 2:
        return ring.copy()
    pts = ring[:-1]
    before = np.roll(pts, 1, axis=0)
    after = np.roll(pts, -1, axis=0)
    straight = ((before[:, 0] == pts[:, 0]) & (pts[:, 0] == after[:, 0])) | (
        (before[:, 1] == pts[:, 1]) & (pts[:, 1] == after[:, 1])
    )
    kept = pts[~straight]
    if len(kept) == 0:
        return ring[[0, 0]]
    return np.vstack([kept, kept[:1]])


def signed_area(ring) -> float:
    """Shoelace signed area of a closed ring (y-down grid axes).

    Negative for outer rings, positive for holes; exact on integer grid
    coordinates.
    """
    r = np.asarray(ring)
    if len(r) < 2:
        return 0.0
    x, y = r[:, 0], r[:, 1]
    cross = x[:-1] * y[1:] - x[1:] * y[:-1]
    return float(cross.sum()) / 2


def assemble_polygons(grid_rings) -> list[Polygon]:
    """Group rings into polygons: negative-area rings are exteriors,
    positive-area rings attach as holes of the smallest exterior that
    strictly contains them.

    Containment is tested at a point nudged a quarter pixel inside the hole
    off the midpoint of its first edge, which keeps the test point clear of
    every boundary. Raises TopologyError for zero-area rings and for holes
    no exterior contains.
    """
    rings = [np.asarray(r) for r in grid_rings]
    areas = [signed_area(r) for r in rings]
    outer_ids = []
    hole_ids = []
    for i, a in enumerate(areas):
        if a < 0:
            outer_ids.append(i)
        elif a > 0:
            hole_ids.append(i)
        else:
            raise TopologyError(f"ring {i} has zero area", ring_index=i)

    bboxes = {o: (rings[o].min(axis=0), rings[o].max(axis=0)) for o in outer_ids}
    holes_of: dict[int, list[int]] = {o: [] for o in outer_ids}
    for hid in hole_ids:
        px, py = _hole_interior_point(rings[hid])
        best = -1
        best_area = None
        for o in outer_ids:
            (x0, y0), (x1, y1) = bboxes[o]
            if not (x0 < px < x1 and y0 < py < y1):
                continue
            if _point_in_ring(px, py, rings[o]):
                size = -areas[o]
                if best_area is None or size < best_area:
                    best, best_area = o, size
        if best < 0:
            start = tuple(rings[hid][0])
            raise TopologyError(
                f"hole ring {hid} at {start} is inside no exterior ring", ring_index=hid
            )
        holes_of[best].append(hid)
    return [Polygon(o, holes_of[o]) for o in outer_ids]


def _hole_interior_point(ring: np.ndarray) -> tuple[float, float]:
    # Quarter-pixel inward normal off the first edge midpoint. For a
    # positive-area ring (y-down) the interior lies to the right of travel.
    x0, y0 = ring[0]
    x1, y1 = ring[1]
    dx, dy = x1 - x0, y1 - y0
    length = abs(dx) + abs(dy)
    mx, my = (x0 + x1) / 2, (y0 + y1) / 2
    return float(mx - 0.25 * dy / length), float(my + 0.25 * dx / length)


def _point_in_ring(px: float, py: float, ring: np.ndarray) -> bool:
    # Even-odd ray cast along +x; py off the integer lattice avoids vertex grazing.
    x0, y0 = ring[:-1, 0], ring[:-1, 1]
    x1, y1 = ring[1:, 0], ring[1:, 1]
    vertical = (x0 == x1) & (x0 > px)
    lo = np.minimum(y0, y1)
    hi = np.maximum(y0, y1)
    crossings = int((vertical & (lo < py) & (py < hi)).sum())
    return crossings % 2 == 1
