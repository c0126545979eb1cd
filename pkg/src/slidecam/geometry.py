"""Exact rectilinear geometry: polygons, segmentations, pixelation, guards.

All input coordinates are integers.  Slice midlines sit on half-integer
coordinates and are stored as doubled integers (``anchor2``), so every
intersection predicate is decided with exact integer arithmetic; no
floating point is used anywhere in this module.
"""
from __future__ import annotations

import functools
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    DegenerateRing,
    HoleOutsideOuter,
    NonOrthogonalEdge,
    PolygonError,
    SelfIntersection,
)

Vertex = Tuple[int, int]
Rect = Tuple[int, int, int, int]  # (x_lo, y_lo, x_hi, y_hi)

HORIZONTAL = "H"
VERTICAL = "V"

_COORD_LIMIT = 2**31 - 1


# ---------------------------------------------------------------------------
# Polygon validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrthoPolygon:
    """A rectilinear polygon: one outer ring (CCW) plus hole rings (CW)."""

    outer: Tuple[Vertex, ...]
    holes: Tuple[Tuple[Vertex, ...], ...] = ()

    @property
    def n(self) -> int:
        return len(self.outer) + sum(len(h) for h in self.holes)

    def rings(self) -> List[Tuple[Vertex, ...]]:
        return [self.outer, *self.holes]

    def bbox(self) -> Rect:
        xs = [x for r in self.rings() for x, _ in r]
        ys = [y for r in self.rings() for _, y in r]
        return (min(xs), min(ys), max(xs), max(ys))

    def area2(self) -> int:
        """Twice the enclosed area (holes subtracted)."""
        return sum(_signed_area2(r) for r in self.rings())

    def to_dict(self) -> dict:
        d = {"outer": [list(v) for v in self.outer]}
        if self.holes:
            d["holes"] = [[list(v) for v in h] for h in self.holes]
        return d

    @staticmethod
    def from_dict(d: dict) -> "OrthoPolygon":
        rings = [d["outer"], *d.get("holes", [])]
        return validate_polygon(rings)


def _signed_area2(ring: Sequence[Vertex]) -> int:
    s = 0
    n = len(ring)
    for i in range(n):
        x1, y1 = ring[i]
        x2, y2 = ring[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return s


def _normalize_ring(raw: Sequence[Sequence[int]], name: str) -> List[Vertex]:
    pts: List[Vertex] = []
    for p in raw:
        v = (int(p[0]), int(p[1]))
        if abs(v[0]) > _COORD_LIMIT or abs(v[1]) > _COORD_LIMIT:
            raise PolygonError(f"{name}: coordinate outside 32-bit range: {v}")
        if not pts or pts[-1] != v:
            pts.append(v)
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    if len(pts) < 3:
        raise DegenerateRing(f"{name}: fewer than 3 distinct vertices")
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        if a[0] != b[0] and a[1] != b[1]:
            raise NonOrthogonalEdge(f"{name}: edge {a}-{b} is not axis-parallel")
    if len(pts) < 4:
        raise DegenerateRing(f"{name}: fewer than 4 distinct vertices")
    # Merge collinear runs; a reversal (spur) means the boundary doubles back.
    changed = True
    while changed:
        changed = False
        n = len(pts)
        for i in range(n):
            a = pts[(i - 1) % n]
            b = pts[i]
            c = pts[(i + 1) % n]
            abx, aby = b[0] - a[0], b[1] - a[1]
            bcx, bcy = c[0] - b[0], c[1] - b[1]
            if abx * bcy - aby * bcx == 0:
                if abx * bcx + aby * bcy < 0:
                    raise SelfIntersection(f"{name}: boundary doubles back at {b}")
                del pts[i]
                changed = True
                break
        if len(pts) < 4:
            raise DegenerateRing(f"{name}: collapses to fewer than 4 vertices")
    if _signed_area2(pts) == 0:
        raise DegenerateRing(f"{name}: zero area")
    return pts


def _ring_edges(ring: Sequence[Vertex]):
    """Split a ring into vertical (x, y_lo, y_hi) and horizontal (y, x_lo, x_hi) edges."""
    vert, horiz = [], []
    n = len(ring)
    for i in range(n):
        (x1, y1), (x2, y2) = ring[i], ring[(i + 1) % n]
        if x1 == x2:
            vert.append((x1, min(y1, y2), max(y1, y2)))
        else:
            horiz.append((y1, min(x1, x2), max(x1, x2)))
    return vert, horiz


def _edges_touch(e1, e2) -> bool:
    """Closed intersection test between two axis-parallel edges.

    Edges are ('V', x, lo, hi) or ('H', y, lo, hi).
    """
    o1, a1, lo1, hi1 = e1
    o2, a2, lo2, hi2 = e2
    if o1 == o2:
        return a1 == a2 and max(lo1, lo2) <= min(hi1, hi2)
    if o1 == VERTICAL:  # e1 vertical, e2 horizontal
        return lo1 <= a2 <= hi1 and lo2 <= a1 <= hi2
    return lo2 <= a1 <= hi2 and lo1 <= a2 <= hi1


def _point_in_ring(pt: Vertex, vert_edges) -> bool:
    """Even-odd test using a horizontal ray towards +x (point not on boundary)."""
    px, py = pt
    cnt = 0
    for x, ylo, yhi in vert_edges:
        if x > px and ylo <= py < yhi:
            cnt += 1
    return cnt % 2 == 1


def _rotate_to_min(ring: List[Vertex]) -> List[Vertex]:
    k = ring.index(min(ring))
    return ring[k:] + ring[:k]


def validate_polygon(rings: Sequence[Sequence[Sequence[int]]]) -> OrthoPolygon:
    """Validate and normalize raw vertex rings into an :class:`OrthoPolygon`.

    The first ring is the outer boundary, any further rings are holes.
    Orientation is normalized (outer CCW, holes CW), collinear and duplicate
    vertices are merged and every ring is rotated to start at its smallest
    vertex so that equal polygons have identical representations.
    """
    if not rings:
        raise DegenerateRing("no rings given")
    norm = [_normalize_ring(r, f"ring {i}") for i, r in enumerate(rings)]
    outer = norm[0]
    if _signed_area2(outer) < 0:
        outer.reverse()
    holes = []
    for h in norm[1:]:
        if _signed_area2(h) > 0:
            h.reverse()
        holes.append(h)

    # Simplicity: edges of all rings may only meet where consecutive edges of
    # one ring share their common vertex.  Any other contact is rejected, so
    # rings never touch each other or themselves.
    all_edges = []
    for ridx, ring in enumerate([outer, *holes]):
        vert, horiz = _ring_edges(ring)
        n = len(ring)
        for i in range(n):
            (x1, y1), (x2, y2) = ring[i], ring[(i + 1) % n]
            if x1 == x2:
                e = (VERTICAL, x1, min(y1, y2), max(y1, y2))
            else:
                e = (HORIZONTAL, y1, min(x1, x2), max(x1, x2))
            all_edges.append((ridx, i, n, e))
    for i in range(len(all_edges)):
        r1, i1, n1, e1 = all_edges[i]
        for j in range(i + 1, len(all_edges)):
            r2, i2, n2, e2 = all_edges[j]
            if r1 == r2 and (i2 - i1) % n1 in (1, n1 - 1):
                continue  # consecutive edges share exactly one endpoint
            if _edges_touch(e1, e2):
                if r1 == r2:
                    raise SelfIntersection(f"ring {r1}: edges {i1} and {i2} intersect")
                raise HoleOutsideOuter(f"rings {r1} and {r2} touch or overlap")

    outer_vert, _ = _ring_edges(outer)
    for hidx, hole in enumerate(holes):
        if not all(_point_in_ring(v, outer_vert) for v in hole):
            raise HoleOutsideOuter(f"hole {hidx} is not strictly inside the outer ring")
    for a in range(len(holes)):
        va, _ = _ring_edges(holes[a])
        for b in range(len(holes)):
            if a != b and any(_point_in_ring(v, va) for v in holes[b]):
                raise HoleOutsideOuter(f"holes {a} and {b} overlap")

    return OrthoPolygon(
        outer=tuple(_rotate_to_min(outer)),
        holes=tuple(tuple(_rotate_to_min(h)) for h in holes),
    )


# ---------------------------------------------------------------------------
# Pixelation data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SliceSegment:
    """Midline of a slice; ``anchor2`` is the doubled halving-line coordinate."""

    id: int
    orientation: str
    anchor2: int
    lo: int
    hi: int


@dataclass(frozen=True)
class Slice:
    id: int
    orientation: str
    rect: Rect
    segment: SliceSegment


@dataclass(frozen=True)
class Pixel:
    id: int
    rect: Rect
    v_slice: int
    h_slice: int


@dataclass(frozen=True)
class Cross:
    pixel_id: int
    h_support: int  # global slice-segment id
    v_support: int
    point2: Tuple[int, int]  # doubled coordinates of the crossing point


@dataclass(frozen=True, order=True)
class GuardSegment:
    """A camera segment on a grid line.

    Canonical guards produced by :func:`pixelate` are maximal runs along
    pixel edges with per-orientation deduplication by hit set; ``id`` is -1
    for ad-hoc segments built by callers.
    """

    orientation: str
    anchor: int
    lo: int
    hi: int
    id: int = -1
    hit_set: int = 0

    def key(self):
        return (self.orientation, self.anchor, self.lo, self.hi)


@dataclass(frozen=True)
class CoverageReport:
    uncovered: Tuple[int, ...]
    certificate: Dict[int, Tuple[int, Tuple[str, int, int, int]]]

    @property
    def covered(self) -> bool:
        return not self.uncovered


class _DSU:
    def __init__(self, n: int):
        self.p = list(range(n))

    def find(self, a: int) -> int:
        while self.p[a] != a:
            self.p[a] = self.p[self.p[a]]
            a = self.p[a]
        return a

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[max(ra, rb)] = min(ra, rb)


# ---------------------------------------------------------------------------
# Pixelation
# ---------------------------------------------------------------------------

class Pixelation:
    """Both segmentations of a polygon overlaid: pixels, crosses and guards.

    Pixels are stored against a compressed grid (the vertex coordinates per
    axis); a pixel may span several grid cells, since segmentation cuts stop
    at the boundary and do not extend across the whole polygon.
    """

    def __init__(self, polygon: OrthoPolygon):
        self.polygon = polygon
        self._build()

    # -- construction -------------------------------------------------------

    def _build(self):
        poly = self.polygon
        self.x_cuts: List[int] = sorted({x for r in poly.rings() for x, _ in r})
        self.y_cuts: List[int] = sorted({y for r in poly.rings() for _, y in r})
        self._xi = {x: i for i, x in enumerate(self.x_cuts)}
        self._yi = {y: j for j, y in enumerate(self.y_cuts)}

        self._vert_edges: List[Tuple[int, int, int]] = []
        self._horiz_edges: List[Tuple[int, int, int]] = []
        for ring in poly.rings():
            v, h = _ring_edges(ring)
            self._vert_edges.extend(v)
            self._horiz_edges.extend(h)

        nx, ny = len(self.x_cuts) - 1, len(self.y_cuts) - 1
        self.inside = [[False] * ny for _ in range(nx)]
        for i in range(nx):
            cx2 = self.x_cuts[i] + self.x_cuts[i + 1]
            for j in range(ny):
                cy2 = self.y_cuts[j] + self.y_cuts[j + 1]
                cnt = 0
                for x, ylo, yhi in self._vert_edges:
                    if 2 * x > cx2 and 2 * ylo < cy2 < 2 * yhi:
                        cnt += 1
                self.inside[i][j] = cnt % 2 == 1

        self._reflex = self._find_reflex_vertices()
        self.cuts_v = [self._march_ray(v, d, vertical=True) for v, d in self._reflex_rays(vertical=True)]
        self.cuts_h = [self._march_ray(v, d, vertical=False) for v, d in self._reflex_rays(vertical=False)]
        self.cuts_v = [c for c in self.cuts_v if c is not None]
        self.cuts_h = [c for c in self.cuts_h if c is not None]

        self._build_slices()
        self._build_pixels()
        self._build_guards()

    def _find_reflex_vertices(self) -> List[Tuple[Vertex, Vertex, Vertex]]:
        """Reflex vertices as (prev, v, next) triples, both rings included."""
        out = []
        for ring in self.polygon.rings():
            n = len(ring)
            for i in range(n):
                a, b, c = ring[(i - 1) % n], ring[i], ring[(i + 1) % n]
                abx, aby = b[0] - a[0], b[1] - a[1]
                bcx, bcy = c[0] - b[0], c[1] - b[1]
                if abx * bcy - aby * bcx < 0:
                    out.append((a, b, c))
        return out

    @property
    def reflex_vertices(self) -> List[Vertex]:
        return [b for _, b, _ in self._reflex]

    def _reflex_rays(self, vertical: bool):
        """For each reflex vertex, the inward extension of its axis edge."""
        rays = []
        for a, b, c in self._reflex:
            if vertical:
                if a[0] == b[0]:       # incoming edge vertical: continue its direction
                    d = 1 if b[1] > a[1] else -1
                else:                  # outgoing edge vertical: extend backwards
                    d = 1 if b[1] > c[1] else -1
            else:
                if a[1] == b[1]:
                    d = 1 if b[0] > a[0] else -1
                else:
                    d = 1 if b[0] > c[0] else -1
            rays.append((b, d))
        return rays

    def on_boundary(self, pt: Vertex) -> bool:
        x, y = pt
        for ex, ylo, yhi in self._vert_edges:
            if x == ex and ylo <= y <= yhi:
                return True
        for ey, xlo, xhi in self._horiz_edges:
            if y == ey and xlo <= x <= xhi:
                return True
        return False

    def _cell_inside(self, i: int, j: int) -> bool:
        if i < 0 or j < 0 or i >= len(self.inside) or j >= len(self.inside[0]):
            return False
        return self.inside[i][j]

    def _march_ray(self, v: Vertex, d: int, vertical: bool):
        """Extend a cut ray from reflex vertex ``v`` until it hits the boundary."""
        if vertical:
            ix, iy = self._xi[v[0]], self._yi[v[1]]
            while True:
                j = iy if d > 0 else iy - 1
                if j < 0 or j >= len(self.y_cuts) - 1:
                    break
                if not (self._cell_inside(ix - 1, j) and self._cell_inside(ix, j)):
                    break
                iy += d
                if self.on_boundary((v[0], self.y_cuts[iy])):
                    break
            end = self.y_cuts[iy]
            if end == v[1]:
                return None
            return (v[0], min(v[1], end), max(v[1], end))
        ix, iy = self._xi[v[0]], self._yi[v[1]]
        while True:
            i = ix if d > 0 else ix - 1
            if i < 0 or i >= len(self.x_cuts) - 1:
                break
            if not (self._cell_inside(i, iy - 1) and self._cell_inside(i, iy)):
                break
            ix += d
            if self.on_boundary((self.x_cuts[ix], v[1])):
                break
        end = self.x_cuts[ix]
        if end == v[0]:
            return None
        return (v[1], min(v[0], end), max(v[0], end))

    def _cut_covers(self, cuts_at: Dict[int, List[Tuple[int, int]]], a: int, lo: int, hi: int) -> bool:
        for clo, chi in cuts_at.get(a, ()):
            if clo <= lo and hi <= chi:
                return True
        return False

    def _build_slices(self):
        nx, ny = len(self.x_cuts) - 1, len(self.y_cuts) - 1
        cells = [(i, j) for i in range(nx) for j in range(ny) if self.inside[i][j]]
        self._cells = cells
        cell_idx = {c: k for k, c in enumerate(cells)}

        cuts_v_at: Dict[int, List[Tuple[int, int]]] = {}
        for x, lo, hi in self.cuts_v:
            cuts_v_at.setdefault(x, []).append((lo, hi))
        cuts_h_at: Dict[int, List[Tuple[int, int]]] = {}
        for y, lo, hi in self.cuts_h:
            cuts_h_at.setdefault(y, []).append((lo, hi))
        self._cuts_v_at, self._cuts_h_at = cuts_v_at, cuts_h_at

        def make(dsu_block_vertical: bool):
            dsu = _DSU(len(cells))
            for (i, j), k in cell_idx.items():
                if (i, j + 1) in cell_idx:
                    # vertical neighbours: blocked only for the H segmentation
                    blocked = dsu_block_vertical and self._cut_covers(
                        cuts_h_at, self.y_cuts[j + 1], self.x_cuts[i], self.x_cuts[i + 1])
                    if not blocked:
                        dsu.union(k, cell_idx[(i, j + 1)])
                if (i + 1, j) in cell_idx:
                    blocked = (not dsu_block_vertical) and self._cut_covers(
                        cuts_v_at, self.x_cuts[i + 1], self.y_cuts[j], self.y_cuts[j + 1])
                    if not blocked:
                        dsu.union(k, cell_idx[(i + 1, j)])
            comps: Dict[int, List[Tuple[int, int]]] = {}
            for c, k in cell_idx.items():
                comps.setdefault(dsu.find(k), []).append(c)
            rects = []
            for comp in comps.values():
                xl = min(self.x_cuts[i] for i, _ in comp)
                xh = max(self.x_cuts[i + 1] for i, _ in comp)
                yl = min(self.y_cuts[j] for _, j in comp)
                yh = max(self.y_cuts[j + 1] for _, j in comp)
                area = sum(
                    (self.x_cuts[i + 1] - self.x_cuts[i]) * (self.y_cuts[j + 1] - self.y_cuts[j])
                    for i, j in comp)
                if area != (xh - xl) * (yh - yl):
                    raise AssertionError("segmentation produced a non-rectangular slice")
                rects.append(((xl, yl, xh, yh), comp))
            rects.sort(key=lambda rc: rc[0])
            return rects

        v_rects = make(dsu_block_vertical=False)
        h_rects = make(dsu_block_vertical=True)

        self.slices_v: List[Slice] = []
        self.slices_h: List[Slice] = []
        self._cell_vslice: Dict[Tuple[int, int], int] = {}
        self._cell_hslice: Dict[Tuple[int, int], int] = {}
        for sid, (rect, comp) in enumerate(v_rects):
            xl, yl, xh, yh = rect
            seg = SliceSegment(id=sid, orientation=VERTICAL, anchor2=xl + xh, lo=yl, hi=yh)
            self.slices_v.append(Slice(id=sid, orientation=VERTICAL, rect=rect, segment=seg))
            for c in comp:
                self._cell_vslice[c] = sid
        nv = len(self.slices_v)
        for sid, (rect, comp) in enumerate(h_rects):
            xl, yl, xh, yh = rect
            seg = SliceSegment(id=nv + sid, orientation=HORIZONTAL, anchor2=yl + yh, lo=xl, hi=xh)
            self.slices_h.append(Slice(id=sid, orientation=HORIZONTAL, rect=rect, segment=seg))
            for c in comp:
                self._cell_hslice[c] = sid
        self.sigmas: List[SliceSegment] = [s.segment for s in self.slices_v] + [
            s.segment for s in self.slices_h]

    def _build_pixels(self):
        pair_cells: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
        for c in self._cells:
            pair_cells.setdefault((self._cell_vslice[c], self._cell_hslice[c]), []).append(c)

        self.pixels: List[Pixel] = []
        self.crosses: List[Cross] = []
        self._cell_pixel: Dict[Tuple[int, int], int] = {}
        nv = len(self.slices_v)
        for pid, (vh, comp) in enumerate(sorted(pair_cells.items())):
            v, h = vh
            vx = self.slices_v[v].rect
            hx = self.slices_h[h].rect
            rect = (max(vx[0], hx[0]), max(vx[1], hx[1]), min(vx[2], hx[2]), min(vx[3], hx[3]))
            area = sum(
                (self.x_cuts[i + 1] - self.x_cuts[i]) * (self.y_cuts[j + 1] - self.y_cuts[j])
                for i, j in comp)
            if area != (rect[2] - rect[0]) * (rect[3] - rect[1]):
                raise AssertionError("pixel does not match its slice intersection")
            self.pixels.append(Pixel(id=pid, rect=rect, v_slice=v, h_slice=h))
            sv, sh = self.slices_v[v].segment, self.slices_h[h].segment
            # the two midlines must cross inside the closed pixel
            if not (2 * rect[0] <= sv.anchor2 <= 2 * rect[2] and 2 * rect[1] <= sh.anchor2 <= 2 * rect[3]):
                raise AssertionError("slice-segments do not cross inside their pixel")
            self.crosses.append(Cross(pixel_id=pid, h_support=sh.id, v_support=sv.id,
                                      point2=(sv.anchor2, sh.anchor2)))
            for c in comp:
                self._cell_pixel[c] = pid

        self._slice_cross_mask: Dict[int, int] = {s.id: 0 for s in self.sigmas}
        for cr in self.crosses:
            self._slice_cross_mask[cr.v_support] |= 1 << cr.pixel_id
            self._slice_cross_mask[cr.h_support] |= 1 << cr.pixel_id

        edges = set()
        for (i, j) in self._cells:
            for ni, nj in ((i + 1, j), (i, j + 1)):
                if (ni, nj) in self._cell_pixel:
                    a, b = self._cell_pixel[(i, j)], self._cell_pixel[(ni, nj)]
                    if a != b:
                        edges.add((min(a, b), max(a, b)))
        self.dual_edges: Tuple[Tuple[int, int], ...] = tuple(sorted(edges))

    def _pixel_edge_unit(self, orientation: str, line_idx: int, cell_idx: int) -> bool:
        """Is the unit grid segment on a pixel boundary (and inside closed P)?"""
        if orientation == HORIZONTAL:
            below = (cell_idx, line_idx - 1)
            above = (cell_idx, line_idx)
        else:
            below = (line_idx - 1, cell_idx)
            above = (line_idx, cell_idx)
        b_in = below in self._cell_pixel
        a_in = above in self._cell_pixel
        if not (b_in or a_in):
            return False
        if b_in and a_in and self._cell_pixel[below] == self._cell_pixel[above]:
            return False
        return True

    def _build_guards(self):
        raw: List[Tuple[str, int, int, int]] = []
        nx, ny = len(self.x_cuts) - 1, len(self.y_cuts) - 1
        for j in range(len(self.y_cuts)):
            run = None
            for i in range(nx + 1):
                ok = i < nx and self._pixel_edge_unit(HORIZONTAL, j, i)
                if ok and run is None:
                    run = i
                elif not ok and run is not None:
                    raw.append((HORIZONTAL, self.y_cuts[j], self.x_cuts[run], self.x_cuts[i]))
                    run = None
        for i in range(len(self.x_cuts)):
            run = None
            for j in range(ny + 1):
                ok = j < ny and self._pixel_edge_unit(VERTICAL, i, j)
                if ok and run is None:
                    run = j
                elif not ok and run is not None:
                    raw.append((VERTICAL, self.x_cuts[i], self.y_cuts[run], self.y_cuts[j]))
                    run = None

        self.raw_guards: List[GuardSegment] = []
        for o, a, lo, hi in sorted(raw):
            mask = self._segment_hit_mask(o, a, lo, hi)
            self.raw_guards.append(GuardSegment(orientation=o, anchor=a, lo=lo, hi=hi,
                                                id=-1, hit_set=mask))

        groups: Dict[Tuple[str, int], GuardSegment] = {}
        for g in self.raw_guards:
            k = (g.orientation, g.hit_set)
            if k not in groups or g.key() < groups[k].key():
                groups[k] = g
        reps = sorted(groups.values(), key=GuardSegment.key)
        self.guards: List[GuardSegment] = [
            GuardSegment(orientation=g.orientation, anchor=g.anchor, lo=g.lo, hi=g.hi,
                         id=i, hit_set=g.hit_set)
            for i, g in enumerate(reps)]
        canon_by_group = {(g.orientation, g.hit_set): g.id for g in self.guards}
        self._canonical_of: Dict[Tuple[str, int, int, int], int] = {
            g.key(): canon_by_group[(g.orientation, g.hit_set)] for g in self.raw_guards}
        self._runs_by_line: Dict[Tuple[str, int], List[Tuple[int, int]]] = {}
        for g in self.raw_guards:
            self._runs_by_line.setdefault((g.orientation, g.anchor), []).append((g.lo, g.hi))

    def _segment_hit_mask(self, orientation: str, anchor: int, lo: int, hi: int) -> int:
        mask = 0
        for seg in self.sigmas:
            if _segment_intersects_sigma(orientation, anchor, lo, hi, seg):
                mask |= self._slice_cross_mask[seg.id]
        return mask

    # -- lookups ------------------------------------------------------------

    def guard_by_id(self, gid: int) -> GuardSegment:
        return self.guards[gid]

    def canonical_id_for_run(self, orientation: str, anchor: int, lo: int, hi: int) -> int:
        """Canonical guard id of the pixel-edge run containing [lo, hi]."""
        for rlo, rhi in self._runs_by_line.get((orientation, anchor), ()):
            if rlo <= lo and hi <= rhi:
                return self._canonical_of[(orientation, anchor, rlo, rhi)]
        raise KeyError(f"no pixel-edge run on {orientation} line {anchor} covering [{lo},{hi}]")

    def pixel_side_guards(self, pid: int) -> Tuple[int, ...]:
        """Canonical ids of the (up to four) guards along a pixel's sides."""
        return tuple(sorted({self._canonical_of[run] for run in self.pixel_side_runs(pid)}))

    def pixel_side_runs(self, pid: int) -> Tuple[Tuple[str, int, int, int], ...]:
        """The maximal pixel-edge runs containing each of a pixel's four sides."""
        xl, yl, xh, yh = self.pixels[pid].rect
        runs = set()
        for o, a, lo, hi in ((HORIZONTAL, yl, xl, xh), (HORIZONTAL, yh, xl, xh),
                             (VERTICAL, xl, yl, yh), (VERTICAL, xh, yl, yh)):
            for rlo, rhi in self._runs_by_line.get((o, a), ()):
                if rlo <= lo and hi <= rhi:
                    runs.add((o, a, rlo, rhi))
                    break
            else:
                raise KeyError(f"pixel {pid} side on {o} line {a} is not on a run")
        return tuple(sorted(runs))

    def canonical_guard_of_run(self, run: Tuple[str, int, int, int]) -> int:
        return self._canonical_of[run]

    def extend_to_maximal(self, orientation: str, anchor: int, lo: int, hi: int) -> GuardSegment:
        """Extend a grid-line segment inside the closed polygon as far as possible.

        Span endpoints may fall between grid cuts; in-polygon membership is
        uniform within a unit segment, so snapping outward stays inside.
        """
        if orientation == HORIZONTAL:
            if anchor not in self._yi:
                raise ValueError(f"horizontal line y={anchor} is not a grid line")
            j = self._yi[anchor]
            ilo = max(0, bisect_right(self.x_cuts, lo) - 1)
            ihi = min(len(self.x_cuts) - 1, bisect_left(self.x_cuts, hi))
            def ok(i):
                return self._cell_inside(i, j - 1) or self._cell_inside(i, j)
            while ilo > 0 and ok(ilo - 1):
                ilo -= 1
            while ihi < len(self.x_cuts) - 1 and ok(ihi):
                ihi += 1
            lo2, hi2 = self.x_cuts[ilo], self.x_cuts[ihi]
        else:
            if anchor not in self._xi:
                raise ValueError(f"vertical line x={anchor} is not a grid line")
            i = self._xi[anchor]
            jlo = max(0, bisect_right(self.y_cuts, lo) - 1)
            jhi = min(len(self.y_cuts) - 1, bisect_left(self.y_cuts, hi))
            def ok(j):
                return self._cell_inside(i - 1, j) or self._cell_inside(i, j)
            while jlo > 0 and ok(jlo - 1):
                jlo -= 1
            while jhi < len(self.y_cuts) - 1 and ok(jhi):
                jhi += 1
            lo2, hi2 = self.y_cuts[jlo], self.y_cuts[jhi]
        mask = self._segment_hit_mask(orientation, anchor, lo2, hi2)
        return GuardSegment(orientation=orientation, anchor=anchor, lo=lo2, hi=hi2,
                            id=-1, hit_set=mask)

    def slice_pixels(self, sigma_id: int) -> List[int]:
        mask = self._slice_cross_mask[sigma_id]
        return [i for i in range(len(self.pixels)) if mask >> i & 1]

    def is_thin(self) -> bool:
        """No pixel corner lies in the interior of the polygon."""
        for p in self.pixels:
            xl, yl, xh, yh = p.rect
            for corner in ((xl, yl), (xl, yh), (xh, yl), (xh, yh)):
                if not self.on_boundary(corner):
                    return False
        return True


def _segment_intersects_sigma(orientation: str, anchor: int, lo: int, hi: int,
                              seg: SliceSegment) -> bool:
    """Closed intersection between a grid-line segment and a slice-segment."""
    if orientation != seg.orientation:
        # perpendicular: compare the anchor against the other's span
        return (2 * seg.lo <= 2 * anchor <= 2 * seg.hi
                and 2 * lo <= seg.anchor2 <= 2 * hi)
    return 2 * anchor == seg.anchor2 and max(2 * lo, 2 * seg.lo) <= min(2 * hi, 2 * seg.hi)


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=256)
def pixelate(polygon: OrthoPolygon) -> Pixelation:
    """Build the pixelation of a validated polygon (cached per polygon)."""
    return Pixelation(polygon)


def segmentation(polygon: OrthoPolygon, orientation: str) -> List[Slice]:
    """The horizontal or vertical segmentation of the polygon."""
    pix = pixelate(polygon)
    return pix.slices_h if orientation == HORIZONTAL else pix.slices_v


def guard_segments(pix: Pixelation, orientations: Iterable[str] = (HORIZONTAL, VERTICAL)) -> List[GuardSegment]:
    wanted = set(orientations)
    return [g for g in pix.guards if g.orientation in wanted]


def hits(g: GuardSegment, cross: Cross, pix: Pixelation) -> bool:
    """Does the guard hit the cross, i.e. intersect one of its supports?"""
    for sid in (cross.h_support, cross.v_support):
        if _segment_intersects_sigma(g.orientation, g.anchor, g.lo, g.hi, pix.sigmas[sid]):
            return True
    return False


def visible_region(pix: Pixelation, g: GuardSegment) -> set:
    """Pixel ids of all slices whose slice-segment the guard intersects."""
    out = set()
    for seg in pix.sigmas:
        if _segment_intersects_sigma(g.orientation, g.anchor, g.lo, g.hi, seg):
            out.update(pix.slice_pixels(seg.id))
    return out


def _resolve_guards(pix: Pixelation, guards) -> List[GuardSegment]:
    out = []
    for g in guards:
        out.append(pix.guards[g] if isinstance(g, int) else g)
    return sorted(out, key=GuardSegment.key)


def verify_cover(pix: Pixelation, guards, xprime: Optional[Iterable[int]] = None) -> CoverageReport:
    """Check whether the guards hit every requested cross.

    For each covered cross the certificate records the support slice-segment
    through which it is hit and the witnessing guard.  Uncovered crosses are
    reported in ascending id order.
    """
    segs = _resolve_guards(pix, guards)
    ids = sorted(xprime) if xprime is not None else range(len(pix.crosses))
    uncovered = []
    certificate = {}
    for cid in ids:
        cross = pix.crosses[cid]
        hit = None
        for g in segs:
            for sid in (cross.h_support, cross.v_support):
                if _segment_intersects_sigma(g.orientation, g.anchor, g.lo, g.hi, pix.sigmas[sid]):
                    hit = (sid, (g.orientation, g.anchor, g.lo, g.hi))
                    break
            if hit:
                break
        if hit:
            certificate[cid] = hit
        else:
            uncovered.append(cid)
    return CoverageReport(uncovered=tuple(uncovered), certificate=certificate)


def segmentation_dual(polygon: OrthoPolygon, orientation: str) -> Dict[int, set]:
    """Weak dual of one segmentation: slices adjacent iff they share part of a side."""
    pix = pixelate(polygon)
    if orientation == VERTICAL:
        n = len(pix.slices_v)
        which = pix._cell_vslice
    else:
        n = len(pix.slices_h)
        which = pix._cell_hslice
    adj: Dict[int, set] = {i: set() for i in range(n)}
    for (i, j) in pix._cells:
        for nb in ((i + 1, j), (i, j + 1)):
            if nb in which:
                a, b = which[(i, j)], which[nb]
                if a != b:
                    adj[a].add(b)
                    adj[b].add(a)
    return adj
