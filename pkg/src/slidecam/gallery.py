"""Instance generators and the constructive guarding procedures.

Generators return validated polygons; the comb and the spiral family come
with known optima (one horizontal camera per comb tooth; one camera per
spiral wrap level), which the test suite re-certifies against the
brute-force solver.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

from .errors import (
    GenerationFailed,
    NotPathSegmentation,
    PolygonError,
    PreconditionViolated,
)
from .exact import Solution, brute_force_min_cover, make_solution
from .geometry import (
    HORIZONTAL,
    VERTICAL,
    GuardSegment,
    OrthoPolygon,
    Pixelation,
    guard_segments,
    pixelate,
    segmentation_dual,
    validate_polygon,
    verify_cover,
)
from .hitset import build_instance

Cell = Tuple[int, int]


# ---------------------------------------------------------------------------
# Cell sets -> polygons
# ---------------------------------------------------------------------------

def polygon_from_cells(cells: Set[Cell]) -> OrthoPolygon:
    """Trace the boundary of a union of unit cells into a polygon.

    The cell set must be connected, simply connected and free of pinch
    points; the outer ring is walked with the interior on its left.
    """
    if not cells:
        raise GenerationFailed("empty cell set")
    # directed boundary edges, interior on the left
    nxt: Dict[Cell, Cell] = {}
    for (x, y) in cells:
        if (x, y - 1) not in cells:
            _add_step(nxt, (x, y), (x + 1, y))
        if (x, y + 1) not in cells:
            _add_step(nxt, (x + 1, y + 1), (x, y + 1))
        if (x - 1, y) not in cells:
            _add_step(nxt, (x, y + 1), (x, y))
        if (x + 1, y) not in cells:
            _add_step(nxt, (x + 1, y), (x + 1, y + 1))
    start = min(nxt)
    ring = [start]
    cur = nxt[start]
    while cur != start:
        ring.append(cur)
        if cur not in nxt:
            raise GenerationFailed("boundary walk left the edge set")
        cur = nxt[cur]
    if len(ring) != len(nxt):
        raise GenerationFailed("cell set is not simply connected")
    return validate_polygon([ring])


def _add_step(nxt: Dict[Cell, Cell], a: Cell, b: Cell):
    if a in nxt:
        raise GenerationFailed("pinch point in cell set")
    nxt[a] = b


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def gen_comb(k: int) -> OrthoPolygon:
    """Vertical spine with k horizontal teeth; 4k vertices.

    Every tooth needs its own horizontal camera, while a single vertical
    camera along the spine sees everything.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    cells = {(0, y) for y in range(2 * k - 1)}
    cells |= {(1, 2 * i) for i in range(k)}
    poly = polygon_from_cells(cells)
    if poly.n != 4 * k:
        raise AssertionError(f"comb({k}) has {poly.n} vertices, expected {4 * k}")
    return poly


def _spiral_cells(k: int) -> Set[Cell]:
    turns = 3 * (k - 1)
    length = 3 * k - 1
    dirs = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    x, y = 0, 0
    cells = {(x, y)}
    for leg in range(turns + 1):
        dx, dy = dirs[leg % 4]
        steps = (length - leg) - (1 if leg == 0 else 0)
        for _ in range(steps):
            x, y = x + dx, y + dy
            cells.add((x, y))
    return cells


def gen_path_lb(k: int) -> OrthoPolygon:
    """Unit-width rectangular spiral with 3(k-1) turns; 6k-2 vertices.

    Its vertical segmentation is a path of slices, and the innermost pocket
    of each wrap level carries a cross that no camera shares with another
    level, so k cameras are required (and suffice).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    poly = polygon_from_cells(_spiral_cells(k))
    if poly.n != 6 * k - 2:
        raise AssertionError(f"spiral({k}) has {poly.n} vertices, expected {6 * k - 2}")
    return poly


def gen_random_simple(n: int, seed: int = 0) -> OrthoPolygon:
    """Random simple hole-free polygon with exactly n vertices.

    Starts from a rectangle and repeatedly carves rectangular notches out of
    convex corners (+2 vertices) or edge middles (+4 vertices) until the
    vertex budget is used up; invalid carves are retried.
    """
    if n < 4 or n % 2:
        raise ValueError("n must be an even number >= 4")
    rng = random.Random(f"simple:{n}:{seed}")
    for _ in range(300):
        poly = _try_random_simple(n, rng)
        if poly is not None:
            return poly
    raise GenerationFailed(f"could not generate a simple polygon with n={n}")


def _try_random_simple(n: int, rng: random.Random) -> Optional[OrthoPolygon]:
    size = max(6, n)
    w, h = rng.randint(5, size), rng.randint(5, size)
    ring: List[Tuple[int, int]] = [(0, 0), (w, 0), (w, h), (0, h)]
    while len(ring) < n:
        remaining = n - len(ring)
        want_edge_notch = remaining >= 4 and rng.random() < 0.35
        for _ in range(40):
            cand = (_edge_notch(ring, rng) if want_edge_notch
                    else _corner_notch(ring, rng))
            if cand is None:
                continue
            try:
                poly = validate_polygon([cand])
            except PolygonError:
                continue
            if poly.n == len(cand) and len(cand) == len(ring) + (4 if want_edge_notch else 2):
                ring = [tuple(v) for v in poly.outer]
                break
        else:
            return None
    try:
        return validate_polygon([ring])
    except PolygonError:
        return None


def _ring_dirs(ring, i):
    n = len(ring)
    p, v, q = ring[(i - 1) % n], ring[i], ring[(i + 1) % n]
    d1 = (_sign(v[0] - p[0]), _sign(v[1] - p[1]))
    d2 = (_sign(q[0] - v[0]), _sign(q[1] - v[1]))
    return p, v, q, d1, d2


def _sign(x):
    return (x > 0) - (x < 0)


def _corner_notch(ring, rng) -> Optional[List[Tuple[int, int]]]:
    n = len(ring)
    i = rng.randrange(n)
    p, v, q, d1, d2 = _ring_dirs(ring, i)
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    if cross <= 0:  # only convex corners (outer ring is CCW)
        return None
    len1 = abs(v[0] - p[0]) + abs(v[1] - p[1])
    len2 = abs(q[0] - v[0]) + abs(q[1] - v[1])
    if len1 < 2 or len2 < 2:
        return None
    a = rng.randint(1, min(3, len1 - 1))
    b = rng.randint(1, min(3, len2 - 1))
    A = (v[0] - a * d1[0], v[1] - a * d1[1])
    M = (A[0] + b * d2[0], A[1] + b * d2[1])
    C = (v[0] + b * d2[0], v[1] + b * d2[1])
    return ring[:i] + [A, M, C] + ring[i + 1:]


def _edge_notch(ring, rng) -> Optional[List[Tuple[int, int]]]:
    n = len(ring)
    i = rng.randrange(n)
    u, v = ring[i], ring[(i + 1) % n]
    d = (_sign(v[0] - u[0]), _sign(v[1] - u[1]))
    inward = (-d[1], d[0])  # interior is on the left of a CCW ring
    length = abs(v[0] - u[0]) + abs(v[1] - u[1])
    if length < 3:
        return None
    off = rng.randint(1, length - 2)
    width = rng.randint(1, min(3, length - off - 1))
    depth = rng.randint(1, 3)
    e1 = (u[0] + off * d[0], u[1] + off * d[1])
    e2 = (e1[0] + depth * inward[0], e1[1] + depth * inward[1])
    e3 = (e2[0] + width * d[0], e2[1] + width * d[1])
    e4 = (e1[0] + width * d[0], e1[1] + width * d[1])
    return ring[:i + 1] + [e1, e2, e3, e4] + ring[i + 1:]


def gen_thin_tree(branches: int, seed: int = 0) -> OrthoPolygon:
    """Thin hole-free polygon whose pixelation dual is a tree.

    Built as a tree polyomino (no 2x2 block): a horizontal backbone with
    randomly sized teeth, spaced so that cells never form a square; thinness
    follows because every interior lattice point would need all four
    surrounding cells.
    """
    if branches < 1:
        raise ValueError("branches must be >= 1")
    rng = random.Random(f"thin:{branches}:{seed}")
    if branches == 1:
        length = rng.randint(3, 7)
        height = rng.randint(1, 4)
        cells = {(x, 0) for x in range(length)}
        cells |= {(0, y) for y in range(1, height + 1)}
    else:
        positions = [2 * i for i in range(branches)]
        backbone = 2 * branches - 1 + rng.randint(0, 3)
        cells = {(x, 0) for x in range(backbone)}
        for tx in positions:
            for y in range(1, rng.randint(1, 3) + 1):
                cells.add((tx, y))
    poly = polygon_from_cells(cells)
    pix = pixelate(poly)
    from .treewidth import dual_graph, is_tree
    if not is_tree(dual_graph(pix)):
        raise AssertionError("thin-tree generator produced a non-tree dual")
    if not pix.is_thin():
        raise AssertionError("thin-tree generator produced a non-thin polygon")
    return poly


# ---------------------------------------------------------------------------
# Single-camera guarding of small polygons
# ---------------------------------------------------------------------------

def _rotate_polygon(poly: OrthoPolygon) -> OrthoPolygon:
    """Rotate 90 degrees counter-clockwise: (x, y) -> (-y, x)."""
    rings = [[(-y, x) for x, y in ring] for ring in poly.rings()]
    return validate_polygon(rings)


def _unrotate_guard(g: GuardSegment) -> GuardSegment:
    """Inverse of :func:`_rotate_polygon` applied to a guard segment."""
    if g.orientation == HORIZONTAL:
        # endpoints (lo, a), (hi, a) -> (a, -lo), (a, -hi)
        return GuardSegment(orientation=VERTICAL, anchor=g.anchor, lo=-g.hi, hi=-g.lo)
    return GuardSegment(orientation=HORIZONTAL, anchor=-g.anchor, lo=g.lo, hi=g.hi)


def guard_small(poly: OrthoPolygon) -> GuardSegment:
    """One camera guarding a hole-free polygon with at most 8 vertices.

    Up to six vertices a horizontal camera along the full-width band works;
    with eight vertices the polygon is rotated until its two reflex corners
    have distinct x, and a camera through (or inside) the middle vertical
    slice does the job.  The candidate implied by the case analysis is tried
    first and verified before being returned.
    """
    if poly.holes:
        raise PreconditionViolated("guard_small needs a hole-free polygon")
    if poly.n > 8:
        raise PreconditionViolated(f"guard_small needs n <= 8, got {poly.n}")
    pix = pixelate(poly)
    reflex = pix.reflex_vertices

    rotated = False
    if len(reflex) == 2 and reflex[0][0] == reflex[1][0]:
        rotated = True
        poly = _rotate_polygon(poly)
        pix = pixelate(poly)

    candidates: List[GuardSegment] = []
    if len(reflex) <= 1:
        candidates.extend(_full_width_band_guards(pix))
    else:
        candidates.extend(_middle_slice_guards(pix))
    # robustness net: any remaining single guard, in canonical order
    candidates.extend(pix.guards)

    for g in candidates:
        if verify_cover(pix, [g]).covered:
            return _unrotate_guard(g) if rotated else g
    raise AssertionError("no single camera covers this small polygon")


def _full_width_band_guards(pix: Pixelation) -> List[GuardSegment]:
    """Guards along the outer edge of a horizontal slice spanning the full width."""
    xl, _, xh, _ = pix.polygon.bbox()
    out = []
    for s in sorted(pix.slices_h, key=lambda s: -(s.rect[2] - s.rect[0]) * (s.rect[3] - s.rect[1])):
        if s.rect[0] == xl and s.rect[2] == xh:
            for anchor in (s.rect[1], s.rect[3]):
                try:
                    gid = pix.canonical_id_for_run(HORIZONTAL, anchor, s.rect[0], s.rect[2])
                    out.append(pix.guards[gid])
                except KeyError:
                    pass
    return out


def _middle_slice_guards(pix: Pixelation) -> List[GuardSegment]:
    """Candidates for the 8-vertex case: through or inside the middle slice."""
    if len(pix.slices_v) != 3:
        return []
    mid = sorted(pix.slices_v, key=lambda s: s.rect[0])[1]
    xl, yl, xh, yh = mid.rect
    out = []
    # a horizontal line inside the slice that reaches the interior on both
    # sides extends into a camera covering all three slices
    left_open = _open_side_interval(pix, x=xl, ylo=yl, yhi=yh, left=True)
    right_open = _open_side_interval(pix, x=xh, ylo=yl, yhi=yh, left=False)
    for a, b in _interval_overlaps(left_open, right_open):
        for y in pix.y_cuts:
            if a <= y <= b:
                out.append(pix.extend_to_maximal(HORIZONTAL, y, xl, xh))
    # otherwise a vertical camera inside the slice sees all of it and both
    # shorter neighbours
    for anchor in (xl, xh):
        try:
            gid = pix.canonical_id_for_run(VERTICAL, anchor, yl, yh)
            out.append(pix.guards[gid])
        except KeyError:
            pass
    return out


def _open_side_interval(pix: Pixelation, x: int, ylo: int, yhi: int, left: bool):
    """Maximal y-intervals where the vertical line x is interior to the polygon."""
    i = pix._xi[x]
    spans = []
    run = None
    for j in range(len(pix.y_cuts) - 1):
        if pix.y_cuts[j] < ylo or pix.y_cuts[j + 1] > yhi:
            inside = False
        else:
            inside = pix._cell_inside(i - 1, j) and pix._cell_inside(i, j)
        if inside and run is None:
            run = j
        elif not inside and run is not None:
            spans.append((pix.y_cuts[run], pix.y_cuts[j]))
            run = None
    if run is not None:
        spans.append((pix.y_cuts[run], yhi))
    return spans


def _interval_overlaps(a_spans, b_spans):
    out = []
    for a1, a2 in a_spans:
        for b1, b2 in b_spans:
            lo, hi = max(a1, b1), min(a2, b2)
            if lo < hi:
                out.append((lo, hi))
    return out


# ---------------------------------------------------------------------------
# Path-segmentation guarding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PeelStep:
    slices_removed: int
    subpolygon: OrthoPolygon
    camera: GuardSegment
    remainder: Optional[OrthoPolygon]


def _path_order(adj: Dict[int, set]) -> Optional[List[int]]:
    """Vertex order of a path graph, or None if the graph is not a path."""
    if len(adj) == 1:
        return list(adj)
    ends = [v for v, ns in adj.items() if len(ns) == 1]
    if len(ends) != 2 or any(len(ns) > 2 for ns in adj.values()):
        return None
    order = [min(ends)]
    prev = None
    while True:
        nxt = [u for u in adj[order[-1]] if u != prev]
        if not nxt:
            break
        prev = order[-1]
        order.append(nxt[0])
    return order if len(order) == len(adj) else None


def _subpolygon_of_slices(pix: Pixelation, slice_ids, vertical: bool) -> OrthoPolygon:
    which = pix._cell_vslice if vertical else pix._cell_hslice
    wanted = set(slice_ids)
    cells = {c for c in pix._cells if which[c] in wanted}
    # work on the compressed grid, then map indices back to coordinates
    ring_cells = cells
    nxt: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for (i, j) in ring_cells:
        if (i, j - 1) not in ring_cells:
            _add_step(nxt, (i, j), (i + 1, j))
        if (i, j + 1) not in ring_cells:
            _add_step(nxt, (i + 1, j + 1), (i, j + 1))
        if (i - 1, j) not in ring_cells:
            _add_step(nxt, (i, j + 1), (i, j))
        if (i + 1, j) not in ring_cells:
            _add_step(nxt, (i + 1, j), (i + 1, j + 1))
    start = min(nxt)
    walk = [start]
    cur = nxt[start]
    while cur != start:
        walk.append(cur)
        cur = nxt[cur]
    if len(walk) != len(nxt):
        raise AssertionError("peeled region is not simply connected")
    ring = [(pix.x_cuts[i], pix.y_cuts[j]) for i, j in walk]
    return validate_polygon([ring])


def path_guard(poly: OrthoPolygon) -> Solution:
    """Guard a path-segmentation polygon with at most floor((n+2)/6) cameras.

    Peels two or three slices off one end of the path (two when the first
    cut line connects two reflex vertices), guards the peeled piece with a
    single camera and recurses on the remainder.
    """
    sol, _ = path_guard_steps(poly)
    return sol


def path_guard_steps(poly: OrthoPolygon) -> Tuple[Solution, List[PeelStep]]:
    if poly.holes:
        raise NotPathSegmentation("polygon has holes")
    orientation = None
    for cand in (VERTICAL, HORIZONTAL):
        if _path_order(segmentation_dual(poly, cand)) is not None:
            orientation = cand
            break
    if orientation is None:
        raise NotPathSegmentation("neither segmentation dual is a path")

    pix0 = pixelate(poly)
    cameras: List[GuardSegment] = []
    steps: List[PeelStep] = []
    cur = poly
    while True:
        if cur.n <= 8:
            g = guard_small(cur)
            cameras.append(pix0.extend_to_maximal(g.orientation, g.anchor, g.lo, g.hi))
            break
        pix = pixelate(cur)
        adj = segmentation_dual(cur, orientation)
        order = _path_order(adj)
        if order is None:
            raise NotPathSegmentation("remainder lost its path segmentation")
        vertical = orientation == VERTICAL
        slices = pix.slices_v if vertical else pix.slices_h
        first, second = order[0], order[1]
        r1, r2 = slices[first].rect, slices[second].rect
        if vertical:
            x = max(r1[0], r2[0])  # shared boundary line of the two slices
            lo, hi = max(r1[1], r2[1]), min(r1[3], r2[3])
            endpoints = [(x, lo), (x, hi)]
        else:
            y = max(r1[1], r2[1])
            lo, hi = max(r1[0], r2[0]), min(r1[2], r2[2])
            endpoints = [(lo, y), (hi, y)]
        reflex = set(pix.reflex_vertices)
        take = 2 if all(p in reflex for p in endpoints) else 3
        take = min(take, len(order) - 1)
        peeled_ids = order[:take]
        sub = _subpolygon_of_slices(pix, peeled_ids, vertical)
        if sub.n > 8:
            raise AssertionError(f"peeled piece has {sub.n} > 8 vertices")
        g = guard_small(sub)
        camera = pix0.extend_to_maximal(g.orientation, g.anchor, g.lo, g.hi)
        cameras.append(camera)
        remainder = _subpolygon_of_slices(pix, order[take:], vertical)
        if remainder.n > cur.n - 6:
            raise AssertionError("peel did not remove enough vertices")
        steps.append(PeelStep(slices_removed=take, subpolygon=sub,
                              camera=camera, remainder=remainder))
        cur = remainder

    bound = (poly.n + 2) // 6
    if len(cameras) > bound:
        raise AssertionError(f"path guarding used {len(cameras)} > {bound} cameras")
    sol = make_solution(pix0, range(len(pix0.crosses)), cameras, "path")
    return sol, steps


# ---------------------------------------------------------------------------
# Art-gallery bound checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    n: int
    msc: Optional[int]
    mhsc: Optional[int]
    msc_bound: int
    mhsc_bound: int
    msc_checked: bool

    @property
    def ok(self) -> bool:
        fine = self.mhsc is not None and self.mhsc <= self.mhsc_bound
        if self.msc_checked:
            fine = fine and self.msc is not None and self.msc <= self.msc_bound
        return fine

    def to_dict(self) -> dict:
        return {
            "n": self.n, "msc": self.msc, "mhsc": self.mhsc,
            "msc_bound": self.msc_bound, "mhsc_bound": self.mhsc_bound,
            "msc_checked": self.msc_checked, "ok": self.ok,
        }


def check_bounds(poly: OrthoPolygon, cap: Optional[int] = None) -> BoundReport:
    """Exact optima versus the floor((3n+4)/16) and floor(n/4) bounds.

    The all-orientations bound applies to simple hole-free polygons only;
    the horizontal bound is checked regardless.
    """
    n = poly.n
    pix = pixelate(poly)
    horizontal_ids = [g.id for g in guard_segments(pix, (HORIZONTAL,))]
    mhsc = brute_force_min_cover(build_instance(pix, gammaprime=horizontal_ids), cap).size
    msc = None
    msc_checked = not poly.holes
    if msc_checked:
        msc = brute_force_min_cover(build_instance(pix), cap).size
    return BoundReport(n=n, msc=msc, mhsc=mhsc,
                       msc_bound=(3 * n + 4) // 16, mhsc_bound=n // 4,
                       msc_checked=msc_checked)
