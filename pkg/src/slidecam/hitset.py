"""Discrete problem objects built on top of a pixelation.

The guarding question becomes a hitting-set problem: the universe is a set
of candidate cameras and each requested cross contributes the set of
cameras that hit it.  The same data also feeds the segment-covering
reduction (horizontal cameras versus vertical supports) and the tripartite
auxiliary graph used by the treewidth solver.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .errors import PreconditionViolated
from .geometry import HORIZONTAL, Pixelation, _segment_intersects_sigma

Node = Tuple[str, int]  # ("c", cross id) | ("s", sigma id) | ("g", guard id)


@dataclass(frozen=True)
class HittingInstance:
    """Universe of guard ids plus, per cross, the guards hitting it.

    The instance is *infeasible* (a first-class state, not an error) when
    some cross is hit by no allowed guard.
    """

    pix: Pixelation
    xprime: Tuple[int, ...]
    universe: Tuple[int, ...]
    sets: Dict[int, FrozenSet[int]]
    weights: Dict[int, object] = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return not self.infeasible_crosses

    @property
    def infeasible_crosses(self) -> Tuple[int, ...]:
        return tuple(c for c in self.xprime if not self.sets[c])

    def weight_of(self, gid: int):
        return self.weights.get(gid, 1)

    def total_weight(self):
        return sum(self.weight_of(g) for g in self.universe)

    def set_weight(self, cid: int):
        return sum(self.weight_of(g) for g in self.sets[cid])

    def with_weights(self, weights: Dict[int, object]) -> "HittingInstance":
        return replace(self, weights=dict(weights))

    def orientations(self) -> set:
        return {self.pix.guards[g].orientation for g in self.universe}

    def restrict_orientation(self, orientation: str) -> "HittingInstance":
        uni = tuple(g for g in self.universe if self.pix.guards[g].orientation == orientation)
        uset = set(uni)
        sets = {c: frozenset(s & uset) for c, s in self.sets.items()}
        w = {g: self.weights[g] for g in uni if g in self.weights}
        return HittingInstance(pix=self.pix, xprime=self.xprime, universe=uni,
                               sets=sets, weights=w)

    def to_dict(self) -> dict:
        return {
            "universe": list(self.universe),
            "sets": [{"cross": c, "guards": sorted(self.sets[c])} for c in self.xprime],
        }


def build_instance(pix: Pixelation, xprime: Optional[Iterable[int]] = None,
                   gammaprime: Optional[Iterable[int]] = None) -> HittingInstance:
    """Assemble the hitting-set instance for the requested crosses and guards."""
    xp = tuple(sorted(xprime)) if xprime is not None else tuple(range(len(pix.crosses)))
    uni = tuple(sorted(gammaprime)) if gammaprime is not None else tuple(
        g.id for g in pix.guards)
    sets = {}
    for c in xp:
        sets[c] = frozenset(g for g in uni if pix.guards[g].hit_set >> c & 1)
    return HittingInstance(pix=pix, xprime=xp, universe=uni, sets=sets)


# ---------------------------------------------------------------------------
# Orthogonal segment covering
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SegmentCoveringInstance:
    """Horizontal candidate segments that must stab a set of vertical targets.

    Targets are stored with doubled x (``anchor2``) like slice-segments.
    """

    horizontals: Tuple[Tuple[int, int, int, int], ...]  # (guard id, y, x_lo, x_hi)
    verticals: Tuple[Tuple[int, int, int], ...]         # (anchor2, y_lo, y_hi)

    def covers(self, gidx: int, vidx: int) -> bool:
        _, y, xlo, xhi = self.horizontals[gidx]
        a2, ylo, yhi = self.verticals[vidx]
        return ylo <= y <= yhi and 2 * xlo <= a2 <= 2 * xhi


def to_segment_covering(pix: Pixelation, xprime: Iterable[int],
                        gammaprime: Iterable[int]) -> SegmentCoveringInstance:
    """Reduce a horizontal-cameras-only problem to stabbing vertical supports."""
    horiz = []
    for g in sorted(gammaprime):
        seg = pix.guards[g]
        if seg.orientation != HORIZONTAL:
            raise PreconditionViolated("segment covering expects horizontal guards only")
        horiz.append((g, seg.anchor, seg.lo, seg.hi))
    verts = set()
    for c in sorted(xprime):
        sv = pix.sigmas[pix.crosses[c].v_support]
        verts.add((sv.anchor2, sv.lo, sv.hi))
    return SegmentCoveringInstance(horizontals=tuple(horiz), verticals=tuple(sorted(verts)))


# ---------------------------------------------------------------------------
# Auxiliary graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AuxiliaryGraph:
    """Tripartite graph over crosses, slice-segments and guards.

    Crosses connect to their two supports; guards connect to every
    slice-segment they intersect.  There are no cross-guard edges, so a
    guard set covers a cross exactly when the cross is within distance two
    of the set.
    """

    pix: Pixelation
    xprime: Tuple[int, ...]
    sigma_ids: Tuple[int, ...]
    gammaprime: Tuple[int, ...]
    adj: Dict[Node, FrozenSet[Node]]

    @property
    def xprime_set(self) -> set:
        return set(self.xprime)

    @property
    def gamma_set(self) -> set:
        return set(self.gammaprime)

    def nodes(self) -> List[Node]:
        return ([("c", c) for c in self.xprime]
                + [("s", s) for s in self.sigma_ids]
                + [("g", g) for g in self.gammaprime])

    def edges(self) -> List[Tuple[Node, Node]]:
        out = []
        for u, nbrs in self.adj.items():
            for v in nbrs:
                if u < v:
                    out.append((u, v))
        return sorted(out)


def build_auxiliary_graph(pix: Pixelation, xprime: Optional[Iterable[int]] = None,
                          gammaprime: Optional[Iterable[int]] = None) -> AuxiliaryGraph:
    xp = tuple(sorted(xprime)) if xprime is not None else tuple(range(len(pix.crosses)))
    gp = tuple(sorted(gammaprime)) if gammaprime is not None else tuple(
        g.id for g in pix.guards)
    adj: Dict[Node, set] = {}

    def link(u: Node, v: Node):
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)

    for s in pix.sigmas:
        adj.setdefault(("s", s.id), set())
    for c in xp:
        cross = pix.crosses[c]
        link(("c", c), ("s", cross.h_support))
        link(("c", c), ("s", cross.v_support))
    for g in gp:
        guard = pix.guards[g]
        adj.setdefault(("g", g), set())
        for s in pix.sigmas:
            if _segment_intersects_sigma(guard.orientation, guard.anchor,
                                         guard.lo, guard.hi, s):
                link(("g", g), ("s", s.id))

    for c in xp:
        deg = sum(1 for v in adj[("c", c)] if v[0] == "s")
        if deg != 2 or any(v[0] == "g" for v in adj[("c", c)]):
            raise AssertionError("auxiliary graph is not tripartite as expected")

    return AuxiliaryGraph(pix=pix, xprime=xp,
                          sigma_ids=tuple(s.id for s in pix.sigmas),
                          gammaprime=gp,
                          adj={u: frozenset(v) for u, v in adj.items()})
