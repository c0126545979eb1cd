"""Ground-truth solvers: brute-force minimum cover and a greedy baseline."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import CapExceeded, Infeasible, TooLargeForOracle
from .geometry import GuardSegment, Pixelation, verify_cover
from .hitset import HittingInstance

_ORACLE_LIMIT = 40


@dataclass(frozen=True)
class Solution:
    """A verified set of cameras together with its coverage certificate."""

    cameras: Tuple[GuardSegment, ...]
    size: int
    method: str
    certificate: Dict[int, tuple]
    guard_ids: Optional[Tuple[int, ...]] = None

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "cameras": [
                {"orientation": g.orientation, "anchor": g.anchor, "span": [g.lo, g.hi]}
                for g in self.cameras
            ],
            "method": self.method,
        }


def make_solution(pix: Pixelation, xprime: Iterable[int], guards, method: str) -> Solution:
    """Build a Solution, re-verifying coverage geometrically."""
    xp = tuple(sorted(xprime))
    ids: Optional[Tuple[int, ...]] = None
    if all(isinstance(g, int) for g in guards):
        ids = tuple(sorted(guards))
        cams = tuple(pix.guards[g] for g in ids)
    else:
        cams = tuple(sorted(guards, key=GuardSegment.key))
    report = verify_cover(pix, list(guards), xp)
    if not report.covered:
        raise AssertionError(f"solution does not cover crosses {report.uncovered}")
    return Solution(cameras=cams, size=len(cams), method=method,
                    certificate=dict(report.certificate), guard_ids=ids)


def _prepare_masks(inst: HittingInstance):
    """Cross bitmasks per universe guard, restricted to the instance's crosses."""
    pos = {c: i for i, c in enumerate(inst.xprime)}
    masks = {}
    for g in inst.universe:
        m = 0
        for c in inst.xprime:
            if g in inst.sets[c]:
                m |= 1 << pos[c]
        masks[g] = m
    full = (1 << len(inst.xprime)) - 1
    return masks, full, pos


def _dominance_prune(inst: HittingInstance, masks: Dict[int, int]) -> List[int]:
    """Drop guards whose hit set is contained in another guard's hit set."""
    order = sorted(inst.universe)
    kept: List[int] = []
    for g in order:
        mg = masks[g]
        dominated = False
        for h in order:
            if h == g:
                continue
            mh = masks[h]
            if mg & ~mh:
                continue
            if mh != mg or h < g:
                dominated = True
                break
        if not dominated:
            kept.append(g)
    return kept


def brute_force_min_cover(inst: HittingInstance, cap: Optional[int] = None) -> Solution:
    """Minimum-cardinality cover by iterative deepening over the cover size.

    Branches on an uncovered cross with the fewest candidate guards and tries
    those guards in ascending id order, so results are deterministic.
    """
    if not inst.feasible:
        raise Infeasible(f"crosses {inst.infeasible_crosses} cannot be hit")
    masks, full, _ = _prepare_masks(inst)
    if full == 0:
        return make_solution(inst.pix, inst.xprime, [], "exact")
    candidates = _dominance_prune(inst, masks)
    if len(candidates) > _ORACLE_LIMIT:
        raise TooLargeForOracle(
            f"{len(candidates)} guards after dominance pruning (limit {_ORACLE_LIMIT})")
    if cap is None:
        cap = len(candidates)

    pos_cross = {1 << i: c for i, c in enumerate(inst.xprime)}
    by_cross = {c: [g for g in candidates if masks[g] >> i & 1]
                for i, c in enumerate(inst.xprime)}

    def search(uncovered: int, budget: int) -> Optional[List[int]]:
        if uncovered == 0:
            return []
        if budget == 0:
            return None
        # pick the uncovered cross with the fewest remaining candidates
        best_c, best_list = None, None
        m = uncovered
        while m:
            bit = m & -m
            m ^= bit
            c = pos_cross[bit]
            lst = by_cross[c]
            if best_list is None or len(lst) < len(best_list):
                best_c, best_list = c, lst
        for g in best_list:
            rest = search(uncovered & ~masks[g], budget - 1)
            if rest is not None:
                return [g] + rest
        return None

    for k in range(0, cap + 1):
        picked = search(full, k)
        if picked is not None:
            return make_solution(inst.pix, inst.xprime, sorted(picked), "exact")
    raise CapExceeded(f"no cover of size <= {cap}")


def greedy_cover(inst: HittingInstance) -> Solution:
    """Repeatedly pick the guard hitting the most still-uncovered crosses."""
    if not inst.feasible:
        raise Infeasible(f"crosses {inst.infeasible_crosses} cannot be hit")
    masks, full, _ = _prepare_masks(inst)
    uncovered = full
    picked: List[int] = []
    while uncovered:
        best, best_gain = None, -1
        for g in sorted(inst.universe):
            gain = bin(masks[g] & uncovered).count("1")
            if gain > best_gain:
                best, best_gain = g, gain
        picked.append(best)
        uncovered &= ~masks[best]
    return make_solution(inst.pix, inst.xprime, sorted(picked), "greedy")
