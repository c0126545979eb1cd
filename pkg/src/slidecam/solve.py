"""One-stop solver dispatch shared by the CLI and the test suite."""
from __future__ import annotations

from typing import Dict, Iterable, Optional, Tuple

from .approx import bg_hitting_set
from .errors import Infeasible
from .exact import Solution, brute_force_min_cover, greedy_cover
from .gallery import path_guard
from .geometry import (
    HORIZONTAL,
    VERTICAL,
    OrthoPolygon,
    Pixelation,
    guard_segments,
    pixelate,
    verify_cover,
)
from .hitset import HittingInstance, build_auxiliary_graph, build_instance
from .treewidth import decompose, dual_graph, dp_solve, lift_decomposition

MODES = ("msc", "mhsc", "mvsc", "custom")
ALGOS = ("exact", "dp", "bg", "greedy", "path")


def instance_for_mode(pix: Pixelation, mode: str,
                      xprime: Optional[Iterable[int]] = None,
                      guard_ids: Optional[Iterable[int]] = None,
                      guard_orientations: Optional[str] = None) -> HittingInstance:
    if mode == "msc":
        gp = None
    elif mode == "mhsc":
        gp = [g.id for g in guard_segments(pix, (HORIZONTAL,))]
    elif mode == "mvsc":
        gp = [g.id for g in guard_segments(pix, (VERTICAL,))]
    elif mode == "custom":
        if guard_ids is not None:
            gp = list(guard_ids)
        elif guard_orientations:
            wanted = set(guard_orientations.upper())
            gp = [g.id for g in guard_segments(pix, wanted)]
        else:
            gp = None
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return build_instance(pix, xprime=xprime, gammaprime=gp)


def solve_polygon(poly: OrthoPolygon, mode: str = "msc", algo: str = "exact",
                  seed: int = 0, cap: Optional[int] = None, width_max: int = 20,
                  net_constant: float = 4.0, round_constant: float = 4.0,
                  xprime: Optional[Iterable[int]] = None,
                  guard_ids: Optional[Iterable[int]] = None,
                  guard_orientations: Optional[str] = None,
                  ) -> Tuple[Solution, Dict]:
    """Solve one polygon; returns the solution plus run statistics.

    Every returned solution has already been re-verified against the
    geometric coverage checker.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if algo == "path" and (mode != "msc" or xprime is not None):
        raise ValueError("the path algorithm guards every cross with any camera; "
                         "use mode=msc without a cross restriction")
    pix = pixelate(poly)
    info: Dict = {
        "n": poly.n,
        "pixels": len(pix.pixels),
        "crosses": len(pix.crosses),
        "guards": len(pix.guards),
        "msc_bound": (3 * poly.n + 4) // 16,
        "mhsc_bound": poly.n // 4,
    }

    if algo == "path":
        sol = path_guard(poly)
    else:
        inst = instance_for_mode(pix, mode, xprime=xprime, guard_ids=guard_ids,
                                 guard_orientations=guard_orientations)
        info["universe"] = len(inst.universe)
        if not inst.feasible:
            raise Infeasible(f"crosses {inst.infeasible_crosses} cannot be hit")
        if algo == "exact":
            sol = brute_force_min_cover(inst, cap)
        elif algo == "greedy":
            sol = greedy_cover(inst)
        elif algo == "bg":
            report = bg_hitting_set(inst, seed=seed, net_constant=net_constant,
                                    round_constant=round_constant)
            sol = report.solution
            info["bg"] = {
                "guesses": list(report.opt_guess_history),
                "iterations": report.iterations,
                "net_sizes": list(report.net_sizes),
                "terminating_k": report.terminating_k,
                "budget_at_4k": report.budget_at_4k,
            }
        elif algo == "dp":
            d = dual_graph(pix)
            td_d = decompose(d)
            H = build_auxiliary_graph(pix, xprime=inst.xprime, gammaprime=inst.universe)
            td_h = lift_decomposition(td_d, H, pix)
            info["width_d"] = td_d.width
            info["width_h"] = td_h.width
            sol = dp_solve(H, td_h, xprime=inst.xprime, width_max=width_max)
        else:
            raise ValueError(f"unknown algo {algo!r}")

    check = verify_cover(pix, list(sol.cameras),
                         sorted(xprime) if xprime is not None else None)
    if not check.covered:
        raise AssertionError(f"solver returned a non-covering solution: {check.uncovered}")
    info["size"] = sol.size
    return sol, info
