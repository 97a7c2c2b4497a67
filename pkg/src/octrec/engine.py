"""The bounded octahedron recurrence engine.

A ``SpaceTimeState`` holds a memo of semifield values over lattice
points (x, y, t) together with the current frontier section.  Local
moves raise (or lower) one site of the frontier by 2, computing the new
value from the four compass neighbors and the value directly below
(above) via the seven-case update rule: one rule in the interior, one on
each wall, one at each corner.  The rules are involutive, so states
propagate to the past as well as the future.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .lattice import (GridPoint, LatticePoint, Rectangle, Section,
                      boundary_constant, geodesic_path, validate_section)
from .semifield import (PositiveRational, SemifieldValue, TropicalNumber,
                        add, div, mul)


class MoveError(ValueError):
    """A local move was attempted at a site that cannot move."""


class UnreachableTargetError(ValueError):
    """An evolution target violates the section invariants."""


def step_rule(neighbors: Dict[str, SemifieldValue], below: SemifieldValue) -> SemifieldValue:
    """Value at (x, y, t+1) from the compass neighbors at time t and the
    value at (x, y, t-1).

    ``neighbors`` maps a subset of {"+x", "-x", "+y", "-y"} to values;
    which slots are present encodes the site kind.  Interior sites have
    all four and get (ac + bd)/e; wall sites have one opposite pair;
    corner sites have one neighbor along each axis.
    """
    xs = [neighbors[k] for k in ("+x", "-x") if k in neighbors]
    ys = [neighbors[k] for k in ("+y", "-y") if k in neighbors]
    if len(xs) == 2 and len(ys) == 2:
        num = add(mul(xs[0], xs[1]), mul(ys[0], ys[1]))
    elif len(xs) == 2 and not ys:
        num = mul(xs[0], xs[1])
    elif len(ys) == 2 and not xs:
        num = mul(ys[0], ys[1])
    elif len(xs) == 1 and len(ys) == 1:
        num = mul(xs[0], ys[0])
    else:
        raise MoveError(f"invalid neighbor slots: {sorted(neighbors)}")
    return div(num, below)


def step_rule_inverse(neighbors: Dict[str, SemifieldValue], above: SemifieldValue) -> SemifieldValue:
    """The rule is its own inverse: e = (ac + bd)/e'."""
    return step_rule(neighbors, above)


@dataclass
class SpaceTimeState:
    domain: Rectangle
    heights: Dict[GridPoint, int]          # current frontier section
    values: Dict[LatticePoint, SemifieldValue]  # memo of every computed point

    @classmethod
    def from_section_state(cls, section: Section,
                           values: Dict[GridPoint, SemifieldValue]) -> "SpaceTimeState":
        bad = validate_section(section)
        if bad is not None:
            raise UnreachableTargetError(f"invalid section: {bad}")
        memo = {(x, y, t): values[(x, y)] for (x, y), t in section.heights.items()}
        return cls(section.domain, dict(section.heights), memo)

    def section(self) -> Section:
        return Section(self.domain, dict(self.heights))

    def copy(self) -> "SpaceTimeState":
        return SpaceTimeState(self.domain, dict(self.heights), dict(self.values))

    def frontier_value(self, x: int, y: int) -> SemifieldValue:
        return self.values[(x, y, self.heights[(x, y)])]


def liftable_sites(state: SpaceTimeState) -> List[GridPoint]:
    """Sites that are strict local minima of the frontier (every existing
    neighbor one step higher); raising such a site by 2 is a valid move."""
    out = []
    for (x, y), t in state.heights.items():
        nbs = state.domain.neighbors(x, y)
        if all(state.heights[nb] == t + 1 for nb in nbs):
            out.append((x, y))
    return sorted(out)


def lowerable_sites(state: SpaceTimeState) -> List[GridPoint]:
    out = []
    for (x, y), t in state.heights.items():
        nbs = state.domain.neighbors(x, y)
        if all(state.heights[nb] == t - 1 for nb in nbs):
            out.append((x, y))
    return sorted(out)


_SLOT = {(1, 0): "+x", (-1, 0): "-x", (0, 1): "+y", (0, -1): "-y"}


def neighbor_slots(domain, x: int, y: int) -> Dict[str, GridPoint]:
    """The compass slots the update rule reads at (x, y).

    An axis contributes its pair when both neighbors exist; a walled
    axis is dropped entirely unless both axes are walled (a corner), in
    which case each contributes its single inward neighbor.
    """
    present = {_SLOT[(nx - x, ny - y)]: (nx, ny)
               for nx, ny in domain.neighbors(x, y)}
    xs = [s for s in ("+x", "-x") if s in present]
    ys = [s for s in ("+y", "-y") if s in present]
    if len(xs) == 2 and len(ys) == 2:
        keep = xs + ys
    elif len(xs) == 2 and len(ys) == 1:
        keep = xs
    elif len(ys) == 2 and len(xs) == 1:
        keep = ys
    else:
        keep = xs + ys
    return {s: present[s] for s in keep}


def _neighbor_values(state: SpaceTimeState, x: int, y: int) -> Dict[str, SemifieldValue]:
    return {slot: state.frontier_value(nx, ny)
            for slot, (nx, ny) in neighbor_slots(state.domain, x, y).items()}


def apply_up_move(state: SpaceTimeState, site: GridPoint) -> None:
    x, y = site
    t = state.heights[site]
    nbs = state.domain.neighbors(x, y)
    if not all(state.heights[nb] == t + 1 for nb in nbs):
        raise MoveError(f"site {site} is not liftable")
    new = step_rule(_neighbor_values(state, x, y), state.values[(x, y, t)])
    state.heights[site] = t + 2
    state.values[(x, y, t + 2)] = new


def apply_down_move(state: SpaceTimeState, site: GridPoint) -> None:
    x, y = site
    t = state.heights[site]
    nbs = state.domain.neighbors(x, y)
    if not all(state.heights[nb] == t - 1 for nb in nbs):
        raise MoveError(f"site {site} is not lowerable")
    new = step_rule_inverse(_neighbor_values(state, x, y), state.values[(x, y, t)])
    state.heights[site] = t - 2
    state.values[(x, y, t - 2)] = new


def evolve_to(state: SpaceTimeState, target: Section,
              schedule_rng: Optional[random.Random] = None) -> None:
    """Move the frontier to ``target`` (any section, above or below or
    neither), memoizing every intermediate value.  The result is
    independent of move order; by default sites are processed in
    lexicographic order, a seeded rng randomizes the schedule for
    confluence tests.
    """
    bad = validate_section(target)
    if bad is not None:
        raise UnreachableTargetError(f"invalid target section: {bad}")
    if target.heights.keys() != state.heights.keys():
        raise UnreachableTargetError("target lives on a different grid")
    for p, t in target.heights.items():
        if (t - state.heights[p]) % 2 != 0:
            raise UnreachableTargetError(f"target parity mismatch at {p}")
    # Raise everything below the pointwise max first, then come down.
    up_target = {p: max(t, state.heights[p]) for p, t in target.heights.items()}
    _monotone_sweep(state, up_target, up=True, rng=schedule_rng)
    _monotone_sweep(state, dict(target.heights), up=False, rng=schedule_rng)


def _monotone_sweep(state: SpaceTimeState, target: Dict[GridPoint, int],
                    up: bool, rng: Optional[random.Random]) -> None:
    while True:
        if up:
            pending = [p for p in liftable_sites(state) if state.heights[p] < target[p]]
        else:
            pending = [p for p in lowerable_sites(state) if state.heights[p] > target[p]]
        if not pending:
            break
        if rng is not None:
            rng.shuffle(pending)
        for site in pending:
            if up:
                apply_up_move(state, site)
            else:
                apply_down_move(state, site)
    for p, t in target.items():
        if state.heights[p] != t:
            raise UnreachableTargetError(f"sweep stalled at {p}")


def value_at(state: SpaceTimeState, point: LatticePoint) -> SemifieldValue:
    """Value of the extended state at any lattice point, evolving the
    frontier just far enough.  Only the dependency pyramid of the point
    is touched."""
    x0, y0, t0 = point
    if not state.domain.contains(x0, y0) or (x0 + y0 + t0) % 2 != 0:
        raise ValueError(f"{point} is not a lattice point of the domain")
    if point in state.values:
        return state.values[point]
    h = state.heights[(x0, y0)]
    if t0 > h:
        target = {p: max(state.heights[p], t0 - abs(p[0] - x0) - abs(p[1] - y0))
                  for p in state.heights}
    else:
        target = {p: min(state.heights[p], t0 + abs(p[0] - x0) + abs(p[1] - y0))
                  for p in state.heights}
    saved = dict(state.heights)
    evolve_to(state, Section(state.domain, target))
    evolve_to(state, Section(state.domain, saved))
    return state.values[point]


def antipode(domain: Rectangle, point: LatticePoint) -> LatticePoint:
    x, y, t = point
    return (domain.m - x, domain.n - y, t - domain.m - domain.n)


def periodicity_check(state: SpaceTimeState,
                      sample_points: Sequence[LatticePoint]
                      ) -> Tuple[bool, SemifieldValue, List[SemifieldValue]]:
    """Check f(x, y, t) = c * f(m-x, n-y, t-m-n) over the samples.

    Returns (verdict, c, ratios).  The common ratio c is cross-checked
    against the path constant of a slope-1 geodesic through a boundary
    point; the verdict is True only if every ratio and the path constant
    agree exactly.
    """
    if not sample_points:
        raise ValueError("need at least one sample point")
    ratios = []
    for p in sample_points:
        fp = value_at(state, p)
        fq = value_at(state, antipode(state.domain, p))
        ratios.append(div(fp, fq))
    c = ratios[0]
    ok = all(r == c for r in ratios)
    # Geodesic through the boundary point (0, 0) at an even height.
    t_top = state.heights[(0, 0)] + 2
    path = geodesic_path(state.domain, 0, 0, t_top)
    c_path = boundary_constant(lambda q: value_at(state, q), path)
    ok = ok and c_path == c
    return ok, c, ratios


def state_boundary_constant(state: SpaceTimeState, path) -> SemifieldValue:
    """Path constant of a boundary path, values supplied by the engine."""
    return boundary_constant(lambda q: value_at(state, q), path)


# ---------------------------------------------------------------------------
# Seeded random generators shared by the tests and the CLI.

def random_section(domain: Rectangle, rng: random.Random,
                   base: int = 0) -> Section:
    """Random valid section built row by row from seeded lattice walks."""
    h: Dict[GridPoint, int] = {}
    h[(0, 0)] = base if base % 2 == 0 else base + 1
    for x in range(1, domain.m + 1):
        h[(x, 0)] = h[(x - 1, 0)] + rng.choice((-1, 1))
    for y in range(1, domain.n + 1):
        h[(0, y)] = h[(0, y - 1)] + rng.choice((-1, 1))
        for x in range(1, domain.m + 1):
            left = h[(x - 1, y)]
            below = h[(x, y - 1)]
            if left == below:
                h[(x, y)] = left + rng.choice((-1, 1))
            else:
                h[(x, y)] = (left + below) // 2
    return Section(domain, h)


def random_value(kind: str, rng: random.Random) -> SemifieldValue:
    if kind == "rational":
        return PositiveRational(rng.randint(1, 20), rng.randint(1, 20))
    if kind == "tropical":
        return TropicalNumber(rng.randint(-10, 10))
    raise ValueError(f"unknown semifield kind: {kind}")


def random_state(domain: Rectangle, kind: str, rng: random.Random) -> SpaceTimeState:
    section = random_section(domain, rng)
    values = {p: random_value(kind, rng) for p in section.heights}
    return SpaceTimeState.from_section_state(section, values)
