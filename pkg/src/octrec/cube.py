"""The bounded cube recurrence on the triangular prism.

Sites live in the prism x <= y <= z <= x + n.  A state is a window of
consecutive levels x + y + z = s; three consecutive levels determine the
next one through a seven-case rule (one interior case, one for each of
the three walls, one for each of the three edges), and the rule is an
involution, so windows slide both ways.  Values repeat along the prism:
f(x, y, z) = c * f(y - n, z - n, x) for a constant c, a drop of 2n in
the level.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .engine import random_value
from .semifield import SemifieldValue, add, div, mul

CubePoint = Tuple[int, int, int]


class CubeMoveError(ValueError):
    """A cube step was attempted outside the prism or without its data."""


def in_prism(n: int, x: int, y: int, z: int) -> bool:
    return x <= y <= z <= x + n


def cube_site_kind(n: int, x: int, y: int, z: int) -> str:
    """Stratum of the prism at (x, y, z): 'interior', a wall ('xy', 'yz',
    'zx'), or an edge ('xyz', 'yzx', 'zxy')."""
    if not in_prism(n, x, y, z):
        raise CubeMoveError(f"({x}, {y}, {z}) outside the prism")
    on_xy = x == y
    on_yz = y == z
    on_zx = z == x + n
    if on_xy and on_yz:
        return "xyz"  # x = y = z
    if on_yz and on_zx:
        return "yzx"  # y = z = x + n
    if on_zx and on_xy:
        return "zxy"  # z = x + n = y + n
    if on_xy:
        return "xy"
    if on_yz:
        return "yz"
    if on_zx:
        return "zx"
    return "interior"


# Offsets read by the rule for f(x+1, y+1, z+1), besides (x, y, z) below:
# level + 1: a = (1,0,0), b = (0,1,0), c = (0,0,1)
# level + 2: d = (1,1,0), e = (1,0,1), q = (0,1,1)
_A, _B, _C = (1, 0, 0), (0, 1, 0), (0, 0, 1)
_D, _E, _Q = (1, 1, 0), (1, 0, 1), (0, 1, 1)

_RULE_TERMS = {
    "interior": [(_A, _Q), (_B, _E), (_C, _D)],
    "xy": [(_C, _D)],
    "yz": [(_A, _Q)],
    "zx": [(_B, _E)],
    "xyz": [(_C, _Q)],
    "yzx": [(_A, _E)],
    "zxy": [(_B, _D)],
}


def cube_step_rule(kind: str, get, below: SemifieldValue) -> SemifieldValue:
    """Value at (x+1, y+1, z+1) from the values ``get(offset)`` at the
    two intermediate levels and the value ``below`` at (x, y, z)."""
    terms = _RULE_TERMS.get(kind)
    if terms is None:
        raise CubeMoveError(f"unknown site kind {kind!r}")
    acc = None
    for off1, off2 in terms:
        term = mul(get(off1), get(off2))
        acc = term if acc is None else add(acc, term)
    return div(acc, below)


@dataclass
class CubeState:
    """Memoized values over a band of prism levels [lo, hi]."""

    n: int
    values: Dict[CubePoint, SemifieldValue]
    lo: int
    hi: int

    def copy(self) -> "CubeState":
        return CubeState(self.n, dict(self.values), self.lo, self.hi)


def level_points(n: int, s: int) -> List[CubePoint]:
    """Prism sites with x + y + z = s."""
    out = []
    # x <= y <= z <= x + n forces s/3 - n <= x <= s/3
    for x in range((s - 2 * n) // 3 - 1, s // 3 + 1):
        for y in range(x, x + n + 1):
            z = s - x - y
            if in_prism(n, x, y, z):
                out.append((x, y, z))
    return sorted(out)


def slab_from_levels(n: int, lo: int,
                     values: Sequence[Dict[CubePoint, SemifieldValue]]) -> CubeState:
    if len(values) != 3:
        raise ValueError("a slab is three consecutive levels")
    memo: Dict[CubePoint, SemifieldValue] = {}
    for i, level in enumerate(values):
        expect = set(level_points(n, lo + i))
        if set(level) != expect:
            raise ValueError(f"level {lo + i} does not cover its prism sites")
        memo.update(level)
    return CubeState(n, memo, lo, lo + 2)


def cube_extend_up(state: CubeState, steps: int = 1) -> CubeState:
    """Compute ``steps`` further levels above the band."""
    for _ in range(steps):
        s = state.hi + 1
        for (x, y, z) in level_points(state.n, s):
            kind = cube_site_kind(state.n, x - 1, y - 1, z - 1)
            base = (x - 1, y - 1, z - 1)
            get = lambda off: state.values[(base[0] + off[0],
                                            base[1] + off[1],
                                            base[2] + off[2])]
            state.values[(x, y, z)] = cube_step_rule(
                kind, get, state.values[base])
        state.hi = s
    return state


def cube_extend_down(state: CubeState, steps: int = 1) -> CubeState:
    """The rule is an involution: the level below the band is recovered
    by the same combination divided by the top value."""
    for _ in range(steps):
        s = state.lo - 1
        for (x, y, z) in level_points(state.n, s):
            kind = cube_site_kind(state.n, x, y, z)
            get = lambda off: state.values[(x + off[0], y + off[1], z + off[2])]
            state.values[(x, y, z)] = cube_step_rule(
                kind, get, state.values[(x + 1, y + 1, z + 1)])
        state.lo = s
    return state


def cube_shift_image(n: int, point: CubePoint) -> CubePoint:
    """The periodicity partner of a prism site, one turn down the prism:
    (x, y, z) -> (y - n, z - n, x), level drop 2n."""
    x, y, z = point
    return (y - n, z - n, x)


def cube_periodicity_check(state: CubeState, samples: Sequence[CubePoint]
                           ) -> Tuple[bool, SemifieldValue, List[SemifieldValue]]:
    """Check f(p) = c * f(shift image of p) with a common c over the
    samples; extends the band as needed to cover them."""
    if not samples:
        raise ValueError("need at least one sample site")
    needed_lo = min(min(sum(cube_shift_image(state.n, p)) for p in samples), state.lo)
    needed_hi = max(max(sum(p) for p in samples), state.hi)
    cube_extend_up(state, needed_hi - state.hi)
    cube_extend_down(state, state.lo - needed_lo)
    ratios = []
    for p in samples:
        q = cube_shift_image(state.n, p)
        if not in_prism(state.n, *q):
            raise ValueError(f"shift image {q} of {p} leaves the prism")
        ratios.append(div(state.values[p], state.values[q]))
    c = ratios[0]
    return all(r == c for r in ratios), c, ratios


def random_slab(n: int, kind: str, rng: random.Random, lo: int = 0) -> CubeState:
    levels = [{p: random_value(kind, rng) for p in level_points(n, lo + i)}
              for i in range(3)]
    return slab_from_levels(n, lo, levels)
