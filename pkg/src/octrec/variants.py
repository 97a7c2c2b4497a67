"""Quadrant and half-plane variants of the bounded recurrence.

In a quadrant the recurrence transports values from the lower triangle
plane t = x + y - n to the upper plane t = n - x - y; the transport
commutes with the order-3 rotations of the two planes up to an explicit
scalar, and the value at a point depends only on a hexagonal patch of
the input.  Over a half-plane and over a half-strip the analogous
transports are equivalent: explicit piecewise-affine bijections between
the source and target planes intertwine them up to a scalar.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from .engine import neighbor_slots, random_value, step_rule
from .lattice import GridPoint, HalfPlane, HalfStrip, LatticePoint, Quadrant
from .matchings import CellComplex, _assemble, _eid, enumerate_matchings
from .semifield import SemifieldValue, div, mul

_QUADRANT = Quadrant()
_HALF_PLANE = HalfPlane()


@dataclass
class TriangleState:
    """Values on the triangle x, y >= 0, x + y <= n, read as a state on
    the plane t = x + y - n ("lower") or t = n - x - y ("upper")."""

    n: int
    plane: str  # "lower" or "upper"
    values: Dict[GridPoint, SemifieldValue]

    def __post_init__(self):
        if self.plane not in ("lower", "upper"):
            raise ValueError(f"unknown plane {self.plane!r}")
        expect = {(x, y) for x in range(self.n + 1)
                  for y in range(self.n + 1 - x)}
        if set(self.values) != expect:
            raise ValueError("values do not cover the triangle grid")

    def height(self, x: int, y: int) -> int:
        return x + y - self.n if self.plane == "lower" else self.n - x - y


def _closed_sweep(domain, memo: Dict[LatticePoint, SemifieldValue],
                  levels: Iterable[Tuple[int, List[GridPoint]]]) -> None:
    """Fill ``memo`` level by level; every site reads its rule slots at
    t - 1 and the value directly below at t - 2, all already present."""
    for t, pts in levels:
        for (x, y) in pts:
            slots = neighbor_slots(domain, x, y)
            nb = {s: memo[(nx, ny, t - 1)] for s, (nx, ny) in slots.items()}
            memo[(x, y, t)] = step_rule(nb, memo[(x, y, t - 2)])


# ---------------------------------------------------------------------------
# Quadrant: lower triangle plane -> upper triangle plane

def _quarter_levels(n: int) -> List[Tuple[int, List[GridPoint]]]:
    levels = []
    for t in range(-n + 2, n + 1):
        cap = min(n - t, n + t - 2)
        pts = [(x, y) for s in range(abs(n - t) % 2, cap + 1, 2)
               for x in range(s + 1) for y in (s - x,)]
        if pts:
            levels.append((t, pts))
    return levels


def quarter_values(state: TriangleState) -> Dict[LatticePoint, SemifieldValue]:
    """Every value of the transport, keyed (x, y, t), from the input
    plane up to the output plane."""
    if state.plane != "lower":
        raise ValueError("transport starts from the lower plane")
    n = state.n
    memo = {(x, y, x + y - n): v for (x, y), v in state.values.items()}
    _closed_sweep(_QUADRANT, memo, _quarter_levels(n))
    return memo


def quarter_phi(state: TriangleState) -> TriangleState:
    """Transport from the plane t = x + y - n to t = n - x - y."""
    memo = quarter_values(state)
    n = state.n
    out = {(x, y): memo[(x, y, n - x - y)] for (x, y) in state.values}
    return TriangleState(n, "upper", out)


def rotate_lower(state: TriangleState) -> TriangleState:
    """Pullback under the order-3 rotation (x, y) -> (n - x - y, x) of
    the lower plane."""
    if state.plane != "lower":
        raise ValueError("lower-plane rotation")
    n = state.n
    out = {(x, y): state.values[(n - x - y, x)] for (x, y) in state.values}
    return TriangleState(n, "lower", out)


def rotate_upper(state: TriangleState) -> TriangleState:
    """Pullback under the order-3 rotation (x, y) -> (y, n - x - y) of
    the upper plane."""
    if state.plane != "upper":
        raise ValueError("upper-plane rotation")
    n = state.n
    out = {(x, y): state.values[(y, n - x - y)] for (x, y) in state.values}
    return TriangleState(n, "upper", out)


def projective_ratio(a: Dict[GridPoint, SemifieldValue],
                     b: Dict[GridPoint, SemifieldValue]
                     ) -> Tuple[bool, SemifieldValue]:
    """Whether a = scalar * b pointwise, and the scalar."""
    if a.keys() != b.keys():
        raise ValueError("value maps live on different grids")
    k0 = min(a)
    scalar = div(a[k0], b[k0])
    ok = all(div(a[k], b[k]) == scalar for k in a)
    return ok, scalar


def rotation_scalar(state: TriangleState) -> SemifieldValue:
    """The covariance constant f(n, 0, 0) / f(0, 0, -n) of a lower-plane
    state (values at the far corner and at the origin)."""
    return div(state.values[(state.n, 0)], state.values[(0, 0)])


def rotation_covariance_check(state: TriangleState
                              ) -> Tuple[bool, SemifieldValue, SemifieldValue]:
    """Check that transporting then rotating the upper plane agrees with
    rotating the lower plane then transporting, up to the covariance
    scalar.  Returns (verdict, observed scalar, predicted scalar)."""
    lhs = rotate_upper(quarter_phi(state)).values
    rhs = quarter_phi(rotate_lower(state)).values
    ok, scalar = projective_ratio(lhs, rhs)
    predicted = rotation_scalar(state)
    return ok and scalar == predicted, scalar, predicted


# ---------------------------------------------------------------------------
# Hexagon locality

def hexagon_points(n: int, x0: int, y0: int, t0: int) -> List[GridPoint]:
    """Input grid positions the value at (x0, y0, t0) can depend on:
    x <= n - y0, y <= n - x0, x + y >= t0."""
    return [(x, y) for x in range(n + 1) for y in range(n + 1 - x)
            if x <= n - y0 and y <= n - x0 and x + y >= t0]


def hexagon_locality_check(state: TriangleState, point: LatticePoint,
                           rng: random.Random, kind: str) -> bool:
    """Re-randomize every input value outside the hexagon of ``point``
    and verify the transported value there does not change.

    The single exception is the bottom corner (0, 0): the value is a
    hexagon-local sum times 1/f(0, 0, -n), so when the corner falls
    outside the hexagon its perturbation rescales the value by exactly
    the inverse factor, which is divided out before comparing."""
    x0, y0, t0 = point
    n = state.n
    base = quarter_values(state)[point]
    hexa = set(hexagon_points(n, x0, y0, t0))
    perturbed = dict(state.values)
    for p in perturbed:
        if p not in hexa:
            perturbed[p] = random_value(kind, rng)
    other = quarter_values(TriangleState(n, "lower", perturbed))[point]
    if (0, 0) not in hexa:
        expected = mul(base, div(state.values[(0, 0)], perturbed[(0, 0)]))
    else:
        expected = base
    return other == expected


def hexagon_complex(n: int, x0: int, y0: int, t0: int) -> CellComplex:
    """The triangulated hexagon as a planar complex (the lower plane cut
    to the hexagon; every unit square splits along its level diagonal,
    which joins (x+1, y) to (x, y+1) on this plane).  Boundary edges are
    the rim of the triangulation: the ones bounding a single face."""
    pts = set(hexagon_points(n, x0, y0, t0))
    vertices = {p: p[0] + p[1] - n for p in pts}
    face_edges = []
    for x in range(n):
        for y in range(n - x):
            a, b, c, d = (x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)
            if b in pts and d in pts:
                if a in pts:
                    face_edges.append([_eid(a, b), _eid(b, d), _eid(d, a)])
                if c in pts:
                    face_edges.append([_eid(b, c), _eid(c, d), _eid(b, d)])
    used = {v for fe in face_edges for e in fe for v in e}
    return _assemble({p: vertices[p] for p in used}, face_edges)


def hexagon_matching_count(n: int, x0: int, y0: int, t0: int) -> int:
    return len(enumerate_matchings(hexagon_complex(n, x0, y0, t0)))


# ---------------------------------------------------------------------------
# Half-plane vs half-strip equivalence

def _half_plane_levels(n: int) -> List[Tuple[int, List[GridPoint]]]:
    levels = []
    for t in range(-n + 2, n + 1):
        pts = []
        for y in range(n + 1):
            # |x| + y - n + 2 <= t <= n - |x| - y
            cap = min(n - t - y, n + t - 2 - y)
            if cap < 0:
                continue
            lo = -cap if (cap + y + n + t) % 2 == 0 else -cap + 1
            pts.extend((x, y) for x in range(lo, cap + 1, 2))
        if pts:
            levels.append((t, pts))
    return levels


def half_plane_grid(n: int) -> List[GridPoint]:
    return [(x, y) for y in range(n + 1) for x in range(-(n - y), n - y + 1)]


def half_phi1(n: int, values: Dict[GridPoint, SemifieldValue]
              ) -> Dict[GridPoint, SemifieldValue]:
    """Transport over the half-plane y >= 0: from the roof-shaped plane
    t = |x| + y - n to t = n - |x| - y, inside the half-octahedron."""
    memo = {(x, y, abs(x) + y - n): v for (x, y), v in values.items()}
    _closed_sweep(_HALF_PLANE, memo, _half_plane_levels(n))
    return {(x, y): memo[(x, y, n - abs(x) - y)] for (x, y) in values}


def _half_strip_levels(n: int) -> List[Tuple[int, List[GridPoint]]]:
    levels = []
    for t in range(-n + 2, 2 * n + 1):
        pts = []
        for y in range(n + 1):
            # x + y - n + 2 <= t <= y - x + n
            hi = min(n + t - 2 - y, y - t + n)
            if hi < 0:
                continue
            lo = 0 if (y + t + n) % 2 == 0 else 1
            pts.extend((x, y) for x in range(lo, hi + 1, 2))
        if pts:
            levels.append((t, pts))
    return levels


def square_grid(n: int) -> List[GridPoint]:
    return [(x, y) for x in range(n + 1) for y in range(n + 1)]


def half_phi2(n: int, values: Dict[GridPoint, SemifieldValue]
              ) -> Dict[GridPoint, SemifieldValue]:
    """Transport over the half-strip x >= 0, 0 <= y <= n: from the plane
    t = x + y - n to t = y - x + n (both indexed by the n x n square)."""
    domain = HalfStrip(n)
    memo = {(x, y, x + y - n): v for (x, y), v in values.items()}
    _closed_sweep(domain, memo, _half_strip_levels(n))
    return {(x, y): memo[(x, y, y - x + n)] for (x, y) in values}


def fold_source(n: int, x: int, y: int) -> GridPoint:
    """Bijection from the half-plane source plane onto the square: the
    two slanted halves of the roof fold onto the two triangles either
    side of the square's antidiagonal."""
    if x >= 0:
        return (n - y, x + y)
    return (x - y + n, y)


def fold_target(n: int, x: int, y: int) -> GridPoint:
    """The matching bijection between the target planes."""
    if x >= 0:
        return (n - x - y, n - y)
    return (n - y, x - y + n)


def half_equivalence_check(n: int, values2: Dict[GridPoint, SemifieldValue]
                           ) -> Tuple[bool, SemifieldValue]:
    """Pull a square state back to the half-plane, transport on both
    sides, and compare through the target-plane bijection.  The two
    transports agree up to a single scalar."""
    values1 = {(x, y): values2[fold_source(n, x, y)]
               for (x, y) in half_plane_grid(n)}
    g1 = half_phi1(n, values1)
    g2 = half_phi2(n, values2)
    g2_pulled = {(x, y): g2[fold_target(n, x, y)] for (x, y) in g1}
    return projective_ratio(g1, g2_pulled)
