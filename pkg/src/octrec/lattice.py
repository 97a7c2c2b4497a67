"""Domains, sections and boundary paths.

A *section* is an integer height function h on the grid points of a
domain, with x + y + h(x, y) of fixed parity and |h difference| = 1
across every grid edge.  Its graph meets each vertical line of
space-time exactly once and carries an induced cell structure: every
unit grid square is either split into two triangles by its level
diagonal, or (when both diagonals are level) becomes a single square
face once the bent diagonals are discarded.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .semifield import SemifieldValue, div, mul, one

GridPoint = Tuple[int, int]
LatticePoint = Tuple[int, int, int]


# ---------------------------------------------------------------------------
# Domains

@dataclass(frozen=True)
class Rectangle:
    """The bounded space [0, m] x [0, n]; walls on all four sides."""

    m: int
    n: int

    shape = "rectangle"

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("rectangle extents must be >= 1")

    def contains(self, x: int, y: int) -> bool:
        return 0 <= x <= self.m and 0 <= y <= self.n

    def grid_points(self) -> Iterator[GridPoint]:
        for x in range(self.m + 1):
            for y in range(self.n + 1):
                yield (x, y)

    def neighbors(self, x: int, y: int) -> List[GridPoint]:
        out = []
        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            if self.contains(x + dx, y + dy):
                out.append((x + dx, y + dy))
        return out

    def is_boundary(self, x: int, y: int) -> bool:
        return x in (0, self.m) or y in (0, self.n)

    def is_corner(self, x: int, y: int) -> bool:
        return x in (0, self.m) and y in (0, self.n)

    def perimeter(self) -> List[GridPoint]:
        """Grid positions of the boundary, counter-clockwise from (0, 0)."""
        pts = []
        pts += [(x, 0) for x in range(self.m)]
        pts += [(self.m, y) for y in range(self.n)]
        pts += [(x, self.n) for x in range(self.m, 0, -1)]
        pts += [(0, y) for y in range(self.n, 0, -1)]
        return pts


@dataclass(frozen=True)
class Quadrant:
    """x >= 0, y >= 0; two walls meeting in one corner."""

    shape = "quadrant"

    def contains(self, x: int, y: int) -> bool:
        return x >= 0 and y >= 0

    def neighbors(self, x: int, y: int) -> List[GridPoint]:
        return [(x + dx, y + dy)
                for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))
                if self.contains(x + dx, y + dy)]


@dataclass(frozen=True)
class HalfPlane:
    """y >= 0; a single wall."""

    shape = "half-plane"

    def contains(self, x: int, y: int) -> bool:
        return y >= 0

    def neighbors(self, x: int, y: int) -> List[GridPoint]:
        return [(x + dx, y + dy)
                for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))
                if self.contains(x + dx, y + dy)]


@dataclass(frozen=True)
class Strip:
    """0 <= y <= n; two parallel walls."""

    n: int

    shape = "strip"

    def contains(self, x: int, y: int) -> bool:
        return 0 <= y <= self.n

    def neighbors(self, x: int, y: int) -> List[GridPoint]:
        return [(x + dx, y + dy)
                for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))
                if self.contains(x + dx, y + dy)]


@dataclass(frozen=True)
class HalfStrip:
    """x >= 0 and 0 <= y <= n; three walls, two corners."""

    n: int

    shape = "half-strip"

    def contains(self, x: int, y: int) -> bool:
        return x >= 0 and 0 <= y <= self.n

    def neighbors(self, x: int, y: int) -> List[GridPoint]:
        return [(x + dx, y + dy)
                for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))
                if self.contains(x + dx, y + dy)]


Domain = object  # any of the shapes above


# ---------------------------------------------------------------------------
# Sections

@dataclass
class Section:
    domain: Domain
    heights: Dict[GridPoint, int]

    def h(self, x: int, y: int) -> int:
        return self.heights[(x, y)]

    def copy(self) -> "Section":
        return Section(self.domain, dict(self.heights))


@dataclass
class SectionState:
    """Semifield values attached to the lattice points of a section."""

    section: Section
    values: Dict[GridPoint, SemifieldValue]  # keyed by grid position

    def value_at(self, x: int, y: int) -> SemifieldValue:
        return self.values[(x, y)]


def validate_section(section: Section, parity: int = 0) -> Optional[Tuple]:
    """Return None if valid, else (kind, witness) for the first violation.

    ``parity`` is the residue of x + y + h(x, y) mod 2; rectangle sections
    use 0, the triangle variants use a shifted class.
    """
    hs = section.heights
    for (x, y), t in hs.items():
        if (x + y + t) % 2 != parity % 2:
            return ("parity", (x, y))
    for (x, y), t in hs.items():
        for nb in ((x + 1, y), (x, y + 1)):
            if nb in hs and abs(hs[nb] - t) != 1:
                return ("lipschitz", ((x, y), nb))
    return None


def _combine(s1: Section, s2: Section, pick) -> Section:
    if s1.heights.keys() != s2.heights.keys():
        raise ValueError("sections live on different grids")
    out = {}
    for p, t1 in s1.heights.items():
        t2 = s2.heights[p]
        if (t1 - t2) % 2 != 0:
            raise ValueError(f"parity mismatch at {p}")
        out[p] = pick(t1, t2)
    return Section(s1.domain, out)


def section_min(s1: Section, s2: Section) -> Section:
    return _combine(s1, s2, min)


def section_max(s1: Section, s2: Section) -> Section:
    return _combine(s1, s2, max)


# Cell structure tags for the unit square with lower-left corner (x, y):
#   "square"  -- both diagonals level; both are bent, so deleting them
#                leaves one square face,
#   "ac"      -- the (x,y)-(x+1,y+1) diagonal is level and coplanar; two
#                triangle faces,
#   "bd"      -- the (x+1,y)-(x,y+1) diagonal is level and coplanar.
def cell_structure(section: Section) -> Dict[GridPoint, str]:
    hs = section.heights
    tags = {}
    for (x, y) in hs:
        corners = ((x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1))
        if not all(c in hs for c in corners[1:]):
            continue
        ha, hb, hc, hd = (hs[c] for c in corners)
        ac_level = ha == hc
        bd_level = hb == hd
        if ac_level and bd_level:
            tags[(x, y)] = "square"
        elif ac_level:
            tags[(x, y)] = "ac"
        elif bd_level:
            tags[(x, y)] = "bd"
        else:
            raise ValueError(f"no level diagonal in square at {(x, y)}; section invalid")
    return tags


# ---------------------------------------------------------------------------
# Boundary paths and the path constant

BoundaryPath = List[LatticePoint]


def perimeter_path(section: Section) -> BoundaryPath:
    """The restriction of a rectangle section to the boundary cylinder."""
    dom = section.domain
    return [(x, y, section.h(x, y)) for (x, y) in dom.perimeter()]


def validate_boundary_path(domain: Rectangle, path: BoundaryPath) -> Optional[str]:
    positions = [(x, y) for (x, y, _) in path]
    if positions != domain.perimeter():
        return "path does not traverse the boundary grid positions in order"
    k = len(path)
    for i in range(k):
        if abs(path[i][2] - path[(i + 1) % k][2]) != 1:
            return f"consecutive heights differ by != 1 at index {i}"
    return None


def geodesic_path(domain: Rectangle, x0: int, y0: int, t0: int) -> BoundaryPath:
    """The union of the two slope-1 geodesics on the boundary cylinder
    between (x0, y0, t0) and its antipode (m-x0, n-y0, t0-m-n).

    (x0, y0) must be a boundary grid position; the returned path has
    exactly one maximum (at the given point) and one minimum.
    """
    if not domain.is_boundary(x0, y0):
        raise ValueError("geodesic paths start at boundary positions")
    perim = domain.perimeter()
    k = len(perim)  # 2(m + n)
    i0 = perim.index((x0, y0))
    path = []
    for i, (x, y) in enumerate(perim):
        d = abs((i - i0) % k)
        d = min(d, k - d)
        path.append((x, y, t0 - d))
    return path


def boundary_constant(get_value: Callable[[LatticePoint], SemifieldValue],
                      path: BoundaryPath) -> SemifieldValue:
    """Product of values at the cyclic local maxima of a boundary path,
    divided by the product at its local minima."""
    k = len(path)
    if k < 2:
        raise ValueError("boundary path too short")
    sample = get_value(path[0])
    acc = one(sample)
    for i in range(k):
        t_prev = path[(i - 1) % k][2]
        t = path[i][2]
        t_next = path[(i + 1) % k][2]
        if t > t_prev and t > t_next:
            acc = mul(acc, get_value(path[i]))
        elif t < t_prev and t < t_next:
            acc = div(acc, get_value(path[i]))
    return acc
