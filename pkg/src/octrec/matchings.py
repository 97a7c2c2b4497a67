"""Non-recursive evaluation via perfect matchings of planar complexes.

A value of the bounded recurrence at an interior point P can be read off
directly from a section state: the dependency region of P is a reflected
light cone (a rhombic dodecahedron), and the value is a weighted sum
over "matchings" of a planar cell complex cut out of the section.  A
matching here is a set of internal edges hitting every face's boundary
exactly once; each one contributes a monomial in the section values.

Two routes are implemented:

* the primary route squeezes the section into the cone first (engine
  moves), then works with the complex of the whole clipped section and a
  three-row exponent-offset table keyed by wall/corner position and the
  local height pattern;
* the secondary route uses the unclipped section directly: the complex
  is the part of the section inside the open cone, exponent offsets come
  from an eight-row table keyed by cone strata, and a boundary-extremum
  constant multiplies the sum.

Both agree with each other and with the recurrence engine; the test
suite checks this exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import semifield as sf
from .engine import SpaceTimeState, evolve_to, value_at
from .lattice import (GridPoint, LatticePoint, Rectangle, Section,
                      boundary_constant, cell_structure, perimeter_path)
from .semifield import SemifieldValue, div, mul, one, power

Edge = Tuple[GridPoint, GridPoint]


class BoundaryApexError(ValueError):
    """The requested apex lies on the boundary of the space."""


class ConeMissError(ValueError):
    """The light cone of the apex does not meet the section."""


class NonIntegralExponentError(ValueError):
    """A matching monomial produced a non-integer exponent."""


class MatchingError(ValueError):
    """A complex unexpectedly admits no matching."""


# ---------------------------------------------------------------------------
# The reflected light cone

@dataclass(frozen=True)
class LightCone:
    """Dependency region of the apex inside the bounded space.

    Bounded above by four planes through the apex and below by their
    wall reflections; the bottom point is the antipode
    (m - x0, n - y0, t0 - m - n).
    """

    domain: Rectangle
    apex: LatticePoint

    def upper_planes(self, x, y):
        x0, y0, t0 = self.apex
        return (t0 + x0 + y0 - x - y,
                t0 + x0 - y0 - x + y,
                t0 - x0 + y0 + x - y,
                t0 - x0 - y0 + x + y)

    def lower_planes(self, x, y):
        x0, y0, t0 = self.apex
        m, n = self.domain.m, self.domain.n
        return (t0 - x0 - y0 - x - y,
                t0 - x0 + y0 - 2 * n - x + y,
                t0 + x0 - y0 - 2 * m + x - y,
                t0 + x0 + y0 - 2 * m - 2 * n + x + y)

    def upper(self, x, y):
        return min(self.upper_planes(x, y))

    def lower(self, x, y):
        return max(self.lower_planes(x, y))

    def antipode(self) -> LatticePoint:
        x0, y0, t0 = self.apex
        return (self.domain.m - x0, self.domain.n - y0, t0 - self.domain.m - self.domain.n)

    def contains(self, x, y, t) -> bool:
        return self.lower(x, y) <= t <= self.upper(x, y)

    def tight_functionals(self, x, y, t) -> List[str]:
        """Labels of the cone facets through (x, y, t)."""
        out = []
        for i, v in enumerate(self.upper_planes(x, y)):
            if v == t:
                out.append(f"u{i}")
        for i, v in enumerate(self.lower_planes(x, y)):
            if v == t:
                out.append(f"l{i}")
        return out


def build_cone(domain: Rectangle, point: LatticePoint) -> LightCone:
    x0, y0, t0 = point
    if (x0 + y0 + t0) % 2 != 0 or not domain.contains(x0, y0):
        raise ValueError(f"{point} is not a lattice point of the domain")
    if domain.is_boundary(x0, y0):
        raise BoundaryApexError(f"apex {point} lies on the boundary")
    return LightCone(domain, point)


def clip_to_cone(state: SpaceTimeState, cone: LightCone) -> SpaceTimeState:
    """Squeeze the frontier into the cone (pointwise median of section,
    upper boundary and lower boundary), transporting values by engine
    moves.  Mutates and returns the given state."""
    x0, y0, t0 = cone.apex
    hs = state.heights
    bx, by, bt = cone.antipode()
    if bt > hs[(bx, by)]:
        raise ConeMissError(f"cone of {cone.apex} misses the section")
    target = {p: max(min(hs[p], cone.upper(*p)), cone.lower(*p)) for p in hs}
    evolve_to(state, Section(state.domain, target))
    return state


# ---------------------------------------------------------------------------
# Cell complexes and matchings

def _eid(p: GridPoint, q: GridPoint) -> Edge:
    return (p, q) if p <= q else (q, p)


@dataclass
class CellComplex:
    """Planar complex: heights at vertices, edges flagged boundary when
    they bound exactly one face, faces as edge tuples."""

    vertices: Dict[GridPoint, int]
    edges: Dict[Edge, bool]  # True = boundary edge
    faces: List[Tuple[Edge, ...]]

    def internal_edges(self) -> List[Edge]:
        return sorted(e for e, b in self.edges.items() if not b)


def _assemble(vertices: Dict[GridPoint, int],
              face_edges: List[List[Edge]]) -> CellComplex:
    counts: Dict[Edge, int] = {}
    for fe in face_edges:
        for e in fe:
            counts[e] = counts.get(e, 0) + 1
    for e, c in counts.items():
        if c > 2:
            raise ValueError(f"edge {e} bounds {c} faces")
    edges = {e: c == 1 for e, c in counts.items()}
    faces = [tuple(fe) for fe in face_edges]
    return CellComplex(vertices, edges, faces)


def build_wbar(section: Section) -> CellComplex:
    """Complex of a whole (clipped) section: all grid vertices, all grid
    edges, and the level diagonal of every non-square cell.  Bent
    horizontal diagonals (both diagonals of a "tetrahedron" square) are
    simply absent, leaving square faces."""
    hs = section.heights
    tags = cell_structure(section)
    face_edges: List[List[Edge]] = []
    for (x, y) in sorted(tags):
        a, b, c, d = (x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)
        tag = tags[(x, y)]
        if tag == "square":
            face_edges.append([_eid(a, b), _eid(b, c), _eid(c, d), _eid(d, a)])
        elif tag == "ac":
            face_edges.append([_eid(a, b), _eid(b, c), _eid(a, c)])
            face_edges.append([_eid(a, c), _eid(c, d), _eid(d, a)])
        else:  # "bd"
            face_edges.append([_eid(a, b), _eid(b, d), _eid(d, a)])
            face_edges.append([_eid(b, c), _eid(c, d), _eid(b, d)])
    return _assemble(dict(hs), face_edges)


def enumerate_matchings(cx: CellComplex) -> List[FrozenSet[Edge]]:
    """All matchings, in a deterministic order.

    Backtracking over faces with unit propagation: a face whose dotted
    count reaches one forces its other edges solid; a face whose
    candidates drop to one forces that edge dotted.
    """
    face_cands = [tuple(sorted(e for e in f if not cx.edges[e])) for f in cx.faces]
    edges = sorted({e for f in face_cands for e in f})
    efaces = {e: [i for i, f in enumerate(face_cands) if e in f] for e in edges}
    state = {e: 0 for e in edges}  # 0 unknown, 1 dotted, -1 solid
    ndotted = [0] * len(face_cands)
    results: List[FrozenSet[Edge]] = []

    def set_edge(e, val, trail):
        if state[e] == val:
            return True
        if state[e] != 0:
            return False
        state[e] = val
        trail.append(e)
        if val == 1:
            for fi in efaces[e]:
                ndotted[fi] += 1
                if ndotted[fi] > 1:
                    return False
        return True

    def undo(trail):
        for e in reversed(trail):
            if state[e] == 1:
                for fi in efaces[e]:
                    ndotted[fi] -= 1
            state[e] = 0
        trail.clear()

    def propagate(trail):
        changed = True
        while changed:
            changed = False
            for fi, f in enumerate(face_cands):
                if ndotted[fi] == 1:
                    for e in f:
                        if state[e] == 0:
                            if not set_edge(e, -1, trail):
                                return False
                            changed = True
                else:
                    unknown = [e for e in f if state[e] == 0]
                    if not unknown:
                        return False
                    if len(unknown) == 1:
                        if not set_edge(unknown[0], 1, trail):
                            return False
                        changed = True
        return True

    def solve():
        open_faces = [fi for fi in range(len(face_cands)) if ndotted[fi] == 0]
        if not open_faces:
            results.append(frozenset(e for e in edges if state[e] == 1))
            return
        fi = open_faces[0]
        for e in face_cands[fi]:
            if state[e] != 0:
                continue
            trail: List[Edge] = []
            if set_edge(e, 1, trail) and propagate(trail):
                solve()
            undo(trail)

    trail0: List[Edge] = []
    if propagate(trail0):
        solve()
    undo(trail0)
    return results


def matching_monomial(cx: CellComplex, matching: FrozenSet[Edge],
                      values: Dict[GridPoint, SemifieldValue],
                      eps: Dict[GridPoint, Fraction]) -> SemifieldValue:
    """Product over vertices of f(v) ** k(v) with
    k(v) = (solid degree - dotted degree)/2 + eps(v); boundary edges
    never count.  Exponents are accumulated exactly and must come out
    integral."""
    k = {v: Fraction(eps[v]) for v in cx.vertices}
    for e, is_boundary in cx.edges.items():
        if is_boundary:
            continue
        w = Fraction(-1, 2) if e in matching else Fraction(1, 2)
        for v in e:
            k[v] += w
    like = next(iter(values.values()))
    acc = one(like)
    for v in sorted(cx.vertices):
        kv = k[v]
        if kv.denominator != 1:
            raise NonIntegralExponentError(f"exponent {kv} at vertex {v}")
        if kv:
            acc = mul(acc, power(values[v], int(kv)))
    return acc


def exponent_vector(cx: CellComplex, matching: FrozenSet[Edge],
                    eps: Dict[GridPoint, Fraction]) -> Dict[GridPoint, int]:
    k = {v: Fraction(eps[v]) for v in cx.vertices}
    for e, is_boundary in cx.edges.items():
        if is_boundary:
            continue
        w = Fraction(-1, 2) if e in matching else Fraction(1, 2)
        for v in e:
            k[v] += w
    out = {}
    for v, kv in k.items():
        if kv.denominator != 1:
            raise NonIntegralExponentError(f"exponent {kv} at vertex {v}")
        out[v] = int(kv)
    return out


def evaluate_complex(cx: CellComplex, values: Dict[GridPoint, SemifieldValue],
                     eps: Dict[GridPoint, Fraction],
                     like: SemifieldValue) -> SemifieldValue:
    matchings = enumerate_matchings(cx)
    if not matchings:
        raise MatchingError("complex admits no matching")
    return sf.sum_values(
        (matching_monomial(cx, mth, values, eps) for mth in matchings), like)


# ---------------------------------------------------------------------------
# Primary route: clip, then evaluate the whole-section complex

def epsilon_bar_map(section: Section) -> Dict[GridPoint, Fraction]:
    """Exponent offsets for a clipped section: -1 in the interior; on a
    wall -1/2, 0 or 1/2 and at a corner 0, 1/2 or 1 according to whether
    the vertex is a local minimum, intermediate, or local maximum among
    its two neighbors on the boundary cylinder."""
    dom = section.domain
    hs = section.heights
    eps: Dict[GridPoint, Fraction] = {}
    for p in hs:
        if not dom.is_boundary(*p):
            eps[p] = Fraction(-1)
    perim = dom.perimeter()
    size = len(perim)
    for i, p in enumerate(perim):
        t = hs[p]
        tp = hs[perim[i - 1]]
        tn = hs[perim[(i + 1) % size]]
        if t < tp and t < tn:
            kind = 0
        elif t > tp and t > tn:
            kind = 2
        else:
            kind = 1
        if dom.is_corner(*p):
            eps[p] = Fraction(kind, 2)
        else:
            eps[p] = Fraction(kind - 1, 2)
    return eps


def _evaluate_clipped(state: SpaceTimeState, cone: LightCone) -> SemifieldValue:
    work = state.copy()
    clip_to_cone(work, cone)
    section = work.section()
    cx = build_wbar(section)
    eps = epsilon_bar_map(section)
    values = {p: work.frontier_value(*p) for p in section.heights}
    like = next(iter(values.values()))
    return evaluate_complex(cx, values, eps, like)


# ---------------------------------------------------------------------------
# Secondary route: the unclipped section and the cone-stratum table

def _vertex_in_cone(cone: LightCone, p: GridPoint, t: int) -> bool:
    return cone.lower(*p) <= t <= cone.upper(*p)


def _triangles_of(section: Section) -> List[Tuple[str, Tuple[GridPoint, ...], Optional[Edge]]]:
    """Triangulation inherited from the space-time tiling: every unit
    square split by a level diagonal.  For tetrahedron squares (both
    diagonals level, both bent) the a-c diagonal is the fixed
    convention; the choice is immaterial once bent edges are deleted.
    Returns (square tag, triangle vertices, diagonal edge)."""
    tags = cell_structure(section)
    out = []
    for (x, y) in sorted(tags):
        a, b, c, d = (x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)
        tag = tags[(x, y)]
        if tag in ("ac", "square"):
            diag = _eid(a, c)
            out.append((tag, (a, b, c), diag))
            out.append((tag, (a, c, d), diag))
        else:
            diag = _eid(b, d)
            out.append((tag, (a, b, d), diag))
            out.append((tag, (b, c, d), diag))
    return out


def _triangle_qualifies(cone: LightCone, hs: Dict[GridPoint, int],
                        tri: Sequence[GridPoint]) -> bool:
    """True iff the open triangle lies in the open cone: every vertex in
    the closed cone and no single facet containing all three vertices."""
    for p in tri:
        if not _vertex_in_cone(cone, p, hs[p]):
            return False
    for i in range(4):
        if all(cone.upper_planes(*p)[i] == hs[p] for p in tri):
            return False
        if all(cone.lower_planes(*p)[i] == hs[p] for p in tri):
            return False
    return True


def build_w(state: SpaceTimeState, cone: LightCone) -> CellComplex:
    """Closure of the part of the section inside the open cone, with
    bent horizontal diagonals deleted and trimmed boundary corners
    removed.  Degenerate cases (apex or antipode on the section) give a
    single-point complex."""
    hs = state.heights
    x0, y0, t0 = cone.apex
    bx, by, bt = cone.antipode()
    if hs[(x0, y0)] == t0:
        return CellComplex({(x0, y0): t0}, {}, [])
    if hs[(bx, by)] == bt:
        return CellComplex({(bx, by): bt}, {}, [])

    tris = _triangles_of(state.section())
    quals = [_triangle_qualifies(cone, hs, tri) for (_, tri, _) in tris]
    face_edges: List[List[Edge]] = []
    vertices: Dict[GridPoint, int] = {}
    deleted_diags: List[Edge] = []
    for i in range(0, len(tris), 2):
        tag, tri1, diag = tris[i]
        _, tri2, _ = tris[i + 1]
        q1, q2 = quals[i], quals[i + 1]
        if not q1 and not q2:
            continue
        if tag == "square" and q1 and q2:
            # both diagonals bent: merge to a square face, drop the diagonal
            a = tri1[0]
            b = tri1[1]
            c = tri1[2]
            d = tri2[2]
            face_edges.append([_eid(a, b), _eid(b, c), _eid(c, d), _eid(d, a)])
            deleted_diags.append(diag)
            for p in (a, b, c, d):
                vertices[p] = hs[p]
            continue
        for tri, q in ((tri1, q1), (tri2, q2)):
            if not q:
                continue
            p0, p1, p2 = tri
            face_edges.append([_eid(p0, p1), _eid(p1, p2), _eid(p0, p2)])
            for p in tri:
                vertices[p] = hs[p]
    cx = _assemble(vertices, face_edges)
    _trim_corners(cx, deleted_diags)
    return cx


def _trim_corners(cx: CellComplex, deleted_diags: List[Edge]) -> None:
    """Remove boundary vertices that were endpoints of a deleted bent
    diagonal and now sit between two boundary edges of a single face,
    splicing the two edges into one (straightened) boundary edge."""
    for diag in deleted_diags:
        for v in diag:
            if v not in cx.vertices:
                continue
            incident = [e for e in cx.edges if v in e]
            if len(incident) != 2:
                continue
            if not all(cx.edges[e] for e in incident):
                continue
            fis = [i for i, f in enumerate(cx.faces)
                   if incident[0] in f and incident[1] in f]
            if len(fis) != 1:
                continue
            e1, e2 = incident
            a = e1[0] if e1[1] == v else e1[1]
            b = e2[0] if e2[1] == v else e2[1]
            spliced = _eid(a, b)
            if spliced in cx.edges:
                continue  # degenerate double splice; keep the vertex
            fi = fis[0]
            del cx.edges[e1]
            del cx.edges[e2]
            del cx.vertices[v]
            cx.edges[spliced] = True
            new_face = [e for e in cx.faces[fi] if e not in (e1, e2)]
            new_face.append(spliced)
            cx.faces[fi] = tuple(new_face)


def _side_of_vertex(cone: LightCone, p: GridPoint, t: int) -> Optional[str]:
    """Which side of the cone a non-complex boundary-section vertex lies
    on: '+' if some lower point of its column is in the cone, '-' if
    some higher point is, None at a degenerate touch point."""
    up = cone.upper(*p)
    lo = cone.lower(*p)
    if t > up or (t == up and up > lo):
        return "+"
    if t < lo or (t == lo and up > lo):
        return "-"
    if t == up == lo:
        return None
    # strictly inside yet not part of the complex: classify by the midline
    return "+" if 2 * t >= up + lo else "-"


def _side_of_midpoint(cone: LightCone, p: GridPoint, q: GridPoint,
                      tp: int, tq: int) -> Optional[str]:
    x = Fraction(p[0] + q[0], 2)
    y = Fraction(p[1] + q[1], 2)
    t = Fraction(tp + tq, 2)
    up = min(cone.upper_planes(x, y))
    lo = max(cone.lower_planes(x, y))
    if t >= up and up > lo:
        return "+"
    if t <= lo and up > lo:
        return "-"
    if up == lo:
        return None
    return "+" if 2 * t >= up + lo else "-"


def _isolated_is_low(cone: LightCone, p: GridPoint, t: int) -> bool:
    """Whether an isolated boundary touch point of the complex sits on
    the lower half of the cone boundary (and therefore contributes to
    the extremum constant)."""
    tight = cone.tight_functionals(p[0], p[1], t)
    has_u = any(lab.startswith("u") for lab in tight)
    has_l = any(lab.startswith("l") for lab in tight)
    if has_l and not has_u:
        return True
    if has_u and not has_l:
        return False
    return 2 * t < cone.upper(*p) + cone.lower(*p)


def _outward_side(state: SpaceTimeState, cone: LightCone, cx: CellComplex,
                  perim: List[GridPoint], i: int, step: int) -> str:
    """Classify the stretch of the section boundary just beyond an arc
    endpoint: '+' above the cone, '-' below."""
    hs = state.heights
    size = len(perim)
    j = i
    for _ in range(size):
        p = perim[j % size]
        q = perim[(j + step) % size]
        if q not in cx.vertices:
            side = _side_of_vertex(cone, q, hs[q])
            if side is not None:
                return side
        elif _eid(p, q) not in cx.edges:
            side = _side_of_midpoint(cone, p, q, hs[p], hs[q])
            if side is not None:
                return side
        else:
            break  # ran into another arc of the complex
        j += step
    return "-"


def _general_epsilon(state: SpaceTimeState, cone: LightCone,
                     cx: CellComplex) -> Dict[GridPoint, Fraction]:
    """Exponent offsets from the cone-stratum table.

    Off the walls, the offset counts how deep in the cone boundary the
    vertex sits: interior -1, facet 0, edge 1/2, pole 1.  On the walls
    it depends on whether the vertex is interior to a boundary arc of
    the complex, an endpoint next to an above-cone or below-cone
    stretch, an isolated touch point, or an equatorial cone vertex, each
    combined with the local height pattern.
    """
    dom = state.domain
    hs = state.heights
    eps: Dict[GridPoint, Fraction] = {}
    for v, t in cx.vertices.items():
        if dom.is_boundary(*v):
            continue
        ntight = len(cone.tight_functionals(v[0], v[1], t))
        if ntight == 0:
            eps[v] = Fraction(-1)
        elif ntight == 1:
            eps[v] = Fraction(0)
        elif ntight == 2:
            eps[v] = Fraction(1, 2)
        else:
            eps[v] = Fraction(1)  # poles (all four planes tight)
    perim = dom.perimeter()
    size = len(perim)
    for i, p in enumerate(perim):
        if p not in cx.vertices:
            continue
        t = hs[p]
        prev_p = perim[(i - 1) % size]
        next_p = perim[(i + 1) % size]
        left = _eid(prev_p, p) in cx.edges
        right = _eid(p, next_p) in cx.edges
        if not left and not right:
            eps[p] = Fraction(1, 2)  # isolated touch point, cone edge
            continue
        if left and right:
            tight = cone.tight_functionals(p[0], p[1], t)
            if (any(lab.startswith("u") for lab in tight)
                    and any(lab.startswith("l") for lab in tight)):
                eps[p] = Fraction(1, 2)  # equatorial cone vertex on a wall
                continue
            t1, t2 = sorted((hs[prev_p], hs[next_p]))
            if t1 > t:
                eps[p] = Fraction(-1, 2)
            elif t2 < t:
                eps[p] = Fraction(1, 2)
            else:
                eps[p] = Fraction(0)
            continue
        # endpoint of a boundary arc of the complex
        in_p = prev_p if left else next_p
        out_p = next_p if left else prev_p
        step = 1 if left else -1
        side = _outward_side(state, cone, cx, perim, i, step)
        if out_p in cx.vertices:
            t1, t2 = sorted((hs[in_p], hs[out_p]))
        else:
            t1, t2 = hs[in_p], hs[out_p]
        if side == "+":
            eps[p] = Fraction(0) if t1 > t else Fraction(1, 2)
        else:
            if t1 > t and t < t2:
                eps[p] = Fraction(-1, 2)
            elif t1 < t < t2:
                eps[p] = Fraction(0)
            elif t1 > t > t2:
                eps[p] = Fraction(1, 2)
            else:
                eps[p] = Fraction(1)
    return eps


def _constant_extrema(state: SpaceTimeState, cone: LightCone,
                      cx: CellComplex) -> Tuple[List[GridPoint], List[GridPoint]]:
    """Local time maxima and minima of the below-cone part of the
    section boundary (the vertices whose values enter the constant)."""
    dom = state.domain
    hs = state.heights
    perim = dom.perimeter()
    size = len(perim)
    def edge_side(p, q):
        if _eid(p, q) in cx.edges:
            return "W"
        return _side_of_midpoint(cone, p, q, hs[p], hs[q])

    minus = set()
    for i, p in enumerate(perim):
        prev_p = perim[(i - 1) % size]
        next_p = perim[(i + 1) % size]
        if p in cx.vertices and (_eid(prev_p, p) in cx.edges
                                 or _eid(p, next_p) in cx.edges):
            continue  # lies on a boundary arc of the complex
        # interior to the below-cone region iff it is approached from
        # below on both sides
        if edge_side(prev_p, p) == "-" and edge_side(p, next_p) == "-":
            minus.add(i)
    maxima: List[GridPoint] = []
    minima: List[GridPoint] = []
    for i in sorted(minus):
        p = perim[i]
        t = hs[p]
        tp = hs[perim[(i - 1) % size]]
        tn = hs[perim[(i + 1) % size]]
        if t > tp and t > tn:
            maxima.append(p)
        elif t < tp and t < tn:
            minima.append(p)
    return maxima, minima


def _general_constant(state: SpaceTimeState, cone: LightCone,
                      cx: CellComplex, like: SemifieldValue) -> SemifieldValue:
    """Product of section values at local time maxima of the below-cone
    part of the section boundary, divided by the local minima."""
    maxima, minima = _constant_extrema(state, cone, cx)
    acc = one(like)
    for p in maxima:
        acc = mul(acc, state.frontier_value(*p))
    for p in minima:
        acc = div(acc, state.frontier_value(*p))
    return acc


def _evaluate_general(state: SpaceTimeState, cone: LightCone) -> SemifieldValue:
    cx = build_w(state, cone)
    values = {v: state.values[(v[0], v[1], t)] for v, t in cx.vertices.items()}
    like = state.frontier_value(0, 0)
    eps = _general_epsilon(state, cone, cx)
    if cx.vertices:
        z = evaluate_complex(cx, values, eps, like)
    else:
        z = one(like)
    c = _general_constant(state, cone, cx, like)
    return mul(c, z)


# ---------------------------------------------------------------------------
# Entry points

def _check_preconditions(state: SpaceTimeState, point: LatticePoint) -> None:
    x0, y0, t0 = point
    dom = state.domain
    if (x0 + y0 + t0) % 2 != 0 or not dom.contains(x0, y0):
        raise ValueError(f"{point} is not a lattice point of the domain")
    if t0 < state.heights[(x0, y0)]:
        raise ValueError(f"{point} is in the past of the section")


def _evaluate_boundary(state: SpaceTimeState, point: LatticePoint,
                       path: str) -> SemifieldValue:
    """Boundary apexes have no cone machinery; reduce by the periodicity
    relation f(P) = c * f(antipode of P) with c read off the section
    boundary, until the target lands on the section.  If the antipode
    orbit never meets the section (possible when the domain has no
    interior lattice points), the last short hop is delegated to the
    recurrence engine."""
    dom = state.domain
    hs = state.heights
    c = boundary_constant(lambda q: state.values[q],
                          perimeter_path(state.section()))
    x, y, t = point
    factor_pow = 0
    while t > hs[(x, y)]:
        x, y, t = dom.m - x, dom.n - y, t - dom.m - dom.n
        factor_pow += 1
    if hs[(x, y)] == t:
        base = state.values[(x, y, t)]
    else:
        base = value_at(state.copy(), (x, y, t))
    return mul(power(c, factor_pow), base)


def _reduce_to_cone_hit(state: SpaceTimeState,
                        point: LatticePoint) -> Tuple[LatticePoint, int]:
    """If the cone of ``point`` floats entirely above the section, step
    to the antipode (period relation) until it meets; returns the
    reduced point and the number of period factors taken off."""
    dom = state.domain
    hs = state.heights
    x, y, t = point
    k = 0
    while t - dom.m - dom.n > hs[(dom.m - x, dom.n - y)]:
        x, y, t = dom.m - x, dom.n - y, t - dom.m - dom.n
        k += 1
    return (x, y, t), k


def evaluate_formula(state: SpaceTimeState, point: LatticePoint,
                     path: str = "wbar") -> SemifieldValue:
    """Value at ``point`` computed from the section state by the
    matchings formula (no forward recurrence at the queried point).

    ``path``: "wbar" (primary, clip first), "general" (unclipped section
    and stratum table), or "both" (run both, insist they agree).
    """
    if path not in ("wbar", "general", "both"):
        raise ValueError(f"unknown path {path!r}")
    _check_preconditions(state, point)
    if state.domain.is_boundary(point[0], point[1]):
        return _evaluate_boundary(state, point, path)
    point, factor_pow = _reduce_to_cone_hit(state, point)
    cone = build_cone(state.domain, point)
    if factor_pow:
        c = boundary_constant(lambda q: state.values[q],
                              perimeter_path(state.section()))
        scale = power(c, factor_pow)
    else:
        scale = None

    def finish(v):
        return v if scale is None else mul(scale, v)

    if path == "wbar":
        return finish(_evaluate_clipped(state, cone))
    if path == "general":
        return finish(_evaluate_general(state, cone))
    a = _evaluate_clipped(state, cone)
    b = _evaluate_general(state, cone)
    if a != b:
        raise AssertionError(
            f"evaluation routes disagree at {point}: {a!r} vs {b!r}")
    return finish(a)


def formula_complex(state: SpaceTimeState, point: LatticePoint,
                    path: str = "wbar"
                    ) -> Tuple[CellComplex, Dict[GridPoint, SemifieldValue],
                               Dict[GridPoint, Fraction]]:
    """The complex, vertex values and exponent offsets that
    ``evaluate_formula`` would use (for inspection and diagnostics)."""
    _check_preconditions(state, point)
    point, _ = _reduce_to_cone_hit(state, point)
    cone = build_cone(state.domain, point)
    if path == "wbar":
        work = state.copy()
        clip_to_cone(work, cone)
        section = work.section()
        cx = build_wbar(section)
        eps = epsilon_bar_map(section)
        values = {p: work.frontier_value(*p) for p in section.heights}
        return cx, values, eps
    cx = build_w(state, cone)
    values = {v: state.values[(v[0], v[1], t)] for v, t in cx.vertices.items()}
    return cx, values, _general_epsilon(state, cone, cx)


def count_matchings(state: SpaceTimeState, point: LatticePoint,
                    path: str = "wbar") -> int:
    cx, _, _ = formula_complex(state, point, path)
    return len(enumerate_matchings(cx))
