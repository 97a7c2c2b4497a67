"""The matchings formula against the recurrence engine, with an
independent brute-force enumerator as the combinatorial oracle."""
import itertools
import random

import pytest

from octrec import (BoundaryApexError, ConeMissError, Rectangle, build_cone,
                    clip_to_cone, count_matchings, enumerate_matchings,
                    evaluate_formula, exponent_vector, formula_complex,
                    value_at)
from octrec.engine import random_state


def brute_force_matchings(cx):
    """All dotted-edge sets, by exhaustive subset enumeration: every face
    carries exactly one dotted edge and boundary edges are never dotted.
    Independent of the backtracking enumerator."""
    internal = [e for e, is_boundary in cx.edges.items() if not is_boundary]
    found = []
    for bits in itertools.product((False, True), repeat=len(internal)):
        dotted = {e for e, b in zip(internal, bits) if b}
        if all(sum(e in dotted for e in face) == 1 for face in cx.faces):
            found.append(frozenset(dotted))
    return found


def random_interior_point(state, rng):
    m, n = state.domain.m, state.domain.n
    x = rng.randint(1, m - 1)
    y = rng.randint(1, n - 1)
    t = state.heights[(x, y)] + 2 * rng.randint(0, m + n)
    return (x, y, t)


def test_cone_geometry():
    dom = Rectangle(3, 2)
    cone = build_cone(dom, (1, 1, 6))
    assert cone.antipode() == (2, 1, 1)
    assert cone.contains(1, 1, 6)
    assert cone.contains(1, 1, 4)
    assert not cone.contains(1, 1, 8)
    # The apex itself is tight on every upper functional.
    assert any(f.startswith("u") for f in cone.tight_functionals(1, 1, 6))
    # The antipode sits on the lower envelope.
    assert cone.lower(2, 1) == 1


def test_cone_rejects_boundary_apex():
    with pytest.raises(BoundaryApexError):
        build_cone(Rectangle(3, 2), (0, 1, 5))


def test_clip_raises_when_cone_misses_section():
    rng = random.Random(8)
    state = random_state(Rectangle(2, 2), "rational", rng)
    far = (1, 1, state.heights[(1, 1)] + 40)
    with pytest.raises(ConeMissError):
        clip_to_cone(state.copy(), build_cone(state.domain, far))


def test_formula_wbar_matches_engine():
    rng = random.Random(101)
    for kind in ("rational", "tropical"):
        for _ in range(30):
            m, n = rng.randint(2, 3), rng.randint(2, 3)
            state = random_state(Rectangle(m, n), kind, rng)
            p = random_interior_point(state, rng)
            assert evaluate_formula(state, p, "wbar") == value_at(state.copy(), p)


def test_formula_general_matches_engine():
    rng = random.Random(202)
    for kind in ("rational", "tropical"):
        for _ in range(30):
            m, n = rng.randint(2, 3), rng.randint(2, 3)
            state = random_state(Rectangle(m, n), kind, rng)
            p = random_interior_point(state, rng)
            assert evaluate_formula(state, p, "general") == value_at(state.copy(), p)


def test_formula_both_routes_agree():
    rng = random.Random(303)
    for _ in range(20):
        state = random_state(Rectangle(3, 3), "rational", rng)
        p = random_interior_point(state, rng)
        assert evaluate_formula(state, p, "both") == value_at(state.copy(), p)


def test_formula_on_boundary_points():
    """Wall and corner targets go through the period-relation route."""
    rng = random.Random(404)
    for kind in ("rational", "tropical"):
        for _ in range(25):
            m, n = rng.randint(1, 3), rng.randint(1, 3)
            state = random_state(Rectangle(m, n), kind, rng)
            perim = state.domain.perimeter()
            x, y = rng.choice(perim)
            t = state.heights[(x, y)] + 2 * rng.randint(1, m + n)
            p = (x, y, t)
            assert evaluate_formula(state, p) == value_at(state.copy(), p)


def test_formula_far_future_reduces_by_period():
    """Points whose cone floats entirely above the section still evaluate
    correctly through antipodal reduction."""
    rng = random.Random(505)
    for _ in range(10):
        state = random_state(Rectangle(2, 2), "rational", rng)
        t = state.heights[(1, 1)] + 2 * (2 + 2) * 3
        p = (1, 1, t)
        assert evaluate_formula(state, p, "both") == value_at(state.copy(), p)


def test_formula_rejects_past_points():
    rng = random.Random(7)
    state = random_state(Rectangle(3, 3), "rational", rng)
    p = (1, 1, state.heights[(1, 1)] - 2)
    with pytest.raises(ValueError):
        evaluate_formula(state, p)


def test_single_point_complex_when_section_touches_antipode():
    """If the section passes through the antipode, the complex collapses
    to that single vertex and the value is c times the antipode value."""
    rng = random.Random(606)
    hits = 0
    for _ in range(200):
        state = random_state(Rectangle(2, 2), "rational", rng)
        x, y = 1, 1
        bx, by = 1, 1
        t = state.heights[(bx, by)] + 2 + 2  # antipode height + m + n
        cone = build_cone(state.domain, (x, y, t))
        if cone.lower(bx, by) != state.heights[(bx, by)]:
            continue
        cx, values, eps = formula_complex(state, (x, y, t), "general")
        if len(cx.vertices) == 1:
            hits += 1
            assert not cx.faces and not cx.edges
            assert list(cx.vertices) == [(bx, by)]
    assert hits > 0


def test_enumerator_agrees_with_brute_force():
    rng = random.Random(707)
    checked = 0
    for _ in range(40):
        m, n = rng.randint(2, 3), rng.randint(2, 3)
        state = random_state(Rectangle(m, n), "rational", rng)
        p = random_interior_point(state, rng)
        for path in ("wbar", "general"):
            cx, _, _ = formula_complex(state, p, path)
            if len(cx.internal_edges()) > 12:
                continue
            fast = {frozenset(mth) for mth in enumerate_matchings(cx)}
            slow = set(brute_force_matchings(cx))
            assert fast == slow
            checked += 1
    assert checked >= 20


def test_exponents_are_integral():
    rng = random.Random(808)
    for _ in range(25):
        state = random_state(Rectangle(3, 2), "rational", rng)
        p = random_interior_point(state, rng)
        for path in ("wbar", "general"):
            cx, _, eps = formula_complex(state, p, path)
            for mth in enumerate_matchings(cx):
                ks = exponent_vector(cx, mth, eps)   # raises if non-integral
                assert all(isinstance(k, int) for k in ks.values())


def test_count_matchings_positive():
    rng = random.Random(909)
    for _ in range(15):
        state = random_state(Rectangle(3, 3), "tropical", rng)
        p = random_interior_point(state, rng)
        assert count_matchings(state, p) >= 1


def test_formula_does_not_disturb_state():
    rng = random.Random(111)
    state = random_state(Rectangle(3, 2), "rational", rng)
    heights = dict(state.heights)
    values = dict(state.values)
    p = random_interior_point(state, rng)
    evaluate_formula(state, p, "both")
    assert state.heights == heights
    assert state.values == values
