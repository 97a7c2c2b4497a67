"""The cube recurrence on the triangular prism: rule strata, sliding
window involution, and the period relation."""
import random

import pytest

from octrec import (PositiveRational, cube_extend_down, cube_extend_up,
                    cube_periodicity_check, cube_shift_image, cube_site_kind,
                    cube_step_rule, level_points, random_slab,
                    slab_from_levels)
from octrec.cube import CubeMoveError, in_prism


def test_prism_membership():
    assert in_prism(2, 0, 0, 0)
    assert in_prism(2, 0, 1, 2)
    assert not in_prism(2, 1, 0, 0)     # y < x
    assert not in_prism(2, 0, 0, 3)     # z > x + n


def test_site_kinds():
    n = 3
    assert cube_site_kind(n, 0, 1, 2) == "interior"
    assert cube_site_kind(n, 1, 1, 3) == "xy"
    assert cube_site_kind(n, 0, 2, 2) == "yz"
    assert cube_site_kind(n, 0, 1, 3) == "zx"
    assert cube_site_kind(n, 1, 1, 1) == "xyz"
    assert cube_site_kind(n, 0, 3, 3) == "yzx"
    assert cube_site_kind(n, 0, 0, 3) == "zxy"
    with pytest.raises(CubeMoveError):
        cube_site_kind(n, 2, 0, 0)


def test_level_points_partition():
    n = 2
    for s in range(-3, 9):
        pts = level_points(n, s)
        assert all(in_prism(n, *p) and sum(p) == s for p in pts)
    # Every prism point in a box shows up on exactly one level.
    box = [(x, y, z) for x in range(-2, 3) for y in range(x, x + n + 1)
           for z in range(y, x + n + 1)]
    for p in box:
        assert p in level_points(n, sum(p))


def test_cube_rule_interior_hand_case():
    R = PositiveRational
    vals = {(1, 0, 0): R(2), (0, 1, 0): R(3), (0, 0, 1): R(5),
            (1, 1, 0): R(7), (1, 0, 1): R(11), (0, 1, 1): R(13)}
    got = cube_step_rule("interior", vals.__getitem__, R(4))
    # (a*q + b*e + c*d) / below
    assert got == R(2 * 13 + 3 * 11 + 5 * 7, 4)


def test_cube_rule_wall_and_edge_cases():
    R = PositiveRational
    vals = {(1, 0, 0): R(2), (0, 1, 0): R(3), (0, 0, 1): R(5),
            (1, 1, 0): R(7), (1, 0, 1): R(11), (0, 1, 1): R(13)}
    assert cube_step_rule("xy", vals.__getitem__, R(1)) == R(35)
    assert cube_step_rule("yz", vals.__getitem__, R(2)) == R(13)
    assert cube_step_rule("zx", vals.__getitem__, R(3)) == R(11)
    assert cube_step_rule("xyz", vals.__getitem__, R(1)) == R(65)
    assert cube_step_rule("yzx", vals.__getitem__, R(1)) == R(22)
    assert cube_step_rule("zxy", vals.__getitem__, R(1)) == R(21)
    with pytest.raises(CubeMoveError):
        cube_step_rule("nope", vals.__getitem__, R(1))


def test_extend_up_then_down_is_identity():
    rng = random.Random(61)
    for kind in ("rational", "tropical"):
        for n in (1, 2, 3):
            for _ in range(10):
                state = random_slab(n, kind, rng)
                original = dict(state.values)
                cube_extend_up(state, 3)
                probe = state.copy()
                probe.values = {p: v for p, v in probe.values.items()
                                if sum(p) >= probe.hi - 2}
                probe.lo = probe.hi - 2
                cube_extend_down(probe, probe.lo - state.lo)
                for p, v in original.items():
                    assert probe.values[p] == v


def test_slab_validation():
    n = 2
    levels = [{p: PositiveRational(1) for p in level_points(n, s)}
              for s in range(3)]
    slab_from_levels(n, 0, levels)
    with pytest.raises(ValueError):
        slab_from_levels(n, 0, levels[:2])
    broken = [dict(lv) for lv in levels]
    broken[1].popitem()
    with pytest.raises(ValueError):
        slab_from_levels(n, 0, broken)


def test_shift_image_geometry():
    n = 2
    for p in level_points(n, 5):
        q = cube_shift_image(n, p)
        assert in_prism(n, *q)
        assert sum(q) == sum(p) - 2 * n


def test_cube_periodicity():
    rng = random.Random(72)
    for kind in ("rational", "tropical"):
        for n in (1, 2, 3):
            for _ in range(8):
                state = random_slab(n, kind, rng)
                samples = []
                for _ in range(10):
                    s = rng.randint(2 * n, 2 * n + 3)
                    samples.append(rng.choice(level_points(n, s)))
                ok, c, ratios = cube_periodicity_check(state, samples)
                assert ok
                assert all(r == c for r in ratios)
