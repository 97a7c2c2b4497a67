"""The companion results: cube periodicity and the half-domain bridge.

First the cube recurrence on the triangular prism x <= y <= z <= x + n:
sliding a three-level window up the prism and comparing each value with
its shifted partner (x, y, z) -> (y - n, z - n, x) exposes a single
multiplicative constant, exactly like the octahedron period.

Then the half-domain equivalence: the recurrence over a half-plane and
the recurrence over a half-strip are the same computation, intertwined
by an explicit fold of one input plane onto the other, up to one global
scalar.
"""
import random

from octrec import (cube_periodicity_check, div, level_points, random_slab,
                    render)
from octrec.engine import random_value
from octrec.variants import (fold_source, half_equivalence_check,
                             half_plane_grid, square_grid)

rng = random.Random(99)

n = 2
state = random_slab(n, "tropical", rng)
samples = [rng.choice(level_points(n, s)) for s in range(2 * n, 2 * n + 6)]
ok, c, ratios = cube_periodicity_check(state, samples)
print(f"cube prism n = {n} (tropical): constant c = {render(c)}")
for p, r in zip(samples, ratios):
    print(f"  f{p} / f{(p[1] - n, p[2] - n, p[0])} = {render(r)}")
print(f"all ratios equal: {ok}")

n = 3
values = {p: random_value("rational", rng) for p in square_grid(n)}
ok, scalar = half_equivalence_check(n, values)
print(f"\nhalf-plane vs half-strip, n = {n}: projective agreement {ok}, "
      f"scalar {render(scalar)}")
folded = sorted(fold_source(n, x, y) for (x, y) in half_plane_grid(n))
print(f"the fold maps the {len(folded)} half-plane sites bijectively onto "
      f"the {(n + 1) ** 2} square sites: {folded == sorted(square_grid(n))}")
