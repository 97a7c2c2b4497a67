"""Quadrant transport values as hexagon matching counts.

Run the recurrence in a quadrant from the triangle plane t = x + y - n
up to t = n - x - y with every input equal to 1.  The output value at
(x0, y0, t0) is then a plain count: the number of matchings of the
hexagon inscribed in the input triangle by
x <= n - y0, y <= n - x0, x + y >= t0.  These are the same counts that
appear for lozenge tilings of hexagons (plane partitions in a box).
"""
from octrec import (PositiveRational, hexagon_matching_count, quarter_phi,
                    render)
from octrec.variants import TriangleState

for n in (2, 3, 4, 5):
    ones = TriangleState(n, "lower",
                         {(x, y): PositiveRational(1)
                          for x in range(n + 1) for y in range(n + 1 - x)})
    out = quarter_phi(ones).values
    print(f"\nn = {n}: output plane values vs hexagon matching counts")
    for y in range(n, -1, -1):
        row = []
        for x in range(n + 1 - y):
            v = out[(x, y)]
            count = hexagon_matching_count(n, x, y, n - x - y)
            assert v == PositiveRational(count)
            row.append(f"{render(v)}")
        print("  " + " ".join(f"{s:>4}" for s in row))

print("\nThe largest entry sits at the center of the triangle, where the")
print("inscribed hexagon is biggest; corners see a single point and give 1.")
