"""Compute one octahedron-recurrence value two ways.

The recurrence engine evolves a section upward move by move.  The
matchings formula instead clips the section into the reflected light
cone of the target point, triangulates the clipped surface, and sums one
Laurent monomial per matching of the resulting complex (a matching
selects exactly one dotted edge in every face).  Both give the same
value, monomial by monomial in exact arithmetic.
"""
import random

from octrec import (Rectangle, enumerate_matchings, evaluate_formula,
                    exponent_vector, formula_complex, render, value_at)
from octrec.engine import random_state

rng = random.Random(7)
state = random_state(Rectangle(3, 3), "rational", rng)
point = (1, 2, state.heights[(1, 2)] + 4)

engine_value = value_at(state.copy(), point)
formula_value = evaluate_formula(state, point, "both")
print(f"target point        : {point}")
print(f"engine value        : {render(engine_value)}")
print(f"formula value       : {render(formula_value)}")
assert engine_value == formula_value

cx, values, eps = formula_complex(state, point, "wbar")
print(f"\ncomplex: {len(cx.vertices)} vertices, {len(cx.edges)} edges "
      f"({len(cx.internal_edges())} internal), {len(cx.faces)} faces")

matchings = enumerate_matchings(cx)
print(f"matchings: {len(matchings)}")
for i, mth in enumerate(matchings):
    ks = exponent_vector(cx, mth, eps)
    mono = " * ".join(f"f{v}^{k}" for v, k in sorted(ks.items()) if k)
    print(f"  {i}: dotted {sorted(mth)}")
    print(f"     monomial {mono or '1'}")

print("\nEvery exponent above is an integer: the formula is Laurent in the")
print("section values even though the bookkeeping uses half-integers.")
