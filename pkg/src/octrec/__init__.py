"""Exact-arithmetic laboratory for bounded octahedron and cube
recurrences over semifields."""

from .semifield import (PositiveRational, SemifieldMismatchError,
                        SemifieldValue, TropicalNumber, add, div, mul, one,
                        parse, power, product, render, sum_values)
from .lattice import (GridPoint, LatticePoint, Rectangle, Section,
                      SectionState, boundary_constant, cell_structure,
                      geodesic_path, perimeter_path, section_max, section_min,
                      validate_boundary_path, validate_section)
from .engine import (MoveError, SpaceTimeState, UnreachableTargetError,
                     antipode, apply_down_move, apply_up_move, evolve_to,
                     liftable_sites, lowerable_sites, periodicity_check,
                     random_section, random_state, random_value,
                     state_boundary_constant, step_rule, step_rule_inverse,
                     value_at)
from .matchings import (BoundaryApexError, CellComplex, ConeMissError,
                        LightCone, MatchingError, NonIntegralExponentError,
                        build_cone, build_w, build_wbar, clip_to_cone,
                        count_matchings, enumerate_matchings, epsilon_bar_map,
                        evaluate_formula, exponent_vector, formula_complex,
                        matching_monomial)
from .variants import (TriangleState, half_equivalence_check, half_phi1,
                       half_phi2, hexagon_locality_check,
                       hexagon_matching_count, hexagon_points, projective_ratio,
                       quarter_phi, quarter_values, rotate_lower, rotate_upper,
                       rotation_covariance_check, rotation_scalar)
from .cube import (CubeState, cube_extend_down, cube_extend_up,
                   cube_periodicity_check, cube_shift_image, cube_site_kind,
                   cube_step_rule, level_points, random_slab,
                   slab_from_levels)

__version__ = "0.1.0"
