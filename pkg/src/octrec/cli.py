"""Command-line front end.

State documents are JSON: a rectangle section state carries the domain,
the semifield name, a heights array indexed [x][y], and a values array
of the same shape holding exact value strings ("p/q" for rationals,
"t:r" for tropical numbers).  Cube slabs carry the prism size, the base
level, and per-level lists of [x, y, z, value] entries.

Exit codes: 0 success, 1 a mathematical check failed (a counterexample
document is printed), 2 usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import cube as cube_mod
from . import semifield as sf
from .engine import (SpaceTimeState, evolve_to, periodicity_check,
                     random_state, random_value, value_at)
from .lattice import Rectangle, Section
from .matchings import count_matchings, evaluate_formula, formula_complex
from .variants import (TriangleState, half_equivalence_check, square_grid,
                       rotation_covariance_check)


def _semifield_of(values) -> str:
    first = next(iter(values.values()))
    return "tropical" if isinstance(first, sf.TropicalNumber) else "rational"


def state_to_doc(state: SpaceTimeState) -> dict:
    m, n = state.domain.m, state.domain.n
    heights = [[state.heights[(x, y)] for y in range(n + 1)]
               for x in range(m + 1)]
    values = [[sf.render(state.frontier_value(x, y)) for y in range(n + 1)]
              for x in range(m + 1)]
    return {
        "domain": {"shape": "rectangle", "m": m, "n": n},
        "semifield": _semifield_of(state.values),
        "heights": heights,
        "values": values,
    }


def state_from_doc(doc: dict) -> SpaceTimeState:
    dom = doc["domain"]
    if dom.get("shape") != "rectangle":
        raise ValueError(f"unsupported domain shape {dom.get('shape')!r}")
    m, n = int(dom["m"]), int(dom["n"])
    heights = {(x, y): int(doc["heights"][x][y])
               for x in range(m + 1) for y in range(n + 1)}
    values = {(x, y): sf.parse(doc["values"][x][y])
              for x in range(m + 1) for y in range(n + 1)}
    kind = doc.get("semifield")
    if kind in ("rational", "tropical"):
        want = sf.TropicalNumber if kind == "tropical" else sf.PositiveRational
        for v in values.values():
            if not isinstance(v, want):
                raise ValueError("value does not match the declared semifield")
    section = Section(Rectangle(m, n), heights)
    return SpaceTimeState.from_section_state(section, values)


def cube_to_doc(state: cube_mod.CubeState) -> dict:
    slab = []
    for s in range(state.lo, state.hi + 1):
        slab.append([[x, y, z, sf.render(state.values[(x, y, z)])]
                     for (x, y, z) in cube_mod.level_points(state.n, s)])
    return {
        "domain": {"shape": "prism", "n": state.n},
        "semifield": _semifield_of(state.values),
        "base_level": state.lo,
        "slab": slab,
    }


def cube_from_doc(doc: dict) -> cube_mod.CubeState:
    dom = doc["domain"]
    if dom.get("shape") != "prism":
        raise ValueError(f"unsupported domain shape {dom.get('shape')!r}")
    n = int(dom["n"])
    lo = int(doc["base_level"])
    levels = []
    for level in doc["slab"][:3]:
        levels.append({(int(x), int(y), int(z)): sf.parse(v)
                       for x, y, z, v in level})
    state = cube_mod.slab_from_levels(n, lo, levels)
    for i, level in enumerate(doc["slab"][3:], start=3):
        cube_mod.cube_extend_up(state)
        for x, y, z, v in level:
            if state.values[(int(x), int(y), int(z))] != sf.parse(v):
                raise ValueError(f"slab level {lo + i} is inconsistent")
    return state


def _read_doc(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _write_doc(doc: dict, path) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if path in (None, "-"):
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _parse_point(text: str, size: int = 3):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != size:
        raise ValueError(f"expected {size} comma-separated integers, got {text!r}")
    return tuple(int(p) for p in parts)


def _fail(doc: dict) -> int:
    print(json.dumps(doc, indent=2, sort_keys=True))
    return 1


# ---------------------------------------------------------------------------
# Subcommands

def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    state = random_state(Rectangle(args.m, args.n), args.semifield, rng)
    _write_doc(state_to_doc(state), args.output)
    return 0


def cmd_evolve(args) -> int:
    state = state_from_doc(_read_doc(args.input))
    target = {p: t + 2 * args.steps for p, t in state.heights.items()}
    evolve_to(state, Section(state.domain, target))
    _write_doc(state_to_doc(state), args.output)
    return 0


def cmd_value(args) -> int:
    state = state_from_doc(_read_doc(args.input))
    point = _parse_point(args.point)
    print(sf.render(value_at(state, point)))
    return 0


def cmd_formula(args) -> int:
    state = state_from_doc(_read_doc(args.input))
    point = _parse_point(args.point)
    print(sf.render(evaluate_formula(state, point, args.path)))
    return 0


def cmd_matchings(args) -> int:
    from .matchings import enumerate_matchings, exponent_vector
    state = state_from_doc(_read_doc(args.input))
    point = _parse_point(args.point)
    path = args.path if args.path != "both" else "wbar"
    cx, values, eps = formula_complex(state, point, path)
    edges = sorted(cx.edges)
    eindex = {e: i for i, e in enumerate(edges)}
    matchings = enumerate_matchings(cx)
    out = {
        "point": list(point),
        "path": path,
        "vertices": [[x, y, t] for (x, y), t in sorted(cx.vertices.items())],
        "edges": [{"from": list(e[0]), "to": list(e[1]),
                   "boundary": cx.edges[e]} for e in edges],
        "matchings": [sorted(eindex[e] for e in mth) for mth in matchings],
        "exponents": [
            [[x, y, k] for (x, y), k in sorted(exponent_vector(cx, mth, eps).items())]
            for mth in matchings
        ],
        "values": {f"{x},{y}": sf.render(v) for (x, y), v in sorted(values.items())},
    }
    _write_doc(out, args.output)
    return 0


def cmd_count(args) -> int:
    state = state_from_doc(_read_doc(args.input))
    point = _parse_point(args.point)
    path = args.path if args.path != "both" else "wbar"
    print(count_matchings(state, point, path))
    return 0


def cmd_check_periodicity(args) -> int:
    rng = random.Random(args.seed)
    for case in range(args.cases):
        if args.input is not None:
            state = state_from_doc(_read_doc(args.input))
        else:
            state = random_state(Rectangle(args.m, args.n), args.semifield, rng)
        doc = state_to_doc(state)
        m, n = state.domain.m, state.domain.n
        samples = []
        for _ in range(args.samples):
            x = rng.randint(0, m)
            y = rng.randint(0, n)
            h = state.heights[(x, y)]
            samples.append((x, y, h + 2 * rng.randint(0, m + n)))
        ok, c, _ = periodicity_check(state, samples)
        print(f"case {case}: {'ok' if ok else 'FAIL'} c={sf.render(c)}")
        if not ok:
            return _fail({"check": "periodicity", "case": case,
                          "state": doc, "samples": [list(s) for s in samples]})
        if args.input is not None:
            break
    return 0


def cmd_check_quarter(args) -> int:
    rng = random.Random(args.seed)
    n = args.size
    for case in range(args.cases):
        values = {(x, y): random_value(args.semifield, rng)
                  for x in range(n + 1) for y in range(n + 1 - x)}
        state = TriangleState(n, "lower", values)
        ok, scalar, predicted = rotation_covariance_check(state)
        print(f"case {case}: {'ok' if ok else 'FAIL'} scalar={sf.render(scalar)}")
        if not ok:
            return _fail({"check": "quarter", "case": case, "n": n,
                          "seed": args.seed,
                          "scalar": sf.render(scalar),
                          "predicted": sf.render(predicted)})
    return 0


def cmd_check_half(args) -> int:
    rng = random.Random(args.seed)
    n = args.size
    for case in range(args.cases):
        values = {p: random_value(args.semifield, rng) for p in square_grid(n)}
        ok, scalar = half_equivalence_check(n, values)
        print(f"case {case}: {'ok' if ok else 'FAIL'} scalar={sf.render(scalar)}")
        if not ok:
            return _fail({"check": "half", "case": case, "n": n,
                          "seed": args.seed, "scalar": sf.render(scalar)})
    return 0


def cmd_cube_evolve(args) -> int:
    state = cube_from_doc(_read_doc(args.input))
    cube_mod.cube_extend_up(state, args.steps)
    _write_doc(cube_to_doc(state), args.output)
    return 0


def cmd_cube_check(args) -> int:
    rng = random.Random(args.seed)
    n = args.size
    for case in range(args.cases):
        if args.input is not None:
            state = cube_from_doc(_read_doc(args.input))
            n = state.n
        else:
            state = cube_mod.random_slab(n, args.semifield, rng)
        samples = []
        for _ in range(args.samples):
            s = rng.randint(state.lo + 2 * n, state.lo + 2 * n + 2)
            samples.append(rng.choice(cube_mod.level_points(n, s)))
        ok, c, _ = cube_mod.cube_periodicity_check(state, samples)
        print(f"case {case}: {'ok' if ok else 'FAIL'} c={sf.render(c)}")
        if not ok:
            return _fail({"check": "cube", "case": case, "n": n,
                          "seed": args.seed,
                          "samples": [list(s) for s in samples]})
        if args.input is not None:
            break
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="octrec",
        description="exact bounded octahedron/cube recurrence toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def io(p, inp=True, out=True):
        if inp:
            p.add_argument("--input", required=True, help="state JSON file, or - for stdin")
        if out:
            p.add_argument("--output", default=None, help="output file (default stdout)")

    def common_gen(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--semifield", choices=("rational", "tropical"),
                       default="rational")

    p = sub.add_parser("gen", help="generate a random section state")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    common_gen(p)
    io(p, inp=False)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("evolve", help="advance the frontier uniformly")
    io(p)
    p.add_argument("--steps", type=int, default=1)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("value", help="engine value at a lattice point")
    io(p, out=False)
    p.add_argument("--point", required=True, help='"x,y,t"')
    p.set_defaults(func=cmd_value)

    p = sub.add_parser("formula", help="matchings-formula value at a point")
    io(p, out=False)
    p.add_argument("--point", required=True)
    p.add_argument("--path", choices=("wbar", "general", "both"), default="wbar")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("matchings", help="dump the complex and its matchings")
    io(p)
    p.add_argument("--point", required=True)
    p.add_argument("--path", choices=("wbar", "general", "both"), default="wbar")
    p.set_defaults(func=cmd_matchings)

    p = sub.add_parser("count", help="number of matchings at a point")
    io(p, out=False)
    p.add_argument("--point", required=True)
    p.add_argument("--path", choices=("wbar", "general", "both"), default="wbar")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("check-periodicity", help="verify the antipodal period relation")
    p.add_argument("--input", default=None)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    common_gen(p)
    p.add_argument("--cases", type=int, default=5)
    p.add_argument("--samples", type=int, default=10)
    p.set_defaults(func=cmd_check_periodicity)

    p = sub.add_parser("check-quarter", help="verify rotation covariance in a quadrant")
    p.add_argument("--size", type=int, default=3)
    common_gen(p)
    p.add_argument("--cases", type=int, default=5)
    p.set_defaults(func=cmd_check_quarter)

    p = sub.add_parser("check-half", help="verify half-plane vs half-strip equivalence")
    p.add_argument("--size", type=int, default=2)
    common_gen(p)
    p.add_argument("--cases", type=int, default=5)
    p.set_defaults(func=cmd_check_half)

    p = sub.add_parser("cube-evolve", help="extend a cube slab upward")
    io(p)
    p.add_argument("--steps", type=int, default=1)
    p.set_defaults(func=cmd_cube_evolve)

    p = sub.add_parser("cube-check", help="verify the cube period relation")
    p.add_argument("--input", default=None)
    p.add_argument("--size", type=int, default=2)
    common_gen(p)
    p.add_argument("--cases", type=int, default=5)
    p.add_argument("--samples", type=int, default=5)
    p.set_defaults(func=cmd_cube_check)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
