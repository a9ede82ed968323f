#!/usr/bin/env python3
"""Randomized transference experiment across the preset fields.

For each preset and rank, draws random per-place bodies (balls and, at
real places, boxes) with rational radii in [1/2, 2], runs the
transference check, and tabulates the minima products against the
certified lower and upper bounds.  A final summary prints the observed
extremes per preset, which is a quick way to see how much slack the
bounds leave in practice.
"""

import argparse
import random
from fractions import Fraction

from adelic import (
    AdelicBody,
    Ball,
    Box,
    PlaceBody,
    ProductBody,
    preset_field,
    standard_module,
    transference_check,
)

PRESETS = ("Q", "Q_sqrt2", "Q_sqrt5", "Q_i", "Q_sqrt-3")


def random_body(field, n, rng):
    place_bodies = []
    for (kind, _), dim in zip(field.places, field.place_dims(n)):
        radius = Fraction(rng.randint(2, 8), 4)
        if kind == "complex" or rng.random() < 0.5:
            shape = Ball(radius)
        else:
            shape = Box(tuple(Fraction(rng.randint(2, 8), 4) for _ in range(dim)))
        place_bodies.append(PlaceBody(kind, dim, shape))
    return AdelicBody(standard_module(field, n), ProductBody(field, n, place_bodies))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--presets", nargs="*", default=list(PRESETS))
    ap.add_argument("--ranks", nargs="*", type=int, default=[1, 2])
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    header = f"{'preset':>9} {'n':>2} {'trial':>5} {'ell':>3} {'product':>12} {'lower':>10} {'upper':>10} verdict"
    print(header)
    print("-" * len(header))
    extremes = {}
    for name in args.presets:
        field = preset_field(name)
        for n in args.ranks:
            for trial in range(args.trials):
                rep = transference_check(random_body(field, n, rng))
                for row in rep.rows:
                    lo = f"{rep.lower:.6f}" if rep.lower is not None else "n/a"
                    print(f"{name:>9} {n:>2} {trial:>5} {row.ell:>3} "
                          f"{row.product:>12.8f} {lo:>10} {rep.upper:>10.4f} {row.verdict}")
                    lo_seen, hi_seen = extremes.get(name, (float("inf"), 0.0))
                    extremes[name] = (min(lo_seen, row.product), max(hi_seen, row.product))

    print()
    print("observed product ranges:")
    for name, (lo, hi) in extremes.items():
        field = preset_field(name)
        floor = abs(field.discriminant) ** (-1.0 / field.degree)
        print(f"  {name:>9}: [{lo:.8f}, {hi:.8f}]   |disc|^(-1/d) = {floor:.8f}")


if __name__ == "__main__":
    main()
