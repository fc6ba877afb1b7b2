#!/usr/bin/env python3
"""Run the greedy descent march between two random structures and print the trace."""

import argparse
import random

from stretchlab import ShearStructure, shears_from_coefficients, standard_torus_triangulation, stretch_march


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--step", type=float, default=0.01)
    ap.add_argument("--max-steps", type=int, default=500)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    T = standard_torus_triangulation()
    g = ShearStructure(T, shears_from_coefficients(T, (rng.uniform(-1, 1), rng.uniform(-1, 1))))
    h = ShearStructure(T, shears_from_coefficients(T, (rng.uniform(-1, 1), rng.uniform(-1, 1))))

    result = stretch_march(g, h, step=args.step, max_steps=args.max_steps)
    print("step\tK_lower\tmaximizer")
    for i, k, curve in result.records:
        print(f"{i}\t{k:.6f}\t{curve.spec()}")
    maximizers = sorted({curve.spec() for _, _, curve in result.records})
    print(f"# converged={result.converged} steps={len(result.records)} distinct_maximizers={maximizers}")


if __name__ == "__main__":
    main()
