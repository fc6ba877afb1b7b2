#!/usr/bin/env python3
"""Directed length-ratio bounds for pinched pairs.

Builds pairs (g, h) where h carries a very short geodesic (large shears along
one completeness-plane direction) and reports both directed bounds; the ratio
K(h,g)/K(g,h) blows up as the pinching deepens, the needle-eye picture of the
asymmetry of the minimal Lipschitz constant.
"""

import argparse
import math
import random

from stretchlab import ShearStructure, asymmetry_probe, shears_from_coefficients, standard_torus_triangulation, stretch


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--pinch", type=float, nargs="*", default=[2.0, 4.0, 6.0, 8.0, 10.0],
                    help="target magnitude of the pinching shear")
    ap.add_argument("--complexity", type=int, default=20)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    T = standard_torus_triangulation()
    g = ShearStructure(T, shears_from_coefficients(T, (rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5))))
    base = ShearStructure(T, (0.0, 0.8, -0.8))

    print("pinch\tK(g,h)\tK(h,g)\tratio")
    for m in args.pinch:
        h = stretch(base, math.log(m / 0.8))
        kgh, khg = asymmetry_probe(g, h, args.complexity)
        print(f"{m:g}\t{kgh:.6f}\t{khg:.6f}\t{khg / kgh:.3f}")


if __name__ == "__main__":
    main()
