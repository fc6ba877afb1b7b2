"""Shared helpers for the test suite."""

import random

from stretchlab import ShearStructure, shears_from_coefficients, standard_torus_triangulation

TORUS = standard_torus_triangulation()


def random_complete(rng: random.Random, scale: float = 1.5) -> ShearStructure:
    """Random point on the completeness hyperplane of the standard torus."""
    coeffs = (rng.uniform(-scale, scale), rng.uniform(-scale, scale))
    return ShearStructure(TORUS, shears_from_coefficients(TORUS, coeffs))


def sphere3_triangulation():
    """Two triangles glued into the thrice-punctured sphere."""
    from stretchlab import IdealTriangulation

    pairs = {(0, 0): (1, 0), (0, 1): (1, 2), (0, 2): (1, 1)}
    table = [0] * 6
    for (t, s), (u, r) in pairs.items():
        table[3 * t + s] = 3 * u + r
        table[3 * u + r] = 3 * t + s
    return IdealTriangulation(2, tuple(table))


def folded_sphere3_triangulation():
    """Triangulation with a self-adjacent triangle: sides 1 and 2 of triangle 0
    are glued to each other, so edge e1 lies on its own gluing quadrilateral."""
    from stretchlab import IdealTriangulation

    pairs = {(0, 0): (1, 0), (0, 1): (0, 2), (1, 1): (1, 2)}
    table = [0] * 6
    for (t, s), (u, r) in pairs.items():
        table[3 * t + s] = 3 * u + r
        table[3 * u + r] = 3 * t + s
    return IdealTriangulation(2, tuple(table))
