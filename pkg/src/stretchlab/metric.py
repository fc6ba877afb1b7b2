"""The asymmetric length-ratio metric K(g, h) and its instrumentation.

K(g, h) is the supremum over curve classes of log(len_h / len_g); sweeps over
finite curve sets bound it from below.  The maximizer is generically a simple
closed curve, so slope sweeps are the default schedule on the punctured torus.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .errors import NoProgress, ZeroLength
from .shear import (
    ShearStructure,
    completeness_basis,
    curve_length,
    earthquake_twist,
    shear_to_holonomy_rep,
    word_length,
)
from .surface import (
    CombinatorialLoop,
    Curve,
    FreeWord,
    Slope,
    enumerate_conjugacy_classes,
    enumerate_slopes,
    slope_word,
    standard_torus_triangulation,
)

_GRAD_STEP = 1e-5
_TWIST_STEP = 1e-4
_STABLE_TOL = 1e-10
_HULL_TOL = 1e-8


def _pmap(fn, items: Sequence):
    """Order-preserving map; STRETCHLAB_THREADS caps the worker count (0 = auto)."""
    try:
        threads = int(os.environ.get("STRETCHLAB_THREADS", "1"))
    except ValueError:
        threads = 1
    if threads == 0:
        threads = os.cpu_count() or 1
    if threads <= 1 or len(items) < 4:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def curve_sort_key(c: Curve):
    """Canonical curve order used for deterministic tie-breaking."""
    if isinstance(c, Slope):
        return (0, abs(c.p) + abs(c.q), c.p, c.q)
    if isinstance(c, FreeWord):
        return (1, len(c.letters), c.letters)
    if isinstance(c, CombinatorialLoop):
        return (2, len(c.steps), c.spec())
    raise TypeError(f"not a curve: {c!r}")


def curve_id(c: Curve) -> str:
    if isinstance(c, Slope):
        return f"slope:{c.spec()}"
    if isinstance(c, FreeWord):
        return f"word:{c.spec()}"
    if isinstance(c, CombinatorialLoop):
        return f"loop:{c.spec()}"
    raise TypeError(f"not a curve: {c!r}")


@dataclass(frozen=True)
class RatioReport:
    """Per-curve length pairs and log-ratios, sorted by descending log-ratio."""

    rows: tuple[tuple[Curve, float, float, float], ...]
    best_curve: Curve
    k_lower: float
    stabilized: bool
    levels: tuple[int, ...]


@dataclass(frozen=True)
class TangentCovector:
    """Per-shear-coordinate components, lying in the completeness hyperplane."""

    components: tuple[float, ...]

    def norm(self) -> float:
        return math.sqrt(math.fsum(c * c for c in self.components))

    def basis_coordinates(self, triangulation) -> tuple[float, ...]:
        """Coordinates in the fixed orthonormal hyperplane basis."""
        return tuple(
            math.fsum(c * ui for c, ui in zip(self.components, u))
            for u in completeness_basis(triangulation)
        )


def nonperipheral_classes(N: int) -> list[FreeWord]:
    """Conjugacy classes of length <= N with the puncture-parallel ones dropped.

    Peripheral classes (powers of the commutator) are parabolic on every
    complete structure, so membership is tested once at the zero-shear point.
    """
    reference = ShearStructure(standard_torus_triangulation(), (0.0, 0.0, 0.0))
    return [w for w in enumerate_conjugacy_classes(N) if curve_length(reference, w) > 0.0]


def k_lower_bound(g: ShearStructure, h: ShearStructure, curves: Sequence[Curve]) -> RatioReport:
    """Exact max of log(len_h / len_g) over the given finite curve set."""
    if not curves:
        raise ValueError("curve set must be nonempty")
    if g.triangulation != h.triangulation:
        raise ValueError("structures must share a triangulation")

    def row(c: Curve):
        lg = curve_length(g, c)
        lh = curve_length(h, c)
        if lg == 0.0 or lh == 0.0:
            raise ZeroLength(f"curve {curve_id(c)} has zero length; ratios need positive lengths")
        return (c, lg, lh, math.log(lh / lg))

    rows = _pmap(row, list(curves))
    rows.sort(key=lambda r: (-r[3], curve_sort_key(r[0])))
    best = rows[0]
    return RatioReport(tuple(rows), best[0], best[3], True, ())


def k_estimate(g: ShearStructure, h: ShearStructure, schedule: Sequence[int]) -> RatioReport:
    """Run slope sweeps at increasing complexity bounds; stabilized means the
    best curve and the bound agreed across the last two levels."""
    levels = tuple(schedule)
    if not levels or any(b <= a for a, b in zip(levels, levels[1:])):
        raise ValueError("schedule must be nonempty and strictly increasing")
    reports = [k_lower_bound(g, h, enumerate_slopes(n)) for n in levels]
    stabilized = False
    if len(reports) >= 2:
        prev, last = reports[-2], reports[-1]
        stabilized = (
            prev.best_curve == last.best_curve
            and abs(prev.k_lower - last.k_lower) <= _STABLE_TOL
        )
    last = reports[-1]
    return RatioReport(last.rows, last.best_curve, last.k_lower, stabilized, levels)


def grad_log_length(g: ShearStructure, c: Curve, step: float = _GRAD_STEP) -> TangentCovector:
    """Central differences of log-length along the completeness-hyperplane basis,
    assembled back into per-shear-coordinate components (exactly in the hyperplane)."""
    if curve_length(g, c) == 0.0:
        raise ZeroLength(f"curve {curve_id(c)} is puncture-parallel; log-length is undefined")
    T = g.triangulation
    basis = completeness_basis(T)
    derivs = []
    for u in basis:
        plus = ShearStructure(T, tuple(x + step * ui for x, ui in zip(g.shears, u)))
        minus = ShearStructure(T, tuple(x - step * ui for x, ui in zip(g.shears, u)))
        derivs.append(
            (math.log(curve_length(plus, c)) - math.log(curve_length(minus, c))) / (2.0 * step)
        )
    per_edge = [0.0] * T.num_edges
    for d, u in zip(derivs, basis):
        for k in range(T.num_edges):
            per_edge[k] += d * u[k]
    return TangentCovector(tuple(per_edge))


# -- gradient cloud and its convex hull ---------------------------------------

@dataclass(frozen=True)
class CloudReport:
    """Gradient covectors of slope curves in the 2d hyperplane basis."""

    points: tuple[tuple[Slope, float, float], ...]
    hull: tuple[int, ...]
    origin_interior: bool
    all_vertices: bool


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


_HULL_BUILD_TOL = 1e-12  # just above double roundoff for O(1) gradients


def convex_hull_indices(pts: Sequence[tuple[float, float]], tol: float = _HULL_BUILD_TOL) -> list[int]:
    """Indices of the convex hull, counterclockwise (collinear points dropped)."""
    order = sorted(range(len(pts)), key=lambda i: pts[i])
    if len(order) <= 2:
        return order

    def build(indices):
        chain: list[int] = []
        for i in indices:
            while len(chain) >= 2 and _cross(pts[chain[-2]], pts[chain[-1]], pts[i]) <= tol:
                chain.pop()
            chain.append(i)
        return chain

    lower = build(order)
    upper = build(reversed(order))
    return lower[:-1] + upper[:-1]


def _depth_inside_hull(pts, hull, p) -> float:
    """Distance from p to the hull boundary, measured inward (0 if outside)."""
    depth = math.inf
    for i in range(len(hull)):
        a = pts[hull[i]]
        b = pts[hull[(i + 1) % len(hull)]]
        edge = math.hypot(b[0] - a[0], b[1] - a[1])
        if edge == 0.0:
            continue
        signed = _cross(a, b, p) / edge
        if signed < 0.0:
            return 0.0
        depth = min(depth, signed)
    return depth


def convex_cloud(g: ShearStructure, N: int) -> CloudReport:
    """Gradient covectors of all slopes with |p|+|q| <= N, plus hull verdicts.

    The log-length differentials of projective laminations form a convex
    sphere around the origin, with a corner at every simple closed curve on
    the punctured torus.  The poke-out of deep-slope corners falls below
    double precision, so the vertex verdict is a membership check: a point
    counts as a hull vertex when it is no deeper than 1e-8 inside the hull.
    The origin must be interior with margin 1e-8.
    """
    if N < 2:
        raise ValueError("need N >= 2 for a two-dimensional cloud")
    if len(completeness_basis(g.triangulation)) != 2:
        raise ValueError("gradient clouds are only defined for the punctured torus (2d hyperplane)")
    slopes = enumerate_slopes(N)
    grads = _pmap(lambda s: grad_log_length(g, s).basis_coordinates(g.triangulation), slopes)
    points = tuple((s, gx, gy) for s, (gx, gy) in zip(slopes, grads))
    pts = [(gx, gy) for _, gx, gy in points]
    hull = convex_hull_indices(pts)
    hull_set = set(hull)
    all_vertices = all(
        i in hull_set or _depth_inside_hull(pts, hull, pts[i]) <= _HULL_TOL
        for i in range(len(pts))
    )
    origin_interior = False
    if len(hull) >= 3:
        origin_interior = all(
            _cross(pts[hull[i]], pts[hull[(i + 1) % len(hull)]], (0.0, 0.0))
            >= _HULL_TOL * math.hypot(
                pts[hull[(i + 1) % len(hull)]][0] - pts[hull[i]][0],
                pts[hull[(i + 1) % len(hull)]][1] - pts[hull[i]][1],
            )
            for i in range(len(hull))
        )
    return CloudReport(points, tuple(hull), origin_interior, all_vertices)


# -- twist derivatives ---------------------------------------------------------

def _slope_length_in_rep(rep, s: Slope) -> float:
    return word_length(rep, slope_word(s))


def twist_derivative(g: ShearStructure, along: Slope, of: Slope, step: float = _TWIST_STEP) -> float:
    """Central difference of len(of) along the unit Fenchel-Nielsen twist in `along`."""
    rep = shear_to_holonomy_rep(g)
    plus = _slope_length_in_rep(earthquake_twist(rep, along, step), of)
    minus = _slope_length_in_rep(earthquake_twist(rep, along, -step), of)
    return (plus - minus) / (2.0 * step)


def antisymmetry_residual(g: ShearStructure, s: Slope, t: Slope) -> float:
    """Signed residual E_s(len t) + E_t(len s); zero for earthquake antisymmetry.

    For s = t the twist fixes its own trace identically, so the residual is
    exactly zero.
    """
    if s == t:
        return 0.0
    return twist_derivative(g, s, t) + twist_derivative(g, t, s)


# -- descent march toward a target structure -----------------------------------

@dataclass(frozen=True)
class MarchResult:
    path: tuple[ShearStructure, ...]
    records: tuple[tuple[int, float, Curve], ...]
    converged: bool


def stretch_march(
    g: ShearStructure,
    h: ShearStructure,
    step: float,
    max_steps: int,
    schedule: Sequence[int] = (8, 12),
) -> MarchResult:
    """Greedy surrogate for a stretch-path concatenation: repeatedly lengthen
    the currently maximizing curve until K_lower(g_i, h) drops below `step`.

    Raises NoProgress if the bound fails to drop by step/10 over five steps.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    T = g.triangulation
    path = [g]
    records: list[tuple[int, float, Curve]] = []
    history: list[float] = []
    cur = g
    converged = False
    for i in range(max_steps):
        report = k_estimate(cur, h, schedule)
        if report.k_lower < step:
            converged = True
            break
        records.append((i, report.k_lower, report.best_curve))
        history.append(report.k_lower)
        if len(history) >= 6 and history[-1] > history[-6] - step / 10.0:
            raise NoProgress(
                f"K_lower stuck near {history[-1]:.6g} after {i + 1} steps of size {step}"
            )
        grad = grad_log_length(cur, report.best_curve)
        norm = grad.norm()
        if norm == 0.0:
            raise NoProgress("zero gradient for the maximizing curve")
        cur = ShearStructure(
            T, tuple(x + step * c / norm for x, c in zip(cur.shears, grad.components))
        )
        path.append(cur)
    return MarchResult(tuple(path), tuple(records), converged)


def asymmetry_probe(
    g: ShearStructure, h: ShearStructure, max_complexity: int = 20
) -> tuple[float, float]:
    """Both directed estimates at the same sweep level."""
    curves = enumerate_slopes(max_complexity)
    return (
        k_lower_bound(g, h, curves).k_lower,
        k_lower_bound(h, g, curves).k_lower,
    )
