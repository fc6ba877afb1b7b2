"""Shear-coordinate hyperbolic structures: holonomy, lengths, deformations.

Matrix convention for dual-spine holonomy (recorded design decision): crossing
an edge with shear x contributes

    E(x) = [[0, exp(x/2)], [-exp(-x/2), 0]]

and a turn inside the triangle entered through side s contributes

    L = [[1, 1], [-1, 0]]   (exit through side s+1)
    R = [[0, -1], [1, 1]]   (exit through side s+2)

with the product taken left to right along the loop.  The convention is
validated by two independent checks: completeness forces parabolic puncture
holonomy, and the zero-shear once-punctured torus has trace triple (3, 3, 3).

Holonomy representations of the once-punctured torus are based at the flag
"triangle 0 facing side 1"; the slope (0,1) loop starts one left turn away
from that flag, whence the conjugation in `shear_to_holonomy_rep`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath as mp

from .errors import (
    BasisChangeFailed,
    DegeneratePolygon,
    EllipticHolonomy,
    IncompatibleLoop,
    NotHyperbolic,
    NotStandardTorus,
)
from .hypgeom import IsometryMatrix
from .surface import (
    CombinatorialLoop,
    Curve,
    FreeWord,
    IdealTriangulation,
    Slope,
    Turn,
    puncture_loops,
    slope_word,
    standard_torus_triangulation,
)

COMPLETENESS_TOL = 1e-9
_PARABOLIC_TOL = 1e-9

Mat = tuple[float, float, float, float]

_L: Mat = (1.0, 1.0, -1.0, 0.0)
_R: Mat = (0.0, -1.0, 1.0, 1.0)
_ID: Mat = (1.0, 0.0, 0.0, 1.0)


def _mul(m: Mat, n: Mat) -> Mat:
    return (
        m[0] * n[0] + m[1] * n[2],
        m[0] * n[1] + m[1] * n[3],
        m[2] * n[0] + m[3] * n[2],
        m[2] * n[1] + m[3] * n[3],
    )


def _inv(m: Mat) -> Mat:
    return (m[3], -m[1], -m[2], m[0])


def _edge_matrix(x: float) -> Mat:
    e = math.exp(x / 2.0)
    return (0.0, e, -1.0 / e, 0.0)


def _length_from_trace(tr: float) -> float:
    t = abs(tr)
    if t <= 2.0 + _PARABOLIC_TOL:
        if t < 2.0 - _PARABOLIC_TOL:
            raise EllipticHolonomy(f"elliptic holonomy, |trace| = {t}")
        return 0.0
    return 2.0 * math.acosh(t / 2.0)


@dataclass(frozen=True, slots=True)
class ShearStructure:
    """Point of Teichmueller space: an ideal triangulation plus one shear per edge.

    Always complete: the signed shear sum around every puncture must vanish
    (equivalently every puncture holonomy is parabolic).
    """

    triangulation: IdealTriangulation
    shears: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "shears", tuple(float(x) for x in self.shears))
        T = self.triangulation
        if len(self.shears) != T.num_edges:
            raise ValueError(f"need {T.num_edges} shears, got {len(self.shears)}")
        if not all(math.isfinite(x) for x in self.shears):
            raise ValueError("shears must be finite")
        for k, total in enumerate(self.puncture_shear_sums()):
            if abs(total) > COMPLETENESS_TOL:
                raise ValueError(
                    f"incomplete structure: signed shear sum around puncture {k} is {total}"
                )

    def puncture_shear_sums(self) -> list[float]:
        T = self.triangulation
        sums = []
        for orbit in T.vertex_classes():
            sums.append(math.fsum(self.shears[T.edge_index(t, (s + 1) % 3)] for t, s in orbit))
        return sums


@dataclass(frozen=True, slots=True)
class HolonomyRep:
    """Images of the two generators of the once-punctured torus group.

    The commutator is the puncture class, so its trace must be -2.
    """

    A: IsometryMatrix
    B: IsometryMatrix

    def __post_init__(self):
        if abs(self.commutator_trace() + 2.0) > COMPLETENESS_TOL:
            raise ValueError(
                f"commutator trace {self.commutator_trace()} is not -2: not a cusped torus rep"
            )

    def commutator_trace(self) -> float:
        a = self.A.entries()
        b = self.B.entries()
        m = _mul(_mul(a, b), _mul(_inv(a), _inv(b)))
        return m[0] + m[3]

    def trace_triple(self) -> tuple[float, float, float]:
        a = self.A.entries()
        b = self.B.entries()
        ab = _mul(a, b)
        return (a[0] + a[3], b[0] + b[3], ab[0] + ab[3])


def _resolve_loop(T: IdealTriangulation, loop: CombinatorialLoop) -> tuple[int, int]:
    """Check the steps against the gluing table; return the starting flag.

    A flag (triangle, side) means "in this triangle, about to cross this side".
    Both flags of the first edge are tried in lexicographic order.
    """
    first_edge = loop.steps[0][0]
    if not 0 <= first_edge < T.num_edges:
        raise IncompatibleLoop(f"edge index {first_edge} out of range")
    for start in sorted(T.edge_sides(first_edge)):
        cur = start
        ok = True
        for edge, turn in loop.steps:
            if T.edge_index(*cur) != edge:
                ok = False
                break
            t2, s2 = T.opposite(*cur)
            offset = 1 if turn is Turn.LEFT else 2
            cur = (t2, (s2 + offset) % 3)
        if ok and cur == start:
            return start
    raise IncompatibleLoop(f"loop {loop.spec()} does not close up against the gluing table")


def holonomy_of_loop(S: ShearStructure, loop: CombinatorialLoop) -> IsometryMatrix:
    """Ordered product of edge-crossing and turn matrices along the loop."""
    _resolve_loop(S.triangulation, loop)
    m = _ID
    for edge, turn in loop.steps:
        m = _mul(m, _edge_matrix(S.shears[edge]))
        m = _mul(m, _L if turn is Turn.LEFT else _R)
    return IsometryMatrix(*m)


def _is_standard_torus(T: IdealTriangulation) -> bool:
    return T == standard_torus_triangulation()


@lru_cache(maxsize=4096)
def shear_to_holonomy_rep(S: ShearStructure) -> HolonomyRep:
    """Holonomy of the slope (1,0) and (0,1) loops, based at the flag (triangle 0, side 1).

    With shears (x0, x1, x2):

        A = E(x1) L E(x2) R
        B = L E(x2) L E(x0) R L^{-1}

    where the outer conjugation moves the (0,1) loop's natural starting flag
    (triangle 0, side 2) to the common base flag.  Zero shears give the
    maximally symmetric punctured torus with trace triple (3, 3, 3).
    """
    if not _is_standard_torus(S.triangulation):
        raise NotStandardTorus("holonomy representations need the standard torus triangulation")
    x0, x1, x2 = S.shears
    e0, e1, e2 = _edge_matrix(x0), _edge_matrix(x1), _edge_matrix(x2)
    a = _mul(_mul(e1, _L), _mul(e2, _R))
    b_raw = _mul(_mul(e2, _L), _mul(e0, _R))
    b = _mul(_mul(_L, b_raw), _inv(_L))
    return HolonomyRep(IsometryMatrix(*a), IsometryMatrix(*b))


def _word_matrix(word: str, a: Mat, b: Mat) -> Mat:
    table = {"a": a, "b": b, "A": _inv(a), "B": _inv(b)}
    m = _ID
    for ch in word:
        m = _mul(m, table[ch])
    return m


@lru_cache(maxsize=1 << 17)
def word_length(H: HolonomyRep, w: FreeWord) -> float:
    """Translation length of the word evaluated in the two generators."""
    m = _word_matrix(w.letters, H.A.entries(), H.B.entries())
    return _length_from_trace(m[0] + m[3])


def curve_length(S: ShearStructure, c: Curve) -> float:
    """Geodesic length of a curve class: translation length of its holonomy."""
    if isinstance(c, CombinatorialLoop):
        m = holonomy_of_loop(S, c)
        return _length_from_trace(m.trace)
    if isinstance(c, Slope):
        return word_length(shear_to_holonomy_rep(S), slope_word(c))
    if isinstance(c, FreeWord):
        return word_length(shear_to_holonomy_rep(S), c)
    raise TypeError(f"not a curve: {c!r}")


def stretch(S: ShearStructure, t: float) -> ShearStructure:
    """Scale every shear by exp(t); completeness is linear, so it is preserved."""
    factor = math.exp(t)
    return ShearStructure(S.triangulation, tuple(x * factor for x in S.shears))


# -- Fenchel-Nielsen twist on the holonomy representation ---------------------

@dataclass(frozen=True, slots=True)
class _Auto:
    """Automorphism of the rank-2 free group, recorded by the generator images."""

    img_a: str
    img_b: str

    def apply(self, word: str) -> str:
        from .surface import free_reduce, invert_word

        table = {
            "a": self.img_a,
            "A": invert_word(self.img_a),
            "b": self.img_b,
            "B": invert_word(self.img_b),
        }
        return free_reduce("".join(table[ch] for ch in word))

    def after(self, other: "_Auto") -> "_Auto":
        return _Auto(self.apply(other.img_a), self.apply(other.img_b))


_AUTO_ID = _Auto("a", "b")
_AUTO_S = _Auto("b", "A")       # realizes [[0,-1],[1,0]] on homology
_AUTO_S_INV = _Auto("B", "a")
_AUTO_NEG = _Auto("A", "B")     # elliptic involution, realizes -I


def _auto_t_power(k: int) -> _Auto:
    # realizes [[1,k],[0,1]]: a -> a, b -> b a^k
    tail = ("a" * k) if k >= 0 else ("A" * (-k))
    return _Auto("a", "b" + tail)


def _unimodular_completion(s: Slope) -> tuple[int, int]:
    """(r, s') with p*s' - q*r = 1, so [[p, r], [q, s']] is in SL(2, Z)."""
    p, q = s.p, s.q
    old_r, r = p, q
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r != 0:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_u, u = u, old_u - quotient * u
        old_v, v = v, old_v - quotient * v
    if old_r == -1:
        old_u, old_v = -old_u, -old_v
        old_r = 1
    if old_r != 1 or p * old_u + q * old_v != 1:
        raise BasisChangeFailed(f"no unimodular completion for slope ({p},{q})")
    return (-old_v, old_u)


def _slope_automorphism(s: Slope) -> tuple[_Auto, _Auto]:
    """Automorphism pair (phi, phi^{-1}) with phi sending 'a' to the slope's class."""
    r, sp = _unimodular_completion(s)
    # peel N = [[p,r],[q,sp]] into T^k and S factors by integer row reduction
    a, b, c, d = s.p, r, s.q, sp
    forward: list[_Auto] = []
    backward: list[_Auto] = []
    while c != 0:
        k = a // c
        # strip a leading T^k then a leading S:  N = T^k . S . N'
        forward.append(_auto_t_power(k))
        backward.append(_auto_t_power(-k))
        a, b = a - k * c, b - k * d
        forward.append(_AUTO_S)
        backward.append(_AUTO_S_INV)
        a, b, c, d = c, d, -a, -b
    if a == -1:
        a, b, d = -a, -b, -d
        forward.append(_AUTO_NEG)
        backward.append(_AUTO_NEG)
    # what remains is the upper-triangular T^b
    forward.append(_auto_t_power(b))
    backward.append(_auto_t_power(-b))
    phi = _AUTO_ID
    for f in forward:
        phi = phi.after(f)
    phi_inv = _AUTO_ID
    for g in reversed(backward):
        phi_inv = phi_inv.after(g)
    return phi, phi_inv


_TWIST_DPS = 60


def _axis_translation_extended(m, t):
    """Same-axis translation by t; entries are mpmath floats."""
    a, b, c, d = m
    if a + d < 0:
        a, b, c, d = -a, -b, -c, -d
    tr = a + d
    if tr * tr <= 4:
        raise NotHyperbolic(f"twist axis is not hyperbolic, trace {float(tr)}")
    root = mp.sqrt(tr * tr - 4)
    lam = (tr + root) / 2
    mu = (tr - root) / 2
    scale = 1 / (lam - mu)
    pa, pb, pc, pd = (a - mu) * scale, b * scale, c * scale, (d - mu) * scale
    ep = mp.exp(mp.mpf(t) / 2)
    em = 1 / ep
    return (ep * pa + em * (1 - pa), (ep - em) * pb, (ep - em) * pc, ep * pd + em * (1 - pd))


def earthquake_twist(H: HolonomyRep, s: Slope, t: float) -> HolonomyRep:
    """Fenchel-Nielsen twist of distance t along the simple closed curve of slope s.

    The basis is changed by a unimodular map sending s to (1,0), the second
    generator is premultiplied by the translation of distance t along the
    first generator's axis, and the basis change is undone.  The word
    evaluations run in extended precision: the basis-change conjugators can
    be far larger than the result, and the commutator invariant must still
    come out at -2 within 1e-9 after rounding to double.
    """
    if t == 0.0:
        return H
    phi, phi_inv = _slope_automorphism(s)
    with mp.workdps(_TWIST_DPS):
        a_mat = tuple(mp.mpf(x) for x in H.A.entries())
        b_mat = tuple(mp.mpf(x) for x in H.B.entries())
        a_new = _word_matrix(phi.img_a, a_mat, b_mat)
        b_new = _word_matrix(phi.img_b, a_mat, b_mat)
        tau = _axis_translation_extended(a_new, t)
        b_twisted = _mul(tau, b_new)
        a2 = _word_matrix(phi_inv.img_a, a_new, b_twisted)
        b2 = _word_matrix(phi_inv.img_b, a_new, b_twisted)
    return HolonomyRep(
        IsometryMatrix(*(float(x) for x in a2)),
        IsometryMatrix(*(float(x) for x in b2)),
    )


# -- transverse weights and the alternating-sum formula -----------------------

@dataclass(frozen=True, slots=True)
class TransverseWeights:
    """Total transverse measure of a foliation across each edge, nonnegative."""

    weights: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if any(w < 0.0 or not math.isfinite(w) for w in self.weights):
            raise ValueError("transverse weights must be finite and nonnegative")


def transverse_slope_weights(s: Slope) -> TransverseWeights:
    """Transverse measure of the slope curve across the standard torus edges."""
    return TransverseWeights((abs(s.q), abs(s.p), abs(s.p - s.q)))


def shear_from_transverse(T: IdealTriangulation, w) -> tuple[float, ...]:
    """Shears of the foliation with the given edge weights: for each edge, half
    the alternating sum of the weights on the sides of the gluing quadrilateral.

    The quadrilateral sides are read counterclockwise starting after the edge
    in its first triangle; sides glued to each other are counted with
    multiplicity.
    """
    weights = w.weights if isinstance(w, TransverseWeights) else TransverseWeights(tuple(w)).weights
    if len(weights) != T.num_edges:
        raise ValueError(f"need {T.num_edges} weights, got {len(weights)}")
    shears = []
    for e in range(T.num_edges):
        (t1, s1), (t2, s2) = T.edge_sides(e)
        quad = (
            (t1, (s1 + 1) % 3),
            (t1, (s1 + 2) % 3),
            (t2, (s2 + 1) % 3),
            (t2, (s2 + 2) % 3),
        )
        sides = [T.edge_index(t, s) for t, s in quad]
        if e in sides:
            raise DegeneratePolygon(f"edge e{e} appears on its own gluing quadrilateral")
        w1, w2, w3, w4 = (weights[k] for k in sides)
        shears.append(0.5 * (w1 - w2 + w3 - w4))
    return tuple(shears)


# -- completeness hyperplane ---------------------------------------------------

@lru_cache(maxsize=None)
def completeness_basis(T: IdealTriangulation) -> tuple[tuple[float, ...], ...]:
    """Deterministic orthonormal basis of the completeness hyperplane.

    Constructed by Gram-Schmidt on the coordinate directions projected off the
    puncture constraint vectors, in index order.
    """
    E = T.num_edges
    constraints: list[list[float]] = []
    for orbit in T.vertex_classes():
        row = [0.0] * E
        for t, s in orbit:
            row[T.edge_index(t, (s + 1) % 3)] += 1.0
        constraints.append(row)

    def _norm(v):
        return math.sqrt(math.fsum(x * x for x in v))

    def _project_off(v, basis):
        for u in basis:
            dot = math.fsum(vi * ui for vi, ui in zip(v, u))
            v = [vi - dot * ui for vi, ui in zip(v, u)]
        return v

    ortho_constraints: list[list[float]] = []
    for row in constraints:
        row = _project_off(row, ortho_constraints)
        n = _norm(row)
        if n > 1e-12:
            ortho_constraints.append([x / n for x in row])

    basis: list[tuple[float, ...]] = []
    for i in range(E):
        v = [0.0] * E
        v[i] = 1.0
        v = _project_off(v, ortho_constraints)
        v = _project_off(v, basis)
        n = _norm(v)
        if n > 1e-10:
            basis.append(tuple(x / n for x in v))
    return tuple(basis)


def shears_from_coefficients(T: IdealTriangulation, coeffs) -> tuple[float, ...]:
    """Shear vector with the given components in the completeness basis."""
    basis = completeness_basis(T)
    if len(coeffs) != len(basis):
        raise ValueError(f"need {len(basis)} coefficients, got {len(coeffs)}")
    E = T.num_edges
    out = [0.0] * E
    for c, u in zip(coeffs, basis):
        for k in range(E):
            out[k] += c * u[k]
    return tuple(out)
