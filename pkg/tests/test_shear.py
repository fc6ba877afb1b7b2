"""Shear structures: holonomy, lengths, deformations, transverse weights.

The expected traces are computed by an in-test matrix product transcribing
the documented convention with numpy, independently of the library's own
product code.
"""

import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stretchlab import (
    CombinatorialLoop,
    DegeneratePolygon,
    FreeWord,
    HolonomyRep,
    IncompatibleLoop,
    IsometryMatrix,
    NotStandardTorus,
    ShearStructure,
    Slope,
    Turn,
    completeness_basis,
    curve_length,
    earthquake_twist,
    holonomy_of_loop,
    puncture_loops,
    shear_from_transverse,
    shear_to_holonomy_rep,
    shears_from_coefficients,
    slope_word,
    standard_torus_triangulation,
    stretch,
    transverse_slope_weights,
    word_length,
)
from stretchlab.metric import twist_derivative

from util import TORUS, folded_sphere3_triangulation, random_complete, sphere3_triangulation

ACOSH_15 = math.acosh(1.5)
ZERO = ShearStructure(TORUS, (0.0, 0.0, 0.0))
LOOP_A = CombinatorialLoop(((1, Turn.LEFT), (2, Turn.RIGHT)))


# independent transcription of the documented matrix convention
def oracle_edge(x):
    return np.array([[0.0, math.exp(x / 2)], [-math.exp(-x / 2), 0.0]])


ORACLE_L = np.array([[1.0, 1.0], [-1.0, 0.0]])
ORACLE_R = np.array([[0.0, -1.0], [1.0, 1.0]])


def oracle_loop_trace(shears, steps):
    m = np.eye(2)
    for edge, turn in steps:
        m = m @ oracle_edge(shears[edge])
        m = m @ (ORACLE_L if turn == "L" else ORACLE_R)
    return float(np.trace(m))


coeff = st.floats(min_value=-1.8, max_value=1.8, allow_nan=False)


@st.composite
def complete_structures(draw):
    c1, c2 = draw(coeff), draw(coeff)
    return ShearStructure(TORUS, shears_from_coefficients(TORUS, (c1, c2)))


# -- structure invariants ---------------------------------------------------------

def test_incomplete_structure_rejected():
    with pytest.raises(ValueError):
        ShearStructure(TORUS, (0.5, 0.0, 0.0))


def test_nonfinite_shears_rejected():
    with pytest.raises(ValueError):
        ShearStructure(TORUS, (math.inf, 0.0, -math.inf))


@given(complete_structures())
@settings(max_examples=60)
def test_puncture_holonomy_parabolic(S):
    for loop in puncture_loops(TORUS):
        m = holonomy_of_loop(S, loop)
        assert abs(abs(m.trace) - 2.0) <= 1e-9
        assert curve_length(S, loop) == 0.0


# -- holonomy of loops --------------------------------------------------------------

def test_generator_loop_trace_against_oracle_zero_shear():
    m = holonomy_of_loop(ZERO, LOOP_A)
    expected = oracle_loop_trace((0.0, 0.0, 0.0), [(1, "L"), (2, "R")])
    assert abs(expected) == pytest.approx(3.0, abs=1e-12)
    assert abs(m.trace) == pytest.approx(abs(expected), abs=1e-12)


@given(complete_structures())
@settings(max_examples=40)
def test_loop_holonomy_matches_oracle(S):
    expected = oracle_loop_trace(S.shears, [(1, "L"), (2, "R")])
    got = holonomy_of_loop(S, LOOP_A)
    assert abs(got.trace) == pytest.approx(abs(expected), rel=1e-12, abs=1e-12)


def test_loop_reversal_is_projective_inverse():
    S = ShearStructure(TORUS, shears_from_coefficients(TORUS, (0.7, -0.4)))
    m = holonomy_of_loop(S, LOOP_A)
    r = holonomy_of_loop(S, LOOP_A.reversed())
    assert abs(r.trace) == pytest.approx(abs(m.trace), abs=1e-12)
    # the resolver rebases the reversed loop by one turn, so the literal
    # matrix relation is rev = R m^{-1} R^{-1} with R the right-turn matrix
    right = IsometryMatrix(0.0, -1.0, 1.0, 1.0)
    from stretchlab import compose

    expected = compose(compose(right, m.inverse()), right.inverse())
    assert r.entries() == pytest.approx(expected.entries(), abs=1e-12)


def test_loop_rotation_trace_exact():
    S = ShearStructure(TORUS, shears_from_coefficients(TORUS, (1.1, 0.3)))
    base = holonomy_of_loop(S, LOOP_A).trace
    for k in range(1, 2):
        rot = holonomy_of_loop(S, LOOP_A.rotated(k)).trace
        assert abs(abs(rot) - abs(base)) <= 1e-12


def test_incompatible_loop_rejected():
    with pytest.raises(IncompatibleLoop):
        holonomy_of_loop(ZERO, CombinatorialLoop(((0, Turn.LEFT),)))
    with pytest.raises(IncompatibleLoop):
        holonomy_of_loop(ZERO, CombinatorialLoop(((0, Turn.LEFT), (0, Turn.LEFT))))


# -- curve lengths --------------------------------------------------------------------

def test_zero_shear_systole():
    assert curve_length(ZERO, Slope(1, 0)) == pytest.approx(2 * ACOSH_15, abs=1e-12)


def test_zero_shear_order_three_symmetry():
    lengths = [curve_length(ZERO, s) for s in (Slope(1, 0), Slope(0, 1), Slope(1, 1))]
    assert max(lengths) - min(lengths) <= 1e-12


def test_word_length_examples():
    rep = shear_to_holonomy_rep(ZERO)
    assert word_length(rep, FreeWord("")) == 0.0
    assert word_length(rep, FreeWord("ab")) == pytest.approx(2 * ACOSH_15, abs=1e-12)
    w = FreeWord("aabAB")
    assert word_length(rep, w) == pytest.approx(word_length(rep, w.inverse()), abs=1e-12)


@given(complete_structures())
@settings(max_examples=30)
def test_nonperipheral_curves_have_positive_length(S):
    for s in (Slope(1, 0), Slope(0, 1), Slope(1, 1), Slope(-2, 3)):
        assert curve_length(S, s) > 0.0


# -- holonomy representation -----------------------------------------------------------

def test_zero_shear_trace_triple():
    rep = shear_to_holonomy_rep(ZERO)
    assert [abs(t) for t in rep.trace_triple()] == pytest.approx([3.0, 3.0, 3.0], abs=1e-12)


def test_commutator_trace_is_minus_two():
    rep = shear_to_holonomy_rep(ZERO)
    assert rep.commutator_trace() == pytest.approx(-2.0, abs=1e-12)


@given(complete_structures())
@settings(max_examples=60)
def test_markov_fricke_identity(S):
    x, y, z = shear_to_holonomy_rep(S).trace_triple()
    assert abs(x * x + y * y + z * z - x * y * z) <= 1e-9


def test_rep_requires_standard_torus():
    T3 = sphere3_triangulation()
    S3 = ShearStructure(T3, (0.0, 0.0, 0.0))
    with pytest.raises(NotStandardTorus):
        shear_to_holonomy_rep(S3)


def test_rep_validates_commutator():
    bad = IsometryMatrix(math.e, 0, 0, 1 / math.e)
    with pytest.raises(ValueError):
        HolonomyRep(bad, bad)


def test_slope_lengths_match_free_word_route():
    S = ShearStructure(TORUS, shears_from_coefficients(TORUS, (0.9, -0.2)))
    rep = shear_to_holonomy_rep(S)
    for s in (Slope(2, 1), Slope(-1, 2), Slope(3, 5)):
        assert curve_length(S, s) == word_length(rep, slope_word(s))


# -- stretch -----------------------------------------------------------------------------

def test_stretch_scalar_action():
    S = ShearStructure(TORUS, (1.0, -1.0, 0.0))
    assert stretch(S, 0.0).shears == S.shears
    doubled = stretch(S, math.log(2.0))
    assert doubled.shears == pytest.approx((2.0, -2.0, 0.0), abs=1e-12)


@pytest.mark.parametrize("t", [0.25, 1.0])
def test_stretch_log_ratio_bounded_by_t(t):
    from stretchlab import enumerate_slopes

    rng = random.Random(5)
    for _ in range(3):
        S = random_complete(rng)
        St = stretch(S, t)
        for s in enumerate_slopes(20):
            ratio = math.log(curve_length(St, s) / curve_length(S, s))
            assert ratio <= t + 1e-9


# -- earthquake twist ----------------------------------------------------------------------

def test_twist_zero_is_identity():
    rep = shear_to_holonomy_rep(ZERO)
    assert earthquake_twist(rep, Slope(1, 0), 0.0) is rep


@pytest.mark.parametrize("pq", [(1, 0), (0, 1), (1, 1), (-1, 1), (2, 1), (3, 2), (-3, 5)])
def test_twist_preserves_own_length(pq):
    rng = random.Random(hash(pq) & 0xFFFF)
    s = Slope(*pq)
    for _ in range(3):
        S = random_complete(rng, scale=1.0)
        rep = shear_to_holonomy_rep(S)
        tw = earthquake_twist(rep, s, 0.8)
        before = word_length(rep, slope_word(s))
        after = word_length(tw, slope_word(s))
        # invariance is exact (the twisted holonomy of s is a conjugate);
        # longer basis-change words accumulate more roundoff
        tol = 1e-12 if abs(pq[0]) + abs(pq[1]) <= 3 else 1e-9
        assert abs(after - before) <= tol


@given(complete_structures(), st.floats(min_value=-1.5, max_value=1.5, allow_nan=False))
@settings(max_examples=40)
def test_twist_preserves_completeness(S, t):
    rep = shear_to_holonomy_rep(S)
    tw = earthquake_twist(rep, Slope(1, 1), t)
    assert abs(tw.commutator_trace() + 2.0) <= 1e-9


def test_twist_derivative_finite_nonzero():
    d = twist_derivative(ZERO, Slope(1, 0), Slope(0, 1))
    assert math.isfinite(d)
    assert abs(d) > 0.1


def test_coordinate_cataclysm_differs_from_twist():
    # adding the slope's transverse-measure shear vector is a cataclysm along
    # the triangulation, not the twist along the slope: unlike the twist it
    # does not preserve the slope's own length
    s = Slope(1, 1)
    direction = shear_from_transverse(TORUS, transverse_slope_weights(s))
    h = 0.3
    moved = ShearStructure(TORUS, tuple(x + h * d for x, d in zip(ZERO.shears, direction)))
    assert abs(curve_length(moved, s) - curve_length(ZERO, s)) > 1e-3


# -- transverse weights --------------------------------------------------------------------

def test_alternating_sum_paper_arithmetic():
    # edge e0's quadrilateral reads weights (w1, w2, w1, w2) on the standard
    # torus; with (w1, w2) = (2, 1) the shear is (2 - 1 + 2 - 1)/2 = 1
    shears = shear_from_transverse(TORUS, (5.0, 2.0, 1.0))
    assert shears[0] == pytest.approx(1.0, abs=1e-15)


def test_symmetric_weights_give_zero_shears():
    assert shear_from_transverse(TORUS, (1.0, 1.0, 1.0)) == pytest.approx((0.0, 0.0, 0.0))


def test_slope_weights_small_cases():
    assert transverse_slope_weights(Slope(1, 1)).weights == (1.0, 1.0, 0.0)
    assert transverse_slope_weights(Slope(1, 0)).weights == (0.0, 1.0, 1.0)
    assert transverse_slope_weights(Slope(0, 1)).weights == (1.0, 0.0, 1.0)


def test_alternating_sum_hand_expansion_slope_11():
    # hand expansion on the standard gluing table, self-glued sides counted
    # twice: e0 reads (e1, e2, e1, e2), e1 reads (e2, e0, e2, e0), e2 reads
    # (e0, e1, e0, e1)
    w = transverse_slope_weights(Slope(1, 1)).weights
    by_hand = (
        0.5 * (w[1] - w[2] + w[1] - w[2]),
        0.5 * (w[2] - w[0] + w[2] - w[0]),
        0.5 * (w[0] - w[1] + w[0] - w[1]),
    )
    assert shear_from_transverse(TORUS, w) == pytest.approx(by_hand, abs=1e-15)
    assert by_hand == (1.0, -1.0, 0.0)


def test_earthquake_shear_vector_is_complete_direction():
    for pq in [(1, 0), (0, 1), (2, 1), (-1, 2)]:
        direction = shear_from_transverse(TORUS, transverse_slope_weights(Slope(*pq)))
        assert abs(sum(direction)) <= 1e-12


def test_degenerate_polygon_raises():
    T = folded_sphere3_triangulation()
    with pytest.raises(DegeneratePolygon):
        shear_from_transverse(T, (1.0, 1.0, 1.0))


def test_negative_weights_rejected():
    with pytest.raises(ValueError):
        shear_from_transverse(TORUS, (-1.0, 0.0, 0.0))


# -- analytic dependence proxy ----------------------------------------------------------------

def test_second_derivative_ratio_test():
    u = completeness_basis(TORUS)[0]
    s = Slope(1, 1)

    def length_at(offset):
        return curve_length(
            ShearStructure(TORUS, tuple(x + offset * ui for x, ui in zip(ZERO.shears, u))), s
        )

    def second_diff(h):
        return (length_at(h) - 2 * length_at(0.0) + length_at(-h)) / (h * h)

    d3, d4 = second_diff(1e-3), second_diff(1e-4)
    assert abs(d3 - d4) <= 1e-3 * max(1.0, abs(d4))


# -- completeness basis -------------------------------------------------------------------------

def test_completeness_basis_orthonormal_and_complete():
    basis = completeness_basis(TORUS)
    assert len(basis) == 2
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            dot = sum(a * b for a, b in zip(u, v))
            assert dot == pytest.approx(1.0 if i == j else 0.0, abs=1e-12)
        assert abs(sum(u)) <= 1e-12


def test_sphere3_has_rigid_structure():
    T3 = sphere3_triangulation()
    assert completeness_basis(T3) == ()
    S3 = ShearStructure(T3, (0.0, 0.0, 0.0))
    for loop in puncture_loops(T3):
        assert abs(abs(holonomy_of_loop(S3, loop).trace) - 2.0) <= 1e-9


# -- general triangulations from synthesized gluing tables -------------------------

def _random_triangulation(rng, triangles):
    from stretchlab import IdealTriangulation

    sides = list(range(3 * triangles))
    rng.shuffle(sides)
    table = [0] * (3 * triangles)
    for i in range(0, len(sides), 2):
        a, b = sides[i], sides[i + 1]
        table[a], table[b] = b, a
    try:
        T = IdealTriangulation(triangles, tuple(table))
        T.validate()
    except ValueError:
        return None
    return T


def test_random_triangulations_have_parabolic_punctures():
    rng = random.Random(31)
    from stretchlab import completeness_basis, shears_from_coefficients

    found = 0
    while found < 25:
        T = _random_triangulation(rng, rng.choice((2, 4)))
        if T is None:
            continue
        found += 1
        basis = completeness_basis(T)
        coeffs = [rng.uniform(-1.0, 1.0) for _ in basis]
        S = ShearStructure(T, shears_from_coefficients(T, coeffs))
        for loop in puncture_loops(T):
            m = holonomy_of_loop(S, loop)
            assert abs(abs(m.trace) - 2.0) <= 1e-9
