from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dhtoric import logconcave as lc
from dhtoric import polytope as pt
from dhtoric import pushforward as pf
from dhtoric.exact import Interval, PiecewisePoly, UniPoly
from strategies import lattice_polytopes, piecewise, positive_rationals, projections, rationals

pw = PiecewisePoly.from_intervals
TRI = pw([(0, 1, UniPoly((0, 1))), (1, 2, UniPoly((2, -1)))])
BUMP = pw([(-1, 1, UniPoly((1, 0, 1)))])
Q = F(1, 4)


def test_line_examples():
    assert lc.logconcave_on_line(TRI).is_log_concave
    v = lc.logconcave_on_line(BUMP)
    assert v.status is lc.Status.NOT_LOG_CONCAVE
    assert v.witness == lc.Witness(F(0), lc.Reason.PIECE_FAILURE)
    const = lc.logconcave_on_line(pw([(0, 1, UniPoly((1,)))]))
    assert const.status is lc.Status.LOG_CONCAVE


def test_strictness():
    assert lc.logconcave_on_line(TRI).status is lc.Status.STRICTLY_LOG_CONCAVE
    plateau = pw([(0, 1, UniPoly((0, 1))), (1, 2, UniPoly((1,))), (2, 3, UniPoly((3, -1)))])
    assert lc.logconcave_on_line(plateau).status is lc.Status.LOG_CONCAVE


def test_failure_reasons():
    step = pw([(0, 1, UniPoly((1,))), (1, 2, UniPoly((2,)))])
    assert lc.logconcave_on_line(step).witness == lc.Witness(F(1), lc.Reason.WALL_FAILURE)
    kink = pw([(0, 1, UniPoly((2, -1))), (1, 2, UniPoly((0, 1)))])
    assert lc.logconcave_on_line(kink).witness == lc.Witness(F(1), lc.Reason.WALL_FAILURE)
    gap = pw([(0, 1, UniPoly((1,))), (2, 3, UniPoly((1,)))])
    assert lc.logconcave_on_line(gap).witness.reason is lc.Reason.SUPPORT_GAP
    pinch = pw([(-1, 1, UniPoly((0, 0, 1)))])
    w = lc.logconcave_on_line(pinch).witness
    assert w.reason is lc.Reason.SUPPORT_GAP and abs(w.location) < F(1, 10**5)


def test_reports_leftmost_failure():
    f = pw([(0, 1, UniPoly((1,))), (1, 2, UniPoly((2,))), (2, 3, UniPoly((3,)))])
    assert lc.logconcave_on_line(f).witness.location == 1


def test_negative_density_is_an_error():
    with pytest.raises(lc.NegativeDensityError) as e:
        lc.logconcave_on_line(pw([(0, 2, UniPoly((1, -1)))]))
    assert e.value.location > 1


def test_graham_examples():
    assert lc.graham_wall_check(TRI, 1)
    up = pw([(0, 1, UniPoly((2, -1))), (1, 2, UniPoly((0, 1)))])
    assert not lc.graham_wall_check(up, 1)
    cube = pf.dh_compute(pf.ToricModel.rank_one(pt.cube(3), (1, 1, 1)))
    assert lc.graham_wall_check(cube, 1)
    with pytest.raises(lc.NotAWallError):
        lc.graham_wall_check(TRI, F(1, 2))


# -- circle ---------------------------------------------------------------------------


def circle(spec):
    return lc.CircleDensity(pw(spec))


CONST = circle([(0, 1, UniPoly((3,)))])
HALF = circle([(0, F(1, 2), UniPoly((1,)))])
WAVE = circle([(0, F(1, 2), UniPoly((1, 1))), (F(1, 2), 1, UniPoly((2, -1)))])
QUARTER = circle([(0, Q, UniPoly((0, 1))), (Q, 2 * Q, UniPoly((2 * Q, -1)))])


def test_circle_classification_examples():
    assert lc.circle_classify(CONST).kind is lc.CircleKind.CONSTANT
    assert lc.circle_classify(HALF).kind is lc.CircleKind.PROPER_SUPPORT
    c = lc.circle_classify(WAVE)
    assert c.kind is lc.CircleKind.FULL_SUPPORT_NON_CONSTANT
    assert c.chart_failure == lc.Witness(F(0), lc.Reason.WALL_FAILURE)
    assert c.fails_on_every_chart


def test_circle_evaluation_and_walls():
    assert WAVE(F(5, 4)) == WAVE(F(1, 4)) == F(5, 4)
    assert WAVE(-F(1, 4)) == F(5, 4)
    assert WAVE.walls() == [0, F(1, 2)]
    assert CONST.walls() == []
    assert WAVE.jump_at(0) == UniPoly((0, 2))


def test_circle_rejects_bad_support():
    with pytest.raises(ValueError):
        circle([(0, 2, UniPoly((1,)))])
    with pytest.raises(ValueError):
        lc.CircleDensity(pw([(0, 1, UniPoly((1,)))]), F(2))


def test_rotation():
    r = WAVE.rotate(F(1, 3))
    for i in range(24):
        x = F(i, 24)
        assert r(x) == WAVE(x - F(1, 3))
    assert r.density.integrate() == WAVE.density.integrate()


def test_hamiltonian_examples():
    wall = lc.CriticalLevelData(Q, (pf.FixedComponent(Q, (-1, 1), 2),))
    assert lc.hamiltonian_decision(HALF, [wall]).decision is lc.Decision.HAMILTONIAN
    assert lc.hamiltonian_decision(CONST).decision is lc.Decision.NON_HAMILTONIAN_CANDIDATE
    v = lc.hamiltonian_decision(QUARTER, [wall])
    assert v.decision is lc.Decision.HAMILTONIAN
    # the wall itself: strictly negative derivative jump equal to the GLS prediction
    left, right = QUARTER.density.one_sided_derivatives(Q, 1)
    assert right - left == -2 < 0
    assert QUARTER.jump_at(Q) == pf.gls_jump(wall.components, Q) == UniPoly((0, -2))


def test_inconsistent_criticals():
    smooth = lc.CriticalLevelData(F(1, 3), (pf.FixedComponent(F(1, 3), (-1, 1)),))
    v = lc.hamiltonian_decision(WAVE, [smooth])
    assert v.decision is lc.Decision.INCONSISTENT and "1/3" in v.report
    wrong = lc.CriticalLevelData(F(1, 2), (pf.FixedComponent(F(1, 2), (-1, 1), 1),))
    v = lc.hamiltonian_decision(WAVE, [wrong])
    assert v.decision is lc.Decision.INCONSISTENT and "1/2" in v.report
    assert lc.hamiltonian_decision(CONST, [smooth]).decision is lc.Decision.INCONSISTENT


def test_critical_record_levels_must_agree():
    with pytest.raises(ValueError):
        lc.CriticalLevelData(Q, (pf.FixedComponent(F(1, 3), (1, 1)),))
    rec = lc.CriticalLevelData(F(5, 4), (pf.FixedComponent(F(1, 4), (1, 1)),))
    assert rec.level == Q


# -- properties ---------------------------------------------------------------------------


@settings(max_examples=40)
@given(lattice_polytopes(2), projections(2))
def test_prekopa_on_polygons(p, w):
    assert lc.logconcave_on_line(pf.dh_compute(pf.ToricModel.rank_one(p, w))).is_log_concave


@settings(max_examples=25)
@given(lattice_polytopes(3, span=3), projections(3))
def test_prekopa_on_polytopes(p, w):
    assert lc.logconcave_on_line(pf.dh_compute(pf.ToricModel.rank_one(p, w))).is_log_concave


@settings(max_examples=40)
@given(lattice_polytopes(2), projections(2), rationals, positive_rationals, rationals, positive_rationals)
def test_measure_inequality_at_one_half(p, w, a, la, b, lb):
    f = pf.dh_compute(pf.ToricModel.rank_one(p, w)).density
    mass = lambda lo, hi: f.integrate(Interval(lo, hi))  # noqa: E731
    pa, pb = mass(a, a + la), mass(b, b + lb)
    pm = mass((a + b) / 2, (a + la + b + lb) / 2)
    assert pm * pm >= pa * pb


@given(piecewise(max_degree=2), positive_rationals, rationals)
def test_verdict_invariant_under_affine_reparam(f, alpha, beta):
    assume(not f.is_zero)
    try:
        v = lc.logconcave_on_line(f)
    except lc.NegativeDensityError:
        with pytest.raises(lc.NegativeDensityError):
            lc.logconcave_on_line(f.affine_reparam(alpha, beta))
        return
    assert lc.logconcave_on_line(f.affine_reparam(alpha, beta)).status is v.status


@st.composite
def circle_densities(draw):
    k = draw(st.integers(1, 4))
    cuts = sorted(set(draw(st.lists(st.integers(1, 11), min_size=k - 1, max_size=k - 1))))
    bps = [F(0)] + [F(c, 12) for c in cuts] + [F(1)]
    pieces = [UniPoly((draw(st.integers(0, 5)), draw(st.integers(-3, 3)))) for _ in bps[1:]]
    spec = [(a, b, p) for a, b, p in zip(bps, bps[1:], pieces)]
    f = pw(spec)
    try:
        lc.check_nonnegative(f)
    except lc.NegativeDensityError:
        return lc.CircleDensity(pw([(a, b, UniPoly((1,))) for a, b, _ in spec]))
    return lc.CircleDensity(f)


@given(circle_densities(), st.integers(0, 23))
def test_classification_rotation_invariant(f, r):
    assert lc.circle_classify(f.rotate(F(r, 24))).kind is lc.circle_classify(f).kind


@given(circle_densities(), st.integers(0, 5))
def test_constant_never_hamiltonian(f, c):
    const = lc.CircleDensity(pw([(0, 1, UniPoly((c + 1,)))]))
    assert lc.hamiltonian_decision(const).decision is not lc.Decision.HAMILTONIAN
    cls = lc.circle_classify(f)
    if cls.kind is lc.CircleKind.FULL_SUPPORT_NON_CONSTANT:
        assert cls.fails_on_every_chart
