# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers

import numpy as np
import pytest

from discenvelope.errors import ClosureError, ObjectiveError
from discenvelope.expressions import parse_expr
from discenvelope.geometry import Ball
from discenvelope.objective import (
    BOUNDARY, INNER, OUTER, PiecewiseObjective, eval_phi, regularize,
    usc_star
)


def _objective(phi1, phi2, boundary_values=None, X=None, W=None):
    X = X or Ball([0], 1.0)
    W = W or Ball([0], 0.5)
    bv = parse_expr(boundary_values) if boundary_values else None
    return PiecewiseObjective(X, W, parse_expr(phi1), parse_expr(phi2), bv)


@pytest.fixture(scope="session")
def ball_in_ball():
    return _objective("2", "-1")


#####
# Upper regularization
#####

def test_star_of_constant():
    W = Ball([0], 0.5)
    assert usc_star(parse_expr("2"), W, [0.5]) == 2.0


def test_star_of_linear():
    W = Ball([0], 0.5)
    assert usc_star(parse_expr("re(z1)"), W, [0.5]) == pytest.approx(
        0.5, abs=1e-3)


def test_star_of_log_pole_is_unstable():
    W = Ball([0], 0.5)
    e = parse_expr("log((re(z1)-0.5)^2+im(z1)^2)/2")
    star = regularize(e, W, [0.5])
    assert star.unstable
    assert star.monotone
    assert len(star.levels) == 8
    assert star.value == pytest.approx(np.log(1e-4), abs=0.5)


def test_star_outside_closure():
    W = Ball([0], 0.5)
    with pytest.raises(ClosureError):
        usc_star(parse_expr("re(z1)"), W, [0.9])


def test_star_schedule_checks():
    W = Ball([0], 0.5)
    e = parse_expr("re(z1)")
    with pytest.raises(ObjectiveError):
        regularize(e, W, [0.5], radii=(0.1, 0.01))
    with pytest.raises(ObjectiveError):
        regularize(e, W, [0.5], radii=np.geomspace(1e-4, 0.1, 8))
    with pytest.raises(ObjectiveError):
        regularize(e, W, [0.5], samples=10)


#####
# Piecewise objective
#####

@pytest.mark.parametrize("p,expected", [
    (0.75, 2.0), (0.25, -1.0), (0.5, -1.0), (0.5j, -1.0), (0, -1.0),
])
def test_ball_in_ball(ball_in_ball, p, expected):
    assert eval_phi(ball_in_ball, [p]) == expected


def test_regions(ball_in_ball):
    assert ball_in_ball.region([0.25]) == INNER
    assert ball_in_ball.region([0.75]) == OUTER
    assert ball_in_ball.region([0.5]) == BOUNDARY
    regions = ball_in_ball.region([[0.25], [0.75], [-0.5]])
    assert list(regions) == [INNER, OUTER, BOUNDARY]


def test_dispatch_partition(ball_in_ball):
    rng = np.random.default_rng(3)
    real = rng.uniform(-0.7, 0.7, (10000, 2))
    pts = (real[:, 0] + 1j * real[:, 1])[:, None]
    regions = ball_in_ball.region(pts)
    assert set(regions) <= set([INNER, OUTER, BOUNDARY])
    assert np.sum(regions == INNER) > 0
    assert np.sum(regions == OUTER) > 0


def test_continuous_glue():
    obj = _objective("abs2(z1)", "abs2(z1)")
    assert eval_phi(obj, [0.5]) == pytest.approx(0.25, abs=1e-3)
    pts = np.array([[0.1], [0.3j], [0.7 - 0.2j]])
    assert np.allclose(eval_phi(obj, pts), np.abs(pts[:, 0]) ** 2)


def test_boundary_min_of_stars():
    obj = _objective("re(z1)", "2")
    assert eval_phi(obj, [0.5]) == pytest.approx(0.5, abs=1e-3)


def test_boundary_values_closed_form():
    obj = _objective("2", "-1", boundary_values="0.25")
    assert eval_phi(obj, [0.5]) == 0.25
    assert eval_phi(obj, [-0.5j]) == 0.25
    assert eval_phi(obj, [0.75]) == 2.0


def test_minus_infinity_allowed():
    obj = _objective("log(abs(z1))", "log(abs(z1))")
    assert eval_phi(obj, [0]) == -np.inf


def test_plus_infinity_rejected():
    obj = _objective("inf", "-1")
    with pytest.raises(ObjectiveError):
        eval_phi(obj, [0.75])


def test_outside_x(ball_in_ball):
    with pytest.raises(ObjectiveError) as e:
        eval_phi(ball_in_ball, [1.5])
    assert e.value.args == ("Objective evaluated outside X",)


def test_w_must_sit_in_x():
    with pytest.raises(ObjectiveError) as e:
        _objective("2", "-1", W=Ball([0.6], 0.5))
    assert "W is not contained in X" in str(e.value)


def test_outer_region_must_exist():
    with pytest.raises(ObjectiveError):
        _objective("2", "-1", W=Ball([0], 1.0))


def test_variable_beyond_dimension():
    with pytest.raises(ObjectiveError) as e:
        _objective("re(z2)", "-1")
    assert "z2" in str(e.value)


def test_dimension_mismatch():
    with pytest.raises(ObjectiveError):
        _objective("2", "-1", W=Ball([0, 0], 0.5))


def test_c2_objective():
    obj = _objective("2", "-1", X=Ball([0, 0], 1.0), W=Ball([0, 0], 0.5))
    assert obj.dimension == 2
    assert eval_phi(obj, [0.75, 0]) == 2.0
    assert eval_phi(obj, [0.1, 0.2j]) == -1.0
