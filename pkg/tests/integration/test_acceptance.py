# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers
"""
Full-size runs of the acceptance scenarios; these take minutes and only
run with ``--runslow``.
"""

import json
import os

import numpy as np
import pytest

from discenvelope.config import setup_config
from discenvelope.discs import AnalyticDisc, CircleQuadrature, poisson_mean
from discenvelope.envelope import SearchConfig, eh_estimate, f_estimate
from discenvelope.expressions import parse_expr
from discenvelope.geometry import (
    Annulus, Ball, CuspRegion, GridSpec, SlitDisc, Union, make_grid
)
from discenvelope.objective import PiecewiseObjective, eval_phi
from discenvelope.perron import (
    RelaxConfig, closure_extremal_compare, initial_grid, psh_envelope,
    relative_extremal, sweep
)
from discenvelope.reports import EXIT_PASS, cmd_suite, run_scenario
from discenvelope.thinness import (
    NONTHIN, THIN_EVIDENCE, ThinnessQuery, nonthin_certificate,
    thinness_oracle
)
from tests.base import ACCEPTANCE

pytestmark = pytest.mark.slow


def _closed_form(r):
    r = np.asarray(r, dtype=float)
    with np.errstate(divide="ignore"):
        return np.maximum(-1.0, -1.0 + 3.0 * np.log(2 * r) / np.log(2))


@pytest.fixture(scope="module")
def ball_in_ball():
    return PiecewiseObjective(Ball([0], 1.0), Ball([0], 0.5),
                              parse_expr("2"), parse_expr("-1"))


@pytest.fixture(scope="module")
def envelope_1d(ball_in_ball):
    return psh_envelope(ball_in_ball, GridSpec.around(ball_in_ball.X, 257),
                        RelaxConfig())


def test_suite_passes(tmpdir):
    summary = cmd_suite(ACCEPTANCE, str(tmpdir))
    details = [(o.scenario, o.detail) for o in summary.outcomes]
    assert summary.exit_code == EXIT_PASS, details
    assert len(summary.outcomes) == 6


#####
# Piecewise example
#####

@pytest.mark.parametrize("x,expected", [(0.5, 2.0), (0.6, 2.0),
                                        (0.75, 2.0), (0, -1.0),
                                        (0.25, -1.0)])
def test_f_values(ball_in_ball, x, expected):
    assert f_estimate(ball_in_ball, [x]).value == expected


def test_phi_on_boundary_of_w(ball_in_ball):
    assert eval_phi(ball_in_ball, [0.5]) == -1.0


#####
# Envelope sandwich
#####

def test_oracle_closed_form(envelope_1d):
    radii = np.linspace(0.0, 0.95, 64)
    values = np.array([envelope_1d.value_at([r]) for r in radii])
    nodes = np.array([abs(envelope_1d.grid.points[
        envelope_1d.grid.nearest([r])[0], 0]) for r in radii])
    assert np.max(np.abs(values - _closed_form(nodes))) <= 0.02


@pytest.mark.parametrize("x", [0, 0.3, 0.75, 0.9])
def test_disc_above_oracle(ball_in_ball, envelope_1d, x):
    value = eh_estimate(ball_in_ball, [x]).value
    assert value >= envelope_1d.value_at([x]) - 0.02
    if x == 0.75:
        assert value <= 1.05


def test_c2_envelope(tmpdir):
    out = str(tmpdir)
    path = os.path.join(ACCEPTANCE, "06_ball_in_ball_c2.json")
    outcome = run_scenario(path, out)
    assert outcome.exit_code == EXIT_PASS, outcome.detail


#####
# Relative extremal functions
#####

def test_relative_extremal_value():
    U, X = Ball([0], 0.5), Ball([0], 1.0)
    env = relative_extremal(U, X, GridSpec.around(X, 257))
    assert env.value_at([0.75]) == pytest.approx(np.log(0.75) / np.log(2),
                                                 abs=0.02)


@pytest.mark.parametrize("U", [
    Ball([0], 0.5),
    Annulus([0], 0.3, 0.5),
    Union([Ball([-0.4], 0.2), Ball([0.4], 0.2)]),
])
def test_closure_compare(U):
    X = Ball([0], 1.0)
    assert closure_extremal_compare(U, X, GridSpec.around(X, 257)) <= 0.02


#####
# Thinness
#####

def test_slit_certificate_and_oracle():
    query = ThinnessQuery([0], 0.1, 0.001,
                          target=SlitDisc(0, 1.0, 0, 0.5))
    cert = nonthin_certificate(query)
    assert cert.success
    assert cert.disc.degree == 1
    assert cert.measure >= 0.999
    assert thinness_oracle(query) == pytest.approx(-1.0, abs=0.02)


def test_cusp_search_fails():
    query = ThinnessQuery([0], 0.1, 0.3, target=CuspRegion(0, 0.5))
    cfg = SearchConfig.from_config(setup_config(), restarts=4,
                                   max_evals=1000)
    assert not nonthin_certificate(query, cfg).success
    assert thinness_oracle(query) >= -0.9


@pytest.mark.parametrize("name,verdict", [("03_slit.json", NONTHIN),
                                          ("04_cusp.json", THIN_EVIDENCE)])
def test_thinness_verdicts(tmpdir, name, verdict):
    out = str(tmpdir)
    outcome = run_scenario(os.path.join(ACCEPTANCE, name), out)
    assert outcome.exit_code == EXIT_PASS, outcome.detail
    scenario = os.listdir(out)[0]
    with open(os.path.join(out, scenario, "thinness.json")) as f:
        assert json.load(f)["verdict"] == verdict


#####
# Property suites
#####

def test_quadrature_doubling(ball_in_ball):
    f = AnalyticDisc([0.3], [0.4, 0.1])
    coarse = poisson_mean(f, ball_in_ball, CircleQuadrature(512))
    fine = poisson_mean(f, ball_in_ball, CircleQuadrature(1024))
    assert abs(coarse - fine) < 1e-3


def test_monotone_sweeps(ball_in_ball):
    X = ball_in_ball.X
    cfg = RelaxConfig()

    def bounded(points):
        inside = np.asarray(X.contains(points), dtype=bool)
        out = np.full(len(points), 2.0)
        out[inside] = ball_in_ball.phi(points[inside])
        return out

    env = initial_grid(make_grid(GridSpec.around(X, 65)), bounded)
    inner = env.grid.interior
    for _ in range(50):
        new, _ = sweep(env, bounded, X, cfg,
                       fill=lambda pts: np.full(len(pts), 2.0))
        assert np.all(new.values[inner] <= env.values[inner] + 1e-12)
        env = new


def test_deterministic_search(ball_in_ball):
    cfg = SearchConfig(degree_schedule=[1, 2, 4], restarts=4, seed=17)
    a = eh_estimate(ball_in_ball, [0.75], cfg)
    b = eh_estimate(ball_in_ball, [0.75], cfg)
    assert a.value == b.value
    bests = [best for _, best, _ in a.per_degree]
    assert all(y <= x for x, y in zip(bests, bests[1:]))
