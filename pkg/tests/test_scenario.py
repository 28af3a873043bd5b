# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers

import os

import numpy as np
import pytest

from discenvelope._helpers import load_file
from discenvelope.config import setup_config
from discenvelope.envelope import EH, F
from discenvelope.geometry import Ball, SlitDisc
from discenvelope.scenario import parse_scenario, probe_array

from .base import CONFIG, SCENARIOS


def _parse(name, config=None, seed=None):
    loaded = load_file(os.path.join(SCENARIOS + name))
    return parse_scenario(loaded, config or setup_config(), seed)


@pytest.fixture(scope="session")
def perron():
    return _parse("ball_in_ball_perron.json")


def test_envelope_scenario(perron):
    assert perron.name == "ball-in-ball-perron"
    assert perron.kind == "envelope"
    assert perron.dimension == 1
    assert perron.engine == "perron"
    assert perron.mode == EH
    assert isinstance(perron.domains["X"], Ball)
    assert perron.objective.X is perron.domains["X"]
    assert perron.errors == []


def test_engine_sections(perron):
    assert perron.relax.radii_steps == (1.0, 2.0)
    assert perron.relax.max_sweeps == 2000
    assert perron.search.seed == 0
    assert perron.grid.resolution == (33, 33)
    assert perron.resolution == 33


def test_probes(perron):
    arr = probe_array(perron)
    assert arr.shape == (2, 1)
    assert np.allclose(arr[:, 0], [0, 0.25])


def test_expected_values(perron):
    assert perron.expected == {"values": [-1.0, -1.0], "tol": 0.02}


def test_seed_override():
    scenario = _parse("psh_self.json", seed=11)
    assert scenario.seed == 11
    assert scenario.search.seed == 11
    assert _parse("psh_self.json").search.seed == 3


def test_scenario_over_config():
    config = setup_config(os.path.join(CONFIG + "test-config.ini"))
    scenario = _parse("psh_self.json", config)
    # scenario search block wins, config fills the rest
    assert scenario.search.restarts == 1
    assert scenario.search.degree_schedule == [1]
    assert scenario.relax.max_sweeps == 500
    assert scenario.sandwich_tol == 0.05
    assert scenario.thin_margin == 0.2


def test_threshold_override():
    loaded = load_file(os.path.join(SCENARIOS + "psh_self.json"))
    loaded["thresholds"] = {"sandwich_tol": "0.1"}
    config = setup_config()
    scenario = parse_scenario(loaded, config)
    assert scenario.sandwich_tol == 0.1
    assert config["thresholds"]["sandwich_tol"] == 0.02


def test_boundary_band_reaches_objective():
    narrow = _parse("ball_in_ball_perron.json")
    assert narrow.objective.band == 1e-12
    assert narrow.objective.region([0.55]) == "outer"

    loaded = load_file(os.path.join(SCENARIOS + "ball_in_ball_perron.json"))
    loaded["thresholds"] = {"boundary_band": "0.1"}
    wide = parse_scenario(loaded, setup_config())
    assert wide.objective.band == 0.1
    assert wide.objective.region([0.55]) == "boundary"
    assert wide.objective.region([0.65]) == "outer"


def test_boundary_band_from_config(tmpdir):
    ini = tmpdir.join("band.ini")
    ini.write("[thresholds]\nboundary_band = 0.2\n")
    scenario = _parse("ball_in_ball_perron.json",
                      setup_config(str(ini)))
    assert scenario.objective.band == 0.2
    assert scenario.objective.region([0.65]) == "boundary"


def test_boundary_values_parsed():
    scenario = _parse("psh_self.json")
    assert scenario.objective.boundary_values is not None
    assert scenario.engine == "both"


def test_defaults_for_optional_keys():
    scenario = _parse("include_domains.yaml")
    assert scenario.mode == F
    assert scenario.seed == 0
    assert scenario.grid.resolution == (64, 64)


def test_ref_domains():
    scenario = _parse("ref_domains.json")
    assert scenario.domains["W"].radius == 0.5


def test_thinness_scenario():
    scenario = _parse("slit.json")
    assert scenario.kind == "thinness"
    assert isinstance(scenario.thinness.target, SlitDisc)
    assert scenario.thinness.target.end == 0.5
    assert scenario.expected == {"verdict": "NonThin"}
    assert scenario.grid is None
    assert scenario.resolution == 32


def test_cloud_scenario():
    scenario = _parse("cloud.json")
    assert scenario.thinness.is_cloud
    assert len(scenario.thinness.cloud) == 9
    assert scenario.thinness.rho_schedule == (0.1,)


def test_maxprinciple_scenario():
    scenario = _parse("maxprinciple_small.json")
    spec = scenario.maxprinciple
    assert len(spec.catalog) == 2
    assert [s.name for s in spec.certify] == ["quartic"]
    assert spec.catalog[0][1] is scenario.domains["U"]
    assert spec.X is scenario.domains["X"]
    assert scenario.resolution == 129


def test_default_catalog():
    loaded = load_file(os.path.join(SCENARIOS + "maxprinciple_small.json"))
    loaded["maxprinciple"] = {}
    scenario = parse_scenario(loaded, setup_config())
    assert len(scenario.maxprinciple.catalog) == 7
    assert scenario.maxprinciple.certify == []


def test_c2_scenario():
    scenario = _parse("polydisc_c2.json")
    assert scenario.dimension == 2
    assert scenario.grid.resolution == (5, 5, 5, 5)
    assert np.allclose(probe_array(scenario)[1], [0.2, 0.1j])
