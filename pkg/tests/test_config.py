# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers

import os

import pytest

from discenvelope.config import (
    DEGREE_SCHEDULE, MU, RADII_STEPS, SANDWICH_TOL, THIN_MARGIN, setup_config
)

from .base import CONFIG


@pytest.fixture
def config():
    return os.path.join(CONFIG + "test-config.ini")


def test_no_config_file_given():
    parsed = setup_config(config_file=None)
    assert sorted(parsed) == ["main", "relax", "search", "thresholds"]
    assert parsed["main"]["log_level"] == "WARNING"
    assert parsed["main"]["jobs"] == 1
    assert parsed["search"]["degree_schedule"] == DEGREE_SCHEDULE
    assert parsed["relax"]["radii_steps"] == RADII_STEPS
    assert parsed["thresholds"]["mu"] == MU
    assert parsed["thresholds"]["sandwich_tol"] == SANDWICH_TOL
    assert parsed["thresholds"]["thin_margin"] == THIN_MARGIN


def test_defaults_are_copies():
    parsed = setup_config()
    parsed["search"]["degree_schedule"].append(99)
    assert 99 not in DEGREE_SCHEDULE
    assert 99 not in setup_config()["search"]["degree_schedule"]


def test_config_file(config):
    parsed = setup_config(config)
    assert parsed["main"]["log_level"] == "INFO"
    assert parsed["main"]["jobs"] == 2
    assert parsed["main"]["color"] == "true"
    assert parsed["search"]["degree_schedule"] == [1, 2, 4]
    assert parsed["search"]["restarts"] == 3
    assert parsed["search"]["max_evals"] == 400
    assert parsed["relax"]["radii_steps"] == [1.0, 2.0]
    assert parsed["relax"]["max_sweeps"] == 5000
    assert parsed["thresholds"]["sandwich_tol"] == 0.05
    assert parsed["thresholds"]["thin_margin"] == 0.2


def test_unknown_keys_ignored(config):
    parsed = setup_config(config)
    assert "unknown_key" not in parsed["thresholds"]


def test_bad_log_level():
    parsed = setup_config(os.path.join(CONFIG + "bad-level.ini"))
    assert parsed["main"]["log_level"] == "WARNING"


def test_no_config_file_found():
    config_file = "/tmp/a-nonexistent-discenvelope-config-file.ini"
    with pytest.raises(IOError) as e:
        setup_config(config_file)

    msg = ("No such file or directory: '{0}'".format(config_file),)
    assert e.value.args == msg
