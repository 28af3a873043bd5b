# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers
import os

import pytest

from discenvelope.errors import LoadScenarioError
from discenvelope._helpers import _get_scenario_object, load_file, load_string

from .base import SCENARIOS


@pytest.fixture(scope="session")
def scenario_file():
    return os.path.join(SCENARIOS + "ball_in_ball_perron.json")


def test_scenario_file_is_none():
    with pytest.raises(LoadScenarioError) as e:
        _get_scenario_object(None)
    msg = ("Scenario file can not be 'None'.",)
    assert e.value.args == msg


def test_scenario_file_object(scenario_file):
    with open(scenario_file) as f:
        assert _get_scenario_object(f) == f


def test_not_valid_scenario_obj():
    invalid_obj = 1234
    with pytest.raises(LoadScenarioError) as e:
        _get_scenario_object(invalid_obj)
    msg = (("Can not load object '{0}': Not a path or "
           "file object".format(invalid_obj)),)
    assert e.value.args == msg


def test_load_file_path(scenario_file):
    data = load_file(scenario_file)
    assert data["name"] == "ball-in-ball-perron"


def test_load_file_bytes_path(scenario_file):
    data = load_file(scenario_file.encode("utf-8"))
    assert data["kind"] == "envelope"


def test_load_missing_path():
    with pytest.raises(LoadScenarioError) as e:
        load_file("/tmp/non-existent-scenario.json")
    assert "No such file or directory" in str(e.value)


def test_load_string():
    data = load_string('{"name": "inline", "kind": "maxprinciple"}')
    assert data == {"name": "inline", "kind": "maxprinciple"}
