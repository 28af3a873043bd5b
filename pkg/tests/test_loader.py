# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers

import os

import pytest

from discenvelope import loader
from discenvelope.errors import LoadScenarioError

from .base import INVALID, SCENARIOS


def _load(path):
    with open(path) as f:
        return loader.ScenarioLoader(path).load(f)


def test_load_json():
    data = _load(os.path.join(SCENARIOS + "psh_self.json"))
    assert data["name"] == "psh-self"
    assert list(data)[:3] == ["name", "kind", "dimension"]
    assert data["domains"]["X"]["label"] == "unit disc"


def test_json_refs_resolved():
    data = _load(os.path.join(SCENARIOS + "ref_domains.json"))
    X = data["domains"]["X"]
    W = data["domains"]["W"]
    assert dict(X) == {"kind": "ball", "center": [0], "radius": 1.0}
    assert W["radius"] == 0.5


def test_yaml_include():
    data = _load(os.path.join(SCENARIOS + "include_domains.yaml"))
    assert data["name"] == "yaml-include"
    assert data["domains"]["X"]["radius"] == 1.0
    assert data["domains"]["W"]["radius"] == 0.5
    assert list(data["domains"]) == ["X", "W"]


def test_yaml_from_string():
    text = "name: inline\nkind: envelope\nprobes: [0, 0.25]\n"
    data = loader.ScenarioLoader().load(text)
    assert data["probes"] == [0, 0.25]


@pytest.mark.parametrize("name", ["malformed.json", "malformed.yaml"])
def test_malformed(name):
    with pytest.raises(LoadScenarioError) as e:
        _load(os.path.join(INVALID + name))
    assert "Error parsing scenario" in str(e.value)


def test_not_a_mapping():
    with pytest.raises(LoadScenarioError) as e:
        loader.ScenarioLoader().load("- 1\n- 2\n")
    assert "must be a mapping" in str(e.value)
