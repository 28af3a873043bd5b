# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers

import os

from .errors import LoadScenarioError
from .loader import ScenarioLoader


def load_file(scenario_file):
    if isinstance(scenario_file, (str, bytes)):
        path = os.path.abspath(os.fsdecode(scenario_file))
        if not os.path.isfile(path):
            msg = "No such file or directory: '{0}'".format(path)
            raise LoadScenarioError(msg)
        with open(path, "r", encoding="UTF-8") as scenario:
            return ScenarioLoader(path).load(scenario)
    return ScenarioLoader().load(_get_scenario_object(scenario_file))


def load_string(scenario_str):
    return ScenarioLoader().load(scenario_str)


def _get_scenario_object(scenario_file):
    """
    Returns a file object.
    """
    if scenario_file is None:
        msg = "Scenario file can not be 'None'."
        raise LoadScenarioError(msg)

    if hasattr(scenario_file, "read"):
        return scenario_file
    msg = ("Can not load object '{0}': Not a path or "
           "file object".format(scenario_file))
    raise LoadScenarioError(msg)
