# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers

from discenvelope.config import setup_config
from discenvelope.reports import cmd_envelope
from discenvelope.scenario import parse_scenario

from discenvelope._helpers import load_file, load_string


__author__ = "The discenvelope developers"
__version__ = "0.1.0"
__license__ = "Apache 2.0"

__email__ = "discenvelope@users.noreply.github.com"
__uri__ = "https://discenvelope.readthedocs.org"
__description__ = "Disc functionals, Perron envelopes and thinness certificates in C^n"  # noqa: E501


def load(scenario_file):
    """
    Module helper function to load a scenario file using \
    :py:class:`.loader.ScenarioLoader`.

    :param str scenario_file: String path to a scenario file
    :return: loaded scenario data
    :rtype: dict
    :raises LoadScenarioError: If the file can not be read or parsed
    """
    return load_file(scenario_file)


def loads(scenario_string):
    """
    Module helper function to load a scenario from a JSON or YAML string.

    :param str scenario_string: scenario text
    :return: loaded scenario data
    :rtype: dict
    :raises LoadScenarioError: If the text can not be parsed
    """
    return load_string(scenario_string)


def parse(scenario, config_file=None, seed=None):
    """
    Module helper function to parse a scenario. First loads the file
    with :py:class:`.loader.ScenarioLoader` then parses it with
    :py:func:`.scenario.parse_scenario`.

    :param scenario: string path to the scenario file, or a file object
    :param str config_file: string path to an ``.ini`` config, if any
    :param int seed: overrides the scenario seed
    :return: parsed scenario
    :rtype: Scenario
    :raises LoadScenarioError: If the file can not be read or parsed
    :raises InvalidScenarioError: listing every schema problem found
    """
    loaded = load(scenario)
    config = setup_config(config_file)
    return parse_scenario(loaded, config, seed)


def envelope(scenario, out, engine=None, config_file=None, seed=None):
    """
    Module helper function to run an envelope scenario and write its
    reports under ``out``.

    :return: :py:class:`.reports.Outcome`
    """
    return cmd_envelope(parse(scenario, config_file, seed), out, engine)
