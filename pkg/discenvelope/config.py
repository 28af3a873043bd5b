# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers

import configparser
import os


#: Strict-containment gap for "f(T) in W" style conditions.
MU = 1e-6
#: Signed-margin band that counts as "on the boundary of W".
BOUNDARY_BAND = 1e-12
SANDWICH_TOL = 0.02
THIN_MARGIN = 0.1

DEGREE_SCHEDULE = [1, 2, 4, 8, 16, 24]
RESTARTS = 20
MAX_EVALS = 5000
PENALTY_WEIGHT = 1e3
QUADRATURE = 1024
PROBE = 1024
SEARCH_TOLERANCE = 1e-7

RADII_STEPS = [1, 2, 4]
DIRECTIONS = 32
ANGULAR_NODES = 16
RELAX_TOLERANCE = 1e-6
MAX_SWEEPS = 100000

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]

SECTIONS = {
    "main": {
        "log_level": str,
        "jobs": int,
        "color": str,
    },
    "search": {
        "degree_schedule": "intlist",
        "restarts": int,
        "max_evals": int,
        "penalty_weight": float,
        "quadrature": int,
        "tolerance": float,
        "probe": int,
    },
    "relax": {
        "radii_steps": "floatlist",
        "directions": int,
        "angular_nodes": int,
        "tolerance": float,
        "max_sweeps": int,
    },
    "thresholds": {
        "mu": float,
        "boundary_band": float,
        "sandwich_tol": float,
        "thin_margin": float,
    },
}


def _convert(kind, raw):
    raw = raw.strip()
    if kind == "intlist":
        return [int(c.strip()) for c in raw.split(",") if c.strip()]
    if kind == "floatlist":
        return [float(c.strip()) for c in raw.split(",") if c.strip()]
    return kind(raw)


def add_custom_config(user_config, engine_config):
    """Add user-defined config"""
    ec = engine_config

    for section, keys in SECTIONS.items():
        if not user_config.has_section(section):
            continue
        for name, value in user_config.items(section):
            if name not in keys:
                continue
            ec[section][name] = _convert(keys[name], value)

    level = ec["main"]["log_level"].upper()
    if level not in LOG_LEVELS:
        level = "WARNING"
    ec["main"]["log_level"] = level
    return ec


def setup_config(config_file=None):
    """
    Setup engine configuration.

    :param str config_file: ``.ini`` file to be parsed (optional)
    :returns: nested ``dict`` keyed by section
    """
    engine_config = {
        "main": {
            "log_level": "WARNING",
            "jobs": 1,
            "color": "",
        },
        "search": {
            "degree_schedule": list(DEGREE_SCHEDULE),
            "restarts": RESTARTS,
            "max_evals": MAX_EVALS,
            "penalty_weight": PENALTY_WEIGHT,
            "quadrature": QUADRATURE,
            "tolerance": SEARCH_TOLERANCE,
            "probe": PROBE,
        },
        "relax": {
            "radii_steps": list(RADII_STEPS),
            "directions": DIRECTIONS,
            "angular_nodes": ANGULAR_NODES,
            "tolerance": RELAX_TOLERANCE,
            "max_sweeps": MAX_SWEEPS,
        },
        "thresholds": {
            "mu": MU,
            "boundary_band": BOUNDARY_BAND,
            "sandwich_tol": SANDWICH_TOL,
            "thin_margin": THIN_MARGIN,
        },
    }

    if config_file:
        if not os.path.isfile(config_file):
            msg = "No such file or directory: '{0}'".format(config_file)
            raise IOError(msg)
        user_config = configparser.RawConfigParser()
        user_config.read(config_file)
        engine_config = add_custom_config(user_config, engine_config)

    return engine_config
