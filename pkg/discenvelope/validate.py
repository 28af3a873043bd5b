# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers

import numbers

import numpy as np

from ._decorators import collecterrors
from .envelope import EH, F
from .thinness import VERDICTS

from .errors import *  # NOQA


KINDS = ("envelope", "thinness", "maxprinciple")
ENGINES = ("disc", "perron", "both")
MODES = (EH, F)


#####
# Scenario validators
#####

@collecterrors
def scenario_name(inst, attr, value):
    """Require a scenario name; it names the output directory."""
    if not value or not isinstance(value, str):
        raise ScenarioError("Scenario does not define a name.")
    if "/" in value or value in (".", ".."):
        msg = "Scenario name '{0}' is not a valid directory name.".format(
            value)
        raise ScenarioError(msg)


@collecterrors
def scenario_kind(inst, attr, value):
    if value not in KINDS:
        msg = "'{0}' is not a scenario kind; expected one of {1}.".format(
            value, ", ".join(KINDS))
        raise ScenarioError(msg)


@collecterrors
def scenario_dimension(inst, attr, value):
    """Only C^1 and C^2 are supported."""
    if value not in (1, 2):
        msg = "Scenario dimension must be 1 or 2, not '{0}'.".format(value)
        raise ScenarioError(msg)


@collecterrors
def scenario_seed(inst, attr, value):
    if not isinstance(value, numbers.Integral) or isinstance(value, bool) \
            or not 0 <= value < 2 ** 64:
        msg = "Seed must be an unsigned 64-bit integer, not '{0}'.".format(
            value)
        raise ScenarioError(msg)


@collecterrors
def scenario_domains(inst, attr, value):
    """
    Envelope scenarios need X and W.
    Every domain lives in the scenario dimension.
    """
    if value is None:
        return
    required = {"envelope": ("X", "W")}
    for name in required.get(inst.kind, ()):
        if name not in value:
            msg = "{0} scenarios must define domain '{1}'.".format(
                inst.kind, name)
            raise InvalidDomainSpecError(msg)
    for name, domain in value.items():
        if domain.dimension != inst.dimension:
            msg = "Domain '{0}' lives in C^{1}, scenario is in C^{2}.".format(
                name, domain.dimension, inst.dimension)
            raise InvalidDomainSpecError(msg)


@collecterrors
def scenario_objective(inst, attr, value):
    if inst.kind == "envelope" and "objective" not in inst.raw:
        msg = "Envelope scenarios must define an objective."
        raise InvalidObjectiveSpecError(msg)


@collecterrors
def scenario_engine(inst, attr, value):
    if value not in ENGINES:
        msg = "'{0}' is not an engine; expected one of {1}.".format(
            value, ", ".join(ENGINES))
        raise InvalidEngineSpecError(msg, "engine")


@collecterrors
def scenario_mode(inst, attr, value):
    if value not in MODES:
        msg = "'{0}' is not a search mode; expected EH or F.".format(value)
        raise InvalidEngineSpecError(msg, "mode")


@collecterrors
def scenario_probes(inst, attr, value):
    """Envelope probes must be points of X."""
    if inst.kind != "envelope" or value is None:
        return
    if not len(value):
        raise ScenarioError("Envelope scenarios need at least one probe.")
    X = (inst.domains or {}).get("X")
    for p in value:
        if len(p) != inst.dimension:
            msg = "Probe {0} is not a point of C^{1}.".format(
                [str(c) for c in p], inst.dimension)
            raise ScenarioError(msg)
        if X is not None and not X.contains(p):
            msg = "Probe {0} lies outside X.".format([str(c) for c in p])
            raise ScenarioError(msg)


@collecterrors
def scenario_thinness(inst, attr, value):
    if inst.kind == "thinness" and "thinness" not in inst.raw:
        msg = "Thinness scenarios must define a 'thinness' query."
        raise ScenarioError(msg)


@collecterrors
def scenario_expected(inst, attr, value):
    """
    Thinness scenarios carry the expected verdict; envelope scenarios
    may carry expected probe values.
    """
    value = value or {}
    if inst.kind == "thinness":
        verdict = value.get("verdict")
        if verdict not in VERDICTS:
            msg = ("Thinness scenarios must expect a verdict in {0}, "
                   "not '{1}'.".format(", ".join(VERDICTS), verdict))
            raise ScenarioError(msg)
    values = value.get("values")
    if values is not None and inst.probes is not None:
        if len(values) != len(inst.probes):
            msg = "Expected {0} values, one per probe, got {1}.".format(
                len(inst.probes), len(values))
            raise ScenarioError(msg)
        try:
            finite = np.all(np.isfinite(np.asarray(values, dtype=float)))
        except (TypeError, ValueError):
            finite = False
        if not finite:
            raise ScenarioError("Expected values must be finite numbers.")
