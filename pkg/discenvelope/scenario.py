# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers
"""
Scenario files: one run of an engine with its domains, objective,
configuration, probe points and expected outcome.
"""

import copy
import numbers

import attr
import numpy as np

from .config import SECTIONS
from .envelope import EH, SearchConfig
from .errors import (
    BaseDiscError, InvalidDomainSpecError, InvalidEngineSpecError,
    InvalidObjectiveSpecError, InvalidScenarioError, ScenarioError
)
from .expressions import parse_expr
from .geometry import Ball, GridSpec, domain_from_dict
from .maxprinciple import PSH_LIBRARY, PshSample, default_catalog
from .objective import PiecewiseObjective
from .perron import RelaxConfig
from .thinness import ThinnessQuery
from .utils import _get, parse_point
from .validate import *  # NOQA


__all__ = ["Scenario", "MaxPrincipleSpec", "parse_scenario"]

#: Grid resolution per kind when the scenario does not set one.
DEFAULT_RESOLUTION = {"envelope": 64, "thinness": 64, "maxprinciple": 257}
#: Exceptions that mean "the scenario data is wrong", not "the engine broke".
_DATA_ERRORS = (
    AttributeError, IndexError, KeyError, TypeError, ValueError, BaseDiscError
)


@attr.s(frozen=True)
class MaxPrincipleSpec(object):
    """
    :param catalog: list of ``(PshSample, Domain)`` pairs
    :param X: ambient domain the sets must sit compactly inside
    :param certify: custom samples whose sub-mean property is checked
        before the comparison
    """
    catalog    = attr.ib()
    X          = attr.ib()
    boundary_k = attr.ib(default=1024, converter=int)
    tol        = attr.ib(default=0.02, converter=float)
    certify    = attr.ib(factory=list)


@attr.s
class Scenario(object):
    """
    Parsed scenario.

    :param dict raw: loaded scenario data
    :param str name: scenario name, also the output directory name
    :param str kind: ``envelope``, ``thinness`` or ``maxprinciple``
    :param int dimension: n, the scenario lives in C^n
    :param int seed: fixes every random draw of the run
    :param dict domains: named :py:class:`.geometry.Domain` objects
    :param objective: :py:class:`.objective.PiecewiseObjective` or ``None``
    :param str engine: ``disc``, ``perron`` or ``both``
    :param str mode: ``EH`` (all discs) or ``F`` (discs in B1 or B2)
    :param search: :py:class:`.envelope.SearchConfig`
    :param relax: :py:class:`.perron.RelaxConfig`
    :param grid: :py:class:`.geometry.GridSpec` around X, or ``None``
    :param int resolution: nodes per real axis
    :param list probes: points of C^n
    :param thinness: :py:class:`.thinness.ThinnessQuery` or ``None``
    :param maxprinciple: :py:class:`MaxPrincipleSpec` or ``None``
    :param dict expected: expected outcome (``verdict`` or ``values``)
    :param dict config: engine config with scenario overrides applied
    """
    raw          = attr.ib(repr=False)
    name         = attr.ib(validator=scenario_name)
    kind         = attr.ib(validator=scenario_kind)
    dimension    = attr.ib(validator=scenario_dimension)
    seed         = attr.ib(validator=scenario_seed)
    domains      = attr.ib(repr=False, validator=scenario_domains)
    objective    = attr.ib(repr=False, validator=scenario_objective)
    engine       = attr.ib(validator=scenario_engine)
    mode         = attr.ib(validator=scenario_mode)
    search       = attr.ib(repr=False)
    relax        = attr.ib(repr=False)
    grid         = attr.ib(repr=False)
    resolution   = attr.ib(repr=False)
    probes       = attr.ib(repr=False, validator=scenario_probes)
    thinness     = attr.ib(repr=False, validator=scenario_thinness)
    maxprinciple = attr.ib(repr=False)
    expected     = attr.ib(repr=False, validator=scenario_expected)
    config       = attr.ib(repr=False)
    errors       = attr.ib(repr=False)

    @property
    def sandwich_tol(self):
        return self.config["thresholds"]["sandwich_tol"]

    @property
    def thin_margin(self):
        return self.config["thresholds"]["thin_margin"]


def _section(raw, key, errors):
    data = _get(raw, key, {})
    if data is None:
        return {}
    if not isinstance(data, dict):
        msg = "'{0}' must be a mapping.".format(key)
        errors.append(InvalidEngineSpecError(msg, key))
        return {}
    return data


def _merge_config(raw, config, errors):
    """A scenario ``thresholds`` block overrides the config thresholds."""
    merged = copy.deepcopy(config)
    known = SECTIONS["thresholds"]
    for name, value in _section(raw, "thresholds", errors).items():
        try:
            merged["thresholds"][name] = known[name](value)
        except _DATA_ERRORS:
            msg = "Invalid threshold '{0}': {1!r}.".format(name, value)
            errors.append(InvalidEngineSpecError(msg, "thresholds"))
    return merged


def create_domains(raw, n, errors):
    domains = {}
    data = _get(raw, "domains", {}) or {}
    if not isinstance(data, dict):
        errors.append(InvalidDomainSpecError("'domains' must be a mapping."))
        return domains
    for name, spec in data.items():
        try:
            domains[name] = domain_from_dict(spec, n)
        except _DATA_ERRORS as e:
            msg = "Domain '{0}': {1}".format(name, _describe(e))
            errors.append(InvalidDomainSpecError(msg))
    return domains


def create_objective(raw, domains, config, errors):
    data = _get(raw, "objective")
    if data is None:
        return None
    if "X" not in domains or "W" not in domains:
        return None
    try:
        exprs = dict((key, parse_expr(str(data[key])))
                     for key in ("phi1", "phi2"))
        bv = _get(data, "boundary_values")
        if bv is not None:
            bv = parse_expr(str(bv))
        return PiecewiseObjective(domains["X"], domains["W"],
                                  exprs["phi1"], exprs["phi2"], bv,
                                  band=config["thresholds"]["boundary_band"])
    except _DATA_ERRORS as e:
        errors.append(InvalidObjectiveSpecError(_describe(e)))
        return None


def _engine_config(cls, raw, key, config, errors, **overrides):
    data = dict(_section(raw, key, errors))
    data.update(overrides)
    try:
        return cls.from_config(config, **data)
    except _DATA_ERRORS as e:
        errors.append(InvalidEngineSpecError(_describe(e), key))
        return cls.from_config(config, **overrides)


def create_grid(raw, kind, domains, errors):
    data = _section(raw, "grid", errors)
    default = DEFAULT_RESOLUTION.get(kind, 64)
    try:
        resolution = int(data.get("resolution", default))
    except _DATA_ERRORS as e:
        errors.append(InvalidEngineSpecError(_describe(e), "grid"))
        return None, default
    if kind != "envelope" or "X" not in domains:
        return None, resolution
    try:
        spec = GridSpec.around(domains["X"], resolution,
                               float(data.get("pad", 0.0)),
                               bool(data.get("slice", False)))
        return spec, resolution
    except _DATA_ERRORS as e:
        errors.append(InvalidEngineSpecError(_describe(e), "grid"))
        return None, resolution


def create_probes(raw, errors):
    data = _get(raw, "probes")
    if data is None:
        return None
    try:
        return [parse_point(p) for p in data]
    except _DATA_ERRORS as e:
        errors.append(ScenarioError("Probes: {0}".format(_describe(e))))
        return None


def _lookup_domain(value, domains, n):
    if isinstance(value, str):
        if value not in domains:
            raise KeyError("no domain named '{0}'".format(value))
        return domains[value]
    return domain_from_dict(value, n)


def create_thinness(raw, domains, n, errors):
    data = _get(raw, "thinness")
    if data is None:
        return None
    try:
        target = None
        if data.get("set") is not None:
            target = _lookup_domain(data["set"], domains, n)
        cloud = data.get("cloud")
        if cloud is not None:
            cloud = [parse_point(p) for p in cloud]
        kwargs = {}
        if "rho_schedule" in data:
            kwargs["rho_schedule"] = data["rho_schedule"]
        return ThinnessQuery(parse_point(data["x"]), data["v_radius"],
                             data["epsilon"], target, cloud, **kwargs)
    except _DATA_ERRORS as e:
        errors.append(ScenarioError("Thinness query: {0}".format(
            _describe(e))))
        return None


def _create_sample(value, n):
    if isinstance(value, str):
        if value not in PSH_LIBRARY:
            raise KeyError("no library sample named '{0}'".format(value))
        return PSH_LIBRARY[value], False
    region = domain_from_dict(value["certified_on"], n)
    sample = PshSample(value["name"], value["expr"], value.get("note", ""),
                       region)
    return sample, True


def create_maxprinciple(raw, domains, n, errors):
    data = _get(raw, "maxprinciple")
    if data is None:
        return None
    try:
        X = domains.get("X") or Ball([0] * n, 1.0)
        entries = data.get("catalog", "default")
        certify = []
        if entries == "default":
            catalog = default_catalog()
        else:
            catalog = []
            for entry in entries:
                sample, custom = _create_sample(entry["sample"], n)
                if custom:
                    certify.append(sample)
                catalog.append((sample,
                                _lookup_domain(entry["set"], domains, n)))
        return MaxPrincipleSpec(catalog, X, data.get("boundary_k", 1024),
                                data.get("tol", 0.02), certify)
    except _DATA_ERRORS as e:
        errors.append(ScenarioError("Max-principle catalog: {0}".format(
            _describe(e))))
        return None


def create_expected(raw, errors):
    data = _get(raw, "expected")
    if data is None:
        return {}
    if isinstance(data, str):
        return {"verdict": data}
    if not isinstance(data, dict):
        errors.append(ScenarioError("'expected' must be a verdict or a "
                                    "mapping."))
        return {}
    return dict(data)


def _seed(raw, seed):
    if seed is not None:
        return seed
    return _get(raw, "seed", 0)


def _describe(e):
    if isinstance(e, KeyError):
        return "missing or unknown key {0}".format(e)
    return str(e)


def parse_scenario(loaded, config, seed=None):
    """
    Parse loaded scenario data into a :py:class:`Scenario`.

    :param dict loaded: data from :py:class:`.loader.ScenarioLoader`
    :param dict config: engine config from :py:func:`.config.setup_config`
    :param int seed: overrides the scenario seed when given
    :raises InvalidScenarioError: listing every problem found
    """
    errors = []
    raw = loaded
    kind = _get(raw, "kind", "envelope")
    n = _get(raw, "dimension", 1)
    dim = n if n in (1, 2) else None
    seed = _seed(raw, seed)
    merged = _merge_config(raw, config, errors)

    domains = create_domains(raw, dim, errors)
    search_seed = seed if isinstance(seed, numbers.Integral) and \
        0 <= seed < 2 ** 64 else 0
    search = _engine_config(SearchConfig, raw, "search", merged, errors,
                            seed=search_seed)
    relax = _engine_config(RelaxConfig, raw, "relax", merged, errors)
    grid, resolution = create_grid(raw, kind, domains, errors)

    scenario = Scenario(
        raw=raw,
        name=_get(raw, "name"),
        kind=kind,
        dimension=n,
        seed=seed,
        domains=domains,
        objective=create_objective(raw, domains, merged, errors),
        engine=_get(raw, "engine", "both"),
        mode=_get(raw, "mode", EH),
        search=search,
        relax=relax,
        grid=grid,
        resolution=resolution,
        probes=create_probes(raw, errors),
        thinness=create_thinness(raw, domains, dim, errors),
        maxprinciple=create_maxprinciple(raw, domains, dim or 1, errors),
        expected=create_expected(raw, errors),
        config=merged,
        errors=errors,
    )
    if scenario.errors:
        raise InvalidScenarioError(scenario.errors)
    return scenario


def probe_array(scenario):
    """Probes stacked into an ``(m, n)`` complex array."""
    if not scenario.probes:
        return np.zeros((0, scenario.dimension), dtype=complex)
    return np.array(scenario.probes, dtype=complex)
