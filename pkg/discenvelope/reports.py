# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers
"""
Scenario runs: each command writes its CSV and JSON files into
``<out>/<scenario name>/`` and returns an :py:class:`Outcome`. CSV files
start with a ``# schema=1`` comment line; timings only go to ``run.log``.
"""

from concurrent.futures import ProcessPoolExecutor
import contextlib
import csv
import json
import os
import time

import attr
import numpy as np
from termcolor import colored

from ._helpers import load_file
from .config import setup_config
from .envelope import EH, eh_estimate, f_estimate
from .errors import (
    BaseDiscError, InvalidScenarioError, LoadScenarioError
)
from .maxprinciple import check_sub_mean, run_suite
from .perron import psh_envelope
from .scenario import parse_scenario
from .thinness import thinness_report
from .utils import norm, setup_logger

log = setup_logger("REPORTS")

SCHEMA = 1
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_SCHEMA = 2
EXIT_ENGINE = 3

PASS = "pass"
FAIL = "fail"
ERROR = "error"

SCENARIO_EXT = (".json", ".yaml", ".yml")


@attr.s(frozen=True)
class Outcome(object):
    """Result of one scenario run, as listed in the suite summary."""
    scenario  = attr.ib()
    kind      = attr.ib()
    status    = attr.ib()
    exit_code = attr.ib()
    detail    = attr.ib(default="")


@attr.s(frozen=True)
class SuiteSummary(object):
    outcomes = attr.ib(factory=list)

    @property
    def exit_code(self):
        if all(o.exit_code == EXIT_PASS for o in self.outcomes):
            return EXIT_PASS
        return EXIT_FAIL


#####
# Writers
#####

def _num(value):
    if value is None:
        return ""
    return repr(float(value))


def _coord_columns(n):
    cols = []
    for i in range(1, n + 1):
        cols += ["z{0}_re".format(i), "z{0}_im".format(i)]
    return cols


def _coords(p):
    out = []
    for c in np.atleast_1d(p):
        out += [_num(c.real), _num(c.imag)]
    return out


def write_csv(path, header, rows):
    """CSV with the ``# schema=1`` comment line and a column header."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        f.write("# schema={0}\n".format(SCHEMA))
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow(r)


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, complex):
        return [value.real, value.imag]
    raise TypeError("Not JSON serializable: {0!r}".format(value))


def write_json(path, data):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, sort_keys=True, default=_json_default)
        f.write("\n")


def _scenario_dir(scenario, out):
    directory = os.path.join(out, scenario.name)
    os.makedirs(directory, exist_ok=True)
    return directory


@contextlib.contextmanager
def run_log(directory):
    """Collects ``(step, seconds)`` timings and writes ``run.log``."""
    timings = []
    try:
        yield timings
    finally:
        with open(os.path.join(directory, "run.log"), "w") as f:
            for step, seconds in timings:
                f.write("{0}\t{1:.3f}s\n".format(step, seconds))


@contextlib.contextmanager
def _timed(timings, step):
    start = time.perf_counter()
    yield
    timings.append((step, time.perf_counter() - start))


#####
# Envelope
#####

def _disc_values(scenario, directory):
    estimate = eh_estimate if scenario.mode == EH else f_estimate
    results = [estimate(scenario.objective, p, scenario.search)
               for p in scenario.probes]
    n = scenario.dimension
    rows = []
    for i, (p, res) in enumerate(zip(scenario.probes, results)):
        degree = res.best_disc.degree if res.best_disc is not None else ""
        rows.append([i] + _coords(p) + [_num(res.value), res.label or "",
                                        degree, res.feasible_count,
                                        res.infeasible_count])
    write_csv(os.path.join(directory, "disc.csv"),
              ["probe"] + _coord_columns(n) +
              ["value", "label", "degree", "feasible", "infeasible"], rows)
    degree_rows = []
    for i, res in enumerate(results):
        for degree, best, evals in res.per_degree:
            degree_rows.append([i, degree, _num(best), evals])
    write_csv(os.path.join(directory, "disc_degrees.csv"),
              ["probe", "degree", "best_value", "evals"], degree_rows)
    trace_rows = [[i, row.degree, row.restart, row.evals,
                   _num(row.best_value), int(row.feasible)]
                  for i, res in enumerate(results) for row in res.trace]
    write_csv(os.path.join(directory, "disc_trace.csv"),
              ["probe", "degree", "restart", "evals", "best_value",
               "feasible"], trace_rows)
    return results


def _slice_point(p, grid):
    """A slice grid only holds the z1-plane: read p at (|p|, 0, ...)."""
    if not grid.spec.slice:
        return p
    q = np.zeros_like(p)
    q[0] = norm(p)
    return q


def _perron_values(scenario, directory):
    env = psh_envelope(scenario.objective, scenario.grid, scenario.relax)
    n = scenario.dimension
    values, rows = [], []
    for i, p in enumerate(scenario.probes):
        q = _slice_point(p, env.grid)
        value = env.value_at(q)
        values.append(value)
        rows.append([i] + _coords(p) +
                    [_num(value), _num(env.distance_to_node(q))])
    write_csv(os.path.join(directory, "perron.csv"),
              ["probe"] + _coord_columns(n) + ["value", "node_distance"],
              rows)
    grid_rows = [[int(i)] + [_num(c) for c in real] + [_num(v)]
                 for i, real, v in env.rows()]
    write_csv(os.path.join(directory, "perron_grid.csv"),
              ["node"] + _coord_columns(n) + ["value"], grid_rows)
    return env, values


def sandwich(disc_values, perron_values, tol):
    """Per probe: the disc estimate must not drop below perron - tol."""
    rows = []
    for d, p in zip(disc_values, perron_values):
        ok = d is not None and d >= p - tol
        rows.append((d, p, p - tol, ok))
    return rows


def _check_expected(scenario, values):
    expected = scenario.expected.get("values")
    if expected is None:
        return True, ""
    tol = float(scenario.expected.get("tol", scenario.sandwich_tol))
    misses = [i for i, (v, e) in enumerate(zip(values, expected))
              if v is None or abs(v - float(e)) > tol]
    if misses:
        return False, "values off at probes {0}".format(misses)
    return True, ""


def cmd_envelope(scenario, out, engine=None):
    """
    Compute the envelope at the scenario probes with the disc search,
    the Perron oracle, or both. With both engines a sandwich report is
    written and any probe where the disc value falls below the oracle
    value minus the sandwich tolerance fails the run.
    """
    engine = engine or scenario.engine
    directory = _scenario_dir(scenario, out)
    report = {"scenario": scenario.name, "schema": SCHEMA,
              "engine": engine, "mode": scenario.mode,
              "seed": scenario.seed}
    disc = perron = None
    with run_log(directory) as timings:
        if engine in ("disc", "both"):
            with _timed(timings, "disc"):
                results = _disc_values(scenario, directory)
            disc = [r.value for r in results]
            report["disc"] = [r.to_dict() for r in results]
        if engine in ("perron", "both"):
            with _timed(timings, "perron"):
                env, perron = _perron_values(scenario, directory)
            report["perron"] = env.metadata()
            report["perron"]["residual_history"] = env.residual_history

    passed, detail = True, ""
    if engine == "both":
        tol = scenario.sandwich_tol
        checks = sandwich(disc, perron, tol)
        n = scenario.dimension
        write_csv(os.path.join(directory, "sandwich.csv"),
                  ["probe"] + _coord_columns(n) +
                  ["disc", "perron", "lower", "ok"],
                  [[i] + _coords(p) + [_num(d), _num(v), _num(lo), int(ok)]
                   for i, (p, (d, v, lo, ok)) in
                   enumerate(zip(scenario.probes, checks))])
        bad = [i for i, c in enumerate(checks) if not c[3]]
        report["sandwich"] = {"tol": tol, "violations": bad}
        if bad:
            passed = False
            detail = "sandwich violated at probes {0}".format(bad)
    if passed:
        passed, detail = _check_expected(
            scenario, perron if perron is not None else disc)
    report["passed"] = passed
    write_json(os.path.join(directory, "report.json"), report)
    log.info("%s: %s", scenario.name, "pass" if passed else detail)
    return Outcome(scenario.name, scenario.kind, PASS if passed else FAIL,
                   EXIT_PASS if passed else EXIT_FAIL, detail)


#####
# Thinness
#####

def cmd_thinness(scenario, out):
    """
    Run the thinness query; the run passes when the verdict equals the
    scenario's expected verdict.
    """
    directory = _scenario_dir(scenario, out)
    query = scenario.thinness
    with run_log(directory) as timings:
        with _timed(timings, "thinness"):
            report = thinness_report(query, scenario.search, scenario.relax,
                                     scenario.resolution,
                                     scenario.thin_margin)
    expected = scenario.expected["verdict"]
    passed = report.verdict == expected
    cert = report.certificate
    write_csv(os.path.join(directory, "thinness.csv"),
              ["verdict", "expected", "match", "best_measure",
               "oracle_value", "certificate_degree"],
              [[report.verdict, expected, int(passed),
                _num(report.best_measure), _num(report.oracle_value),
                cert.disc.degree if cert is not None else ""]])
    if report.per_rho:
        write_csv(os.path.join(directory, "thinness_rho.csv"),
                  ["rho", "success", "measure"],
                  [[_num(r.rho), int(r.success), _num(r.measure)]
                   for r in report.per_rho])
    data = report.to_dict()
    data.update({"scenario": scenario.name, "schema": SCHEMA,
                 "expected": expected, "passed": passed})
    write_json(os.path.join(directory, "thinness.json"), data)
    detail = "" if passed else "verdict {0}, expected {1}".format(
        report.verdict, expected)
    return Outcome(scenario.name, scenario.kind, PASS if passed else FAIL,
                   EXIT_PASS if passed else EXIT_FAIL, detail)


#####
# Maximum principle
#####

def cmd_maxprinciple(scenario, out):
    """
    Compare sup over U with sup over the boundary of U for every
    (sample, set) pair of the catalog. Custom samples are certified
    first with the sub-mean test.
    """
    directory = _scenario_dir(scenario, out)
    spec = scenario.maxprinciple
    with run_log(directory) as timings:
        for sample in spec.certify:
            with _timed(timings, "certify " + sample.name):
                check_sub_mean(sample, seed=scenario.seed)
        with _timed(timings, "suite"):
            result = run_suite(spec.catalog, spec.X, scenario.resolution,
                               spec.boundary_k, spec.tol)
    write_csv(os.path.join(directory, "maxprinciple.csv"),
              ["sample", "set", "sup_interior", "sup_boundary", "defect",
               "passed", "error"],
              [[r.sample, r.set_label, _num(r.sup_interior),
                _num(r.sup_boundary), _num(r.defect), int(r.passed),
                r.error or ""] for r in result.rows])
    failed = [r.sample for r in result.rows if not r.passed]
    write_json(os.path.join(directory, "maxprinciple.json"),
               {"scenario": scenario.name, "schema": SCHEMA,
                "tol": spec.tol, "passed": result.passed,
                "rows": [attr.asdict(r) for r in result.rows]})
    detail = "" if result.passed else "failed: {0}".format(", ".join(failed))
    return Outcome(scenario.name, scenario.kind,
                   PASS if result.passed else FAIL,
                   EXIT_PASS if result.passed else EXIT_FAIL, detail)


#####
# Scenario runs and suites
#####

COMMANDS = {
    "envelope": cmd_envelope,
    "thinness": cmd_thinness,
    "maxprinciple": cmd_maxprinciple,
}


def run_scenario(path, out, config=None, seed=None, engine=None, kind=None):
    """
    Load, parse and run one scenario file. Schema problems map to exit
    code 2, engine errors to 3; both are returned as outcomes.

    :param str kind: when given, the scenario must be of this kind
    """
    name = os.path.splitext(os.path.basename(path))[0]
    config = config or setup_config()
    try:
        scenario = parse_scenario(load_file(path), config, seed)
    except (LoadScenarioError, InvalidScenarioError) as e:
        log.error("%s: %s", path, e)
        return Outcome(name, kind or "", ERROR, EXIT_SCHEMA,
                       "{0}: {1}".format(path, e))
    if kind is not None and scenario.kind != kind:
        msg = "{0}: a {1} scenario, not {2}".format(path, scenario.kind, kind)
        return Outcome(scenario.name, scenario.kind, ERROR, EXIT_SCHEMA, msg)
    try:
        if scenario.kind == "envelope":
            return cmd_envelope(scenario, out, engine)
        return COMMANDS[scenario.kind](scenario, out)
    except BaseDiscError as e:
        log.error("%s: %s: %s", scenario.name, e.__class__.__name__, e)
        return Outcome(scenario.name, scenario.kind, ERROR, EXIT_ENGINE,
                       "{0}: {1}".format(e.__class__.__name__, e))
    except Exception as e:
        # a numeric failure in one scenario must not take down the suite
        log.exception("%s: unexpected failure", scenario.name)
        return Outcome(scenario.name, scenario.kind, ERROR, EXIT_ENGINE,
                       "{0}: {1}".format(e.__class__.__name__, e))


def scenario_files(directory):
    """Scenario files in ``directory`` sorted by file name; names starting
    with ``_`` hold shared definitions and are skipped."""
    names = sorted(f for f in os.listdir(directory)
                   if os.path.splitext(f)[1] in SCENARIO_EXT and
                   not f.startswith("_"))
    return [os.path.join(directory, f) for f in names]


def _run(args):
    return run_scenario(*args)


def cmd_suite(directory, out, jobs=1, config=None, seed=None):
    """
    Run every scenario in ``directory`` (up to ``jobs`` at a time) and
    write ``summary.csv`` once all of them finished.
    """
    files = scenario_files(directory)
    config = config or setup_config()
    args = [(path, out, config, seed) for path in files]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run, args))
    else:
        outcomes = [_run(a) for a in args]
    os.makedirs(out, exist_ok=True)
    write_csv(os.path.join(out, "summary.csv"),
              ["file", "scenario", "kind", "status", "exit_code", "detail"],
              [[os.path.basename(f), o.scenario, o.kind, o.status,
                o.exit_code, o.detail] for f, o in zip(files, outcomes)])
    return SuiteSummary(outcomes)


STATUS_COLORS = {PASS: "green", FAIL: "red", ERROR: "yellow"}


def summary_table(outcomes, color=False):
    """Plain-text summary, one line per scenario."""
    width = max([len(o.scenario) for o in outcomes] + [8])
    lines = ["{0:<{w}}  {1:<12}  {2:<6}  {3}".format(
        "scenario", "kind", "status", "detail", w=width)]
    for o in outcomes:
        status = "{0:<6}".format(o.status)
        if color:
            status = colored(status, STATUS_COLORS[o.status])
        lines.append("{0:<{w}}  {1:<12}  {2}  {3}".format(
            o.scenario, o.kind, status, o.detail, w=width).rstrip())
    return "\n".join(lines)
