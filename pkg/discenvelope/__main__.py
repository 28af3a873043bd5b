#! /usr/bin/env python
# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers

import os

import click

from .config import setup_config
from .reports import (
    EXIT_PASS, ERROR, cmd_suite, run_scenario, summary_table
)
from .utils import set_log_level


#: Global Click defaults
CONTEXT_SETTINGS = dict(
    help_option_names=['-h', '--help'],
)

SEED = click.IntRange(0, 2 ** 64 - 1)


def _config(config_file):
    config = setup_config(config_file)
    set_log_level(config["main"]["log_level"])
    return config


def _color(flag, config):
    return flag or str(config["main"]["color"]).lower() in (
        "1", "true", "yes", "on")


def _finish(outcomes, color):
    for o in outcomes:
        if o.status == ERROR:
            click.secho(o.detail, fg="red", err=True)
    click.echo(summary_table(outcomes, color))


def _run_one(kind, scenario, out, seed, config, color, engine=None):
    config = _config(config)
    outcome = run_scenario(scenario, out, config, seed, engine, kind)
    _finish([outcome], _color(color, config))
    if outcome.exit_code != EXIT_PASS:
        raise SystemExit(outcome.exit_code)


def scenario_options(func):
    """Options shared by the single-scenario commands."""
    options = [
        click.option("--scenario", "-s", required=True,
                     type=click.Path(exists=True, dir_okay=False),
                     help="Scenario file (.json, .yaml or .yml)."),
        click.option("--out", "-o", default="out", type=click.Path(),
                     help="Output directory (default: ./out)."),
        click.option("--seed", type=SEED, default=None,
                     help="Override the scenario seed."),
        click.option("--config", "-c", type=click.Path(exists=True),
                     help="Engine configuration (.ini)."),
        click.option("--color", is_flag=True, default=False,
                     help="Color the pass/fail column."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@click.group(context_settings=CONTEXT_SETTINGS)
def main():
    """Disc envelopes, Perron oracles, thinness and maximum principle."""
    # Needed to collect the scenario commands


@main.command(context_settings=CONTEXT_SETTINGS,
              help="Compute an envelope at the scenario probes.")
@scenario_options
@click.option("--engine", "-e", default=None,
              type=click.Choice(["disc", "perron", "both"]),
              help="Engine(s) to run; defaults to the scenario's engine.")
def envelope(scenario, out, seed, config, color, engine):
    """Disc search, Perron oracle, or both with a sandwich check."""
    _run_one("envelope", scenario, out, seed, config, color, engine)


@main.command(context_settings=CONTEXT_SETTINGS,
              help="Run a thinness query and compare the verdict.")
@scenario_options
def thinness(scenario, out, seed, config, color):
    _run_one("thinness", scenario, out, seed, config, color)


@main.command(context_settings=CONTEXT_SETTINGS,
              help="Check the maximum principle on a catalog of sets.")
@scenario_options
def maxprinciple(scenario, out, seed, config, color):
    _run_one("maxprinciple", scenario, out, seed, config, color)


@main.command(context_settings=CONTEXT_SETTINGS,
              help="Run every scenario of a directory.")
@click.option("--dir", "-d", "directory", required=True,
              type=click.Path(exists=True, file_okay=False),
              help="Directory of scenario files.")
@click.option("--out", "-o", default="out", type=click.Path(),
              help="Output directory (default: ./out).")
@click.option("--jobs", "-j", type=click.IntRange(1, None), default=None,
              help="Scenarios run at the same time.")
@click.option("--seed", type=SEED, default=None,
              help="Override every scenario seed.")
@click.option("--config", "-c", type=click.Path(exists=True),
              help="Engine configuration (.ini).")
@click.option("--color", is_flag=True, default=False,
              help="Color the pass/fail column.")
def suite(directory, out, jobs, seed, config, color):
    """Run a scenario directory in file name order; summary on stdout."""
    config = _config(config)
    jobs = jobs or config["main"]["jobs"]
    summary = cmd_suite(directory, os.path.abspath(out), jobs, config, seed)
    _finish(summary.outcomes, _color(color, config))
    if summary.exit_code != EXIT_PASS:
        raise SystemExit(summary.exit_code)


if __name__ == "__main__":
    main()
