# -*- coding: utf-8 -*-
# Copyright (c) 2016 The discenvelope developers

import os

from click.testing import CliRunner
import pytest

from discenvelope import __main__ as main

from .base import CONFIG, INVALID, SCENARIOS, SUITES


MAIN_USAGE = 'Usage: main [OPTIONS] COMMAND [ARGS]...'
COMMANDS = ("envelope", "maxprinciple", "suite", "thinness")
SCENARIO_OPTIONS = ("--scenario", "--out", "--seed", "--config", "--color")


@pytest.fixture
def runner():
    return CliRunner()


def check_result(exp_code, exp_msg, result):
    assert result.exit_code == exp_code, result.output
    if exp_msg:
        assert exp_msg in result.output


def _scenario(name):
    return os.path.join(SCENARIOS + name)


def _handles_no_scenario(runner, cli):
    """
    Assertion helper: Command complains about a missing --scenario.
    """
    result = runner.invoke(cli, [])
    check_result(2, "Missing option", result)


def _handles_nonexistent_file(runner, cli):
    result = runner.invoke(cli, ["-s", "/tmp/no-such-scenario.json"])
    check_result(2, "does not exist", result)


def test_main_help(runner):
    for flag in ("-h", "--help"):
        result = runner.invoke(main.main, [flag])
        check_result(0, MAIN_USAGE, result)
        for command in COMMANDS:
            assert command in result.output


@pytest.mark.parametrize("cli", [main.envelope, main.thinness,
                                 main.maxprinciple])
def test_scenario_command_help(runner, cli):
    result = runner.invoke(cli, ["--help"])
    check_result(0, "--scenario", result)
    for option in SCENARIO_OPTIONS:
        assert option in result.output


def test_envelope_engine_choice(runner):
    result = runner.invoke(main.envelope, ["--help"])
    assert "[disc|perron|both]" in result.output


@pytest.mark.parametrize("cli", [main.envelope, main.thinness,
                                 main.maxprinciple])
def test_missing_scenario(runner, cli):
    _handles_no_scenario(runner, cli)
    _handles_nonexistent_file(runner, cli)


def test_envelope(runner, tmpdir):
    result = runner.invoke(main.envelope, [
        "-s", _scenario("ball_in_ball_perron.json"), "-o", str(tmpdir)])
    check_result(0, "ball-in-ball-perron", result)
    lines = result.output.strip().split("\n")
    assert lines[0].split() == ["scenario", "kind", "status", "detail"]
    assert lines[1].split() == ["ball-in-ball-perron", "envelope", "pass"]
    assert tmpdir.join("ball-in-ball-perron", "perron.csv").check()


def test_envelope_fails(runner, tmpdir):
    result = runner.invoke(main.envelope, [
        "-s", _scenario("wrong_expectation.json"), "-o", str(tmpdir)])
    check_result(1, "values off at probes [0]", result)


def test_envelope_engine_override(runner, tmpdir):
    result = runner.invoke(main.envelope, [
        "-s", _scenario("psh_self.json"), "-o", str(tmpdir),
        "--engine", "perron"])
    check_result(0, "psh-self", result)
    assert not tmpdir.join("psh-self", "disc.csv").check()


def test_schema_error_exit(runner, tmpdir):
    result = runner.invoke(main.envelope, [
        "-s", os.path.join(INVALID + "malformed.json"), "-o", str(tmpdir)])
    check_result(2, "Error parsing scenario", result)


def test_invalid_scenario_lists_errors(runner, tmpdir):
    result = runner.invoke(main.envelope, [
        "-s", os.path.join(INVALID + "many_errors.json"), "-o", str(tmpdir)])
    check_result(2, "Scenario does not define a name.", result)
    assert "InvalidDomainSpecError" in result.output


def test_engine_error_exit(runner, tmpdir):
    result = runner.invoke(main.envelope, [
        "-s", os.path.join(INVALID + "unpinnable.json"), "-o", str(tmpdir)])
    check_result(3, "unpinnable", result)


def test_wrong_command_for_kind(runner, tmpdir):
    result = runner.invoke(main.envelope, [
        "-s", _scenario("slit.json"), "-o", str(tmpdir)])
    check_result(2, "a thinness scenario, not envelope", result)


def test_thinness(runner, tmpdir):
    result = runner.invoke(main.thinness, [
        "-s", _scenario("slit.json"), "-o", str(tmpdir)])
    check_result(0, "slit", result)
    assert tmpdir.join("slit", "thinness.json").check()


def test_maxprinciple(runner, tmpdir):
    result = runner.invoke(main.maxprinciple, [
        "-s", _scenario("maxprinciple_small.json"), "-o", str(tmpdir)])
    check_result(0, "maxprinciple-small", result)


def test_seed_range(runner, tmpdir):
    result = runner.invoke(main.envelope, [
        "-s", _scenario("ball_in_ball_perron.json"), "-o", str(tmpdir),
        "--seed", "-1"])
    check_result(2, None, result)


def test_seed_is_passed_on(runner, tmpdir, mocker):
    run = mocker.patch.object(main, "run_scenario",
                              side_effect=main.run_scenario)
    result = runner.invoke(main.envelope, [
        "-s", _scenario("ball_in_ball_perron.json"), "-o", str(tmpdir),
        "--seed", "7"])
    check_result(0, None, result)
    assert run.call_args[0][3] == 7


def test_config_option(runner, tmpdir, mocker):
    colored = mocker.patch("discenvelope.reports.colored",
                           side_effect=lambda text, color: text)
    result = runner.invoke(main.envelope, [
        "-s", _scenario("ball_in_ball_perron.json"), "-o", str(tmpdir),
        "-c", os.path.join(CONFIG + "test-config.ini")])
    check_result(0, None, result)
    colored.assert_called_once_with("pass  ", "green")


def test_suite(runner, tmpdir):
    result = runner.invoke(main.suite, [
        "-d", os.path.join(SUITES, "passing"), "-o", str(tmpdir)])
    check_result(0, "maxprinciple-small", result)
    assert tmpdir.join("summary.csv").check()
    assert "README" not in result.output


def test_failing_suite(runner, tmpdir):
    result = runner.invoke(main.suite, [
        "-d", os.path.join(SUITES, "failing"), "-o", str(tmpdir),
        "--jobs", "2"])
    check_result(1, "wrong-expectation", result)
    assert "broken" in result.output or "c_malformed" in result.output


def test_suite_needs_directory(runner):
    result = runner.invoke(main.suite, [])
    check_result(2, "Missing option", result)
    result = runner.invoke(main.suite, ["-d", _scenario("slit.json")])
    check_result(2, None, result)
