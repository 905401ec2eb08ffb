"""
Tests for configuration and logging setup
"""
import logging
import os
import subprocess
import sys
from pathlib import Path

import pytest
from rich.logging import RichHandler

from rtz import config
from rtz import logger as rtz_logger
from rtz.cli import cli, main
from rtz.config import Config
from rtz.errors import ConfigError, DomainError, NumericConvergenceError, RTZError
from rtz.logger import ROOT_LOGGER, configure_logging, get_logger

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture
def fresh_logging(monkeypatch):
    """rtz logger with no handlers and the install flag cleared; restored afterwards"""
    root = logging.getLogger(ROOT_LOGGER)
    saved = (list(root.handlers), root.level, root.propagate)
    root.handlers.clear()
    monkeypatch.setattr(rtz_logger, '_configured', False)
    yield root
    root.handlers[:] = saved[0]
    root.setLevel(saved[1])
    root.propagate = saved[2]


def test_int_env_reads_override(monkeypatch):
    monkeypatch.setenv('RTZ_TEST_DIGITS', '45')
    assert config._int_env('RTZ_TEST_DIGITS', 30) == 45


def test_int_env_default(monkeypatch):
    monkeypatch.delenv('RTZ_TEST_DIGITS', raising=False)
    assert config._int_env('RTZ_TEST_DIGITS', 30) == 30


def test_int_env_rejects_garbage(monkeypatch):
    monkeypatch.setenv('RTZ_TEST_DIGITS', 'thirty')
    with pytest.raises(ConfigError):
        config._int_env('RTZ_TEST_DIGITS', 30)


def test_defaults_are_sane():
    assert Config.PRECISION_DIGITS >= 1
    assert Config.MAX_DOUBLINGS >= 1
    assert Config.MAX_K >= 1


def test_settings_follow_environment(monkeypatch):
    monkeypatch.setenv('RTZ_JOBS', '3')
    assert Config.JOBS == 3


def test_bad_setting_raises_on_access(monkeypatch):
    monkeypatch.setenv('RTZ_JOBS', 'many')
    with pytest.raises(ConfigError, match='RTZ_JOBS'):
        Config.JOBS
    with pytest.raises(ConfigError):
        Config.validate()


def test_exit_codes():
    assert DomainError("x").exit_code == 2
    assert ConfigError("x").exit_code == 2
    assert NumericConvergenceError("x").exit_code == 3
    assert issubclass(DomainError, ValueError)
    assert issubclass(NumericConvergenceError, RTZError)


# ============================================================================
# MALFORMED ENVIRONMENT AT THE COMMAND LINE
# ============================================================================

def test_bad_setting_exits_2(runner):
    result = runner.invoke(cli, ['bernoulli', '--max', '2'], env={'RTZ_PRECISION_DIGITS': 'abc'})
    assert result.exit_code == 2
    assert 'RTZ_PRECISION_DIGITS must be an integer' in result.stderr


def test_main_maps_errors_raised_while_parsing(monkeypatch, capsys):
    # skip the upfront check so the cap lookup in --k parsing hits the bad value
    monkeypatch.setattr(Config, 'validate', classmethod(lambda cls: None))
    monkeypatch.setenv('RTZ_MAX_K', 'abc')
    with pytest.raises(SystemExit) as exc:
        main(['verify', '--k', '2', '--n', '2'])
    assert exc.value.code == 2
    assert 'RTZ_MAX_K must be an integer' in capsys.readouterr().err


def test_module_entry_point_exits_2():
    env = {**os.environ, 'RTZ_PRECISION_DIGITS': 'abc', 'RTZ_ENV': 'production'}
    proc = subprocess.run([sys.executable, '-m', 'rtz', 'bernoulli', '--max', '2'],
                          cwd=REPO_ROOT, env=env, capture_output=True, text=True)
    assert proc.returncode == 2
    assert 'Traceback' not in proc.stderr
    assert 'RTZ_PRECISION_DIGITS' in proc.stderr


# ============================================================================
# LOGGING
# ============================================================================

def test_logging_installs_one_handler(fresh_logging):
    configure_logging('INFO')
    configure_logging('DEBUG')
    handlers = [h for h in fresh_logging.handlers if isinstance(h, RichHandler)]
    assert len(handlers) == 1
    assert fresh_logging.level == logging.DEBUG
    assert fresh_logging.propagate is False


def test_get_logger_namespaces():
    assert get_logger('rtz.services.certify').name == 'rtz.services.certify'
    assert get_logger('scratch').name == 'rtz.scratch'
