"""Radial solver for nonlocal diffusion problems in a ball."""

import json as _json

from ._core import (
    ConfigError,
    ConvergenceError,
    InvalidArgument,
    NumericalError,
    PropertyViolation,
    __version__,
    cap_fraction,
    manifest_consistent,
    moser_exponents,
    principal_eigenvalue,
    scalar_mu_roots,
    staircase_breakpoints,
)
from . import _core


def _text(config):
    return config if isinstance(config, str) else _json.dumps(config)


def parse_config(config, strict=True):
    """Resolved config as a dict."""
    return _json.loads(_core.parse_config(_text(config), strict))


def solve_stationary(config):
    return _core.solve_stationary(_text(config))


def solve_pd(config):
    return _core.solve_pd(_text(config))


def stability(config):
    return _core.stability(_text(config))


def run(config, out, workers=1, strict=True):
    """Runs the configured mode; returns (exit_code, error)."""
    return _core.run(_text(config), str(out), workers, strict)


__all__ = [
    "ConfigError",
    "ConvergenceError",
    "InvalidArgument",
    "NumericalError",
    "PropertyViolation",
    "cap_fraction",
    "manifest_consistent",
    "moser_exponents",
    "parse_config",
    "principal_eigenvalue",
    "run",
    "scalar_mu_roots",
    "solve_pd",
    "solve_stationary",
    "stability",
    "staircase_breakpoints",
]
