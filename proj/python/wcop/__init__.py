"""Weighted composition operators on the Bloch and Dirichlet spaces."""

import json

from ._core import (
    Blaschke,
    ConfigError,
    DomainError,
    Moebius,
    NumericalError,
    Operator,
    PreconditionError,
    SelfMap,
    Space,
    Symbol,
    __version__,
    bloch_norm,
    check_bounded,
    check_invertible,
    classify,
    command_names,
    composition_norm_bound,
    default_config,
    denjoy_wolff_sequence,
    dirichlet_norm,
    hausdorff_distance,
    hyperbolic_distance,
    predict_spectrum,
    spectral_radius_estimate,
    truncation_eigenvalues,
)
from ._core import run_command_json as _run_command_json


def run_command(name, config=None):
    """Run a CLI subcommand in-process.

    `config` is a dict or JSON text; None uses the built-in defaults.
    Returns (report, timing, artifacts, passed) with the report and timing parsed.
    """
    if config is None:
        text = default_config()
    elif isinstance(config, str):
        text = config
    else:
        text = json.dumps(config)
    report, timing, artifacts, passed = _run_command_json(name, text)
    return json.loads(report), json.loads(timing), artifacts, passed


def verify(config=None):
    """Run the reproduction suite; returns the parsed report."""
    return run_command("verify", config)[0]
