"""Python front end of the chsys simulator for the two-component cubic Camassa-Holm system."""

import json

from ._chsys import (
    ConfigError,
    InvalidField,
    ShapeError,
    antiderivative_zero_mean,
    besov_norm,
    cli,
    dealiased_product,
    derivative,
    global_sufficient_condition,
    hbar,
    helmholtz_inverse,
    lambda_threshold,
    lifespan_level,
    simulate as _simulate,
    to_spectral,
    uniform_bound,
)
from ._chsys import bounds_json as _bounds_json
from ._chsys import normalized_config_json as _normalized_config_json


def _as_text(config):
    return config if isinstance(config, str) else json.dumps(config)


def _inf_aware(value):
    if value == "+inf":
        return float("inf")
    if value == "-inf":
        return float("-inf")
    return value


def simulate(config):
    """Run a configuration (dict or JSON text) and return status, series and final fields."""
    return _simulate(_as_text(config))


def bounds(config):
    """Closed-form bounds report for a configuration, with infinities as floats."""
    return {k: _inf_aware(v) for k, v in json.loads(_bounds_json(_as_text(config))).items()}


def normalized_config(config):
    """The configuration with every default filled in."""
    return json.loads(_normalized_config_json(_as_text(config)))


__all__ = [
    "ConfigError",
    "InvalidField",
    "ShapeError",
    "antiderivative_zero_mean",
    "besov_norm",
    "bounds",
    "cli",
    "dealiased_product",
    "derivative",
    "global_sufficient_condition",
    "hbar",
    "helmholtz_inverse",
    "lambda_threshold",
    "lifespan_level",
    "normalized_config",
    "simulate",
    "to_spectral",
    "uniform_bound",
]
