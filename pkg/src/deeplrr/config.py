"""Solver configuration and its ``key = value`` file format."""

import dataclasses
from dataclasses import dataclass


class ConfigError(Exception):
    """Invalid configuration value or unparsable config file."""


@dataclass(frozen=True)
class SolverConfig:
    """Parameters shared by the layer solver, network training, and clustering.

    mu0/mu_max/eta/eps are the inexact-ALM penalty schedule and stopping
    tolerance; lambda1 and rho set the per-layer sparsity weight
    lambda_l = rho**(l-1) * lambda1; alpha weighs the neighborhood
    reconstruction term.
    """

    layers: int = 3
    alpha: float = 1.0
    lambda1: float = 0.1
    rho: float = 1.0
    mu0: float = 1e-6
    mu_max: float = 1e6
    eta: float = 1.5
    eps: float = 1e-7
    max_iter: int = 500
    seed: int = 0
    clusters: int = 10
    kmeans_restarts: int = 20

    def validate(self):
        if self.layers < 1:
            raise ConfigError("layers must be >= 1")
        if self.alpha < 0:
            raise ConfigError("alpha must be >= 0")
        if self.lambda1 <= 0:
            raise ConfigError("lambda1 must be > 0")
        if self.rho < 1:
            raise ConfigError("rho must be >= 1")
        if self.mu0 <= 0:
            raise ConfigError("mu0 must be > 0")
        if self.mu_max < self.mu0:
            raise ConfigError("mu_max must be >= mu0")
        if self.eta <= 1:
            raise ConfigError("eta must be > 1")
        if self.eps <= 0:
            raise ConfigError("eps must be > 0")
        if self.max_iter < 1:
            raise ConfigError("max_iter must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed must fit in 64 unsigned bits")
        if self.clusters < 1:
            raise ConfigError("clusters must be >= 1")
        if self.kmeans_restarts < 1:
            raise ConfigError("kmeans_restarts must be >= 1")
        return self

    def replace(self, **overrides):
        return dataclasses.replace(self, **overrides)


_FIELDS = {f.name: f.type for f in dataclasses.fields(SolverConfig)}


def _convert(key, text):
    kind = _FIELDS[key]
    try:
        if kind == "int" or kind is int:
            return int(text)
        return float(text)
    except ValueError:
        raise ConfigError(f"bad value for {key}: {text!r}") from None


def parse_config_text(text):
    """Parse ``key = value`` lines into a dict of typed values."""
    values = {}
    for i, raw in enumerate(text.splitlines()):
        line = raw.strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {i}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _FIELDS:
            raise ConfigError(f"line {i}: unknown key {key!r}")
        values[key] = _convert(key, value.strip())
    return values


def load_config(path, base=None):
    """Read a config file on top of ``base`` (defaults when omitted)."""
    if base is None:
        base = SolverConfig()
    with open(path, "r", encoding="ascii") as fh:
        values = parse_config_text(fh.read())
    return base.replace(**values)


def write_config(cfg, path):
    with open(path, "w", encoding="ascii") as fh:
        for field in dataclasses.fields(SolverConfig):
            fh.write(f"{field.name} = {getattr(cfg, field.name)!r}\n")
