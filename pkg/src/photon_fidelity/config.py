"""Flat key=value configuration for the command-line tools.

One assignment per line; blank lines and #-comments are skipped. Keys match
quadrature settings plus a few tool-level knobs. Command-line flags override
anything set here.
"""

from __future__ import annotations

from typing import Dict, Union

from .errors import InvalidParameterError
from .quadrature import QuadratureSpec

ConfigValue = Union[int, float]

DEFAULTS: Dict[str, ConfigValue] = {
    "radial_nodes": 16,
    "polar_nodes": 16,
    "azimuth_nodes": 8,
    "rel_tol": 1e-8,
    "max_refinements": 12,
    "length_scale": 1.0,
    "threads": 0,  # 0 = pick automatically
}

_QUADRATURE_KEYS = ("radial_nodes", "polar_nodes", "azimuth_nodes",
                    "rel_tol", "max_refinements")


def parse_config(text: str) -> Dict[str, ConfigValue]:
    """Parse config text into a full settings dict (defaults filled in)."""
    settings = dict(DEFAULTS)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InvalidParameterError(
                f"config line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in DEFAULTS:
            raise InvalidParameterError(f"config line {lineno}: unknown key {key!r}")
        try:
            if isinstance(DEFAULTS[key], int):
                settings[key] = int(value)
            else:
                settings[key] = float(value)
        except ValueError:
            raise InvalidParameterError(
                f"config line {lineno}: bad value {value!r} for {key}")
    return settings


def load_config(path: str) -> Dict[str, ConfigValue]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def quadrature_from_settings(settings: Dict[str, ConfigValue]) -> QuadratureSpec:
    kwargs = {k: settings[k] for k in _QUADRATURE_KEYS}
    return QuadratureSpec(**kwargs)
