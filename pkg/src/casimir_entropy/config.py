"""Flat ``key = value`` configuration files with ``[section]`` headers.

A configuration describes one physical system and, for sweeps, a grid of
parameter values. All sections are optional except where a target needs
them::

    [sweep]
    target = residual_entropy      # see TARGETS
    output = out/residual.csv

    [model]
    kind = drude                   # drude | dc | perfect
    omega_p = 1.0
    gamma = 0.1                    # drude only (default 0)
    eps0 = 5.0                     # dc only
    sigma = 0.0                    # dc only (default 0)

    [geometry]
    kind = planar                  # planar | sphereplane
    a = 1.0                        # planar separation
    eps = 0.5                      # sphereplane: R/L (or give L)
    R = 1.0                        # sphereplane radius (default 1)

    [law]                          # optional: mu(T) = mu1 T**alpha
    mu1 = 1.0
    alpha = 2.0

    [state]
    T = 1e-3

    [numerics]
    tol = 1e-9
    l_m = 4                        # ball truncation, linear term
    l_m_g = 8                      # ball truncation, T**2 coefficients

    [grid]                         # swept parameters, Cartesian product
    T = log:1e-4:1e-2:5            # log:lo:hi:count
    eps = 0.1:0.9:9                # lo:hi:count (linear)
    eps0 = 2, 5, 10                # explicit list

Every parameter name is unique across sections, so grid keys simply name
the parameter they replace.
"""
import configparser
import hashlib
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError

#: parameter name -> (section, type)
PARAMETERS = {
    "omega_p": ("model", float),
    "gamma": ("model", float),
    "eps0": ("model", float),
    "sigma": ("model", float),
    "a": ("geometry", float),
    "eps": ("geometry", float),
    "R": ("geometry", float),
    "L": ("geometry", float),
    "mu1": ("law", float),
    "alpha": ("law", float),
    "T": ("state", float),
    "tol": ("numerics", float),
    "l_m": ("numerics", int),
    "l_m_g": ("numerics", int),
}
KINDS = {"model": ("drude", "dc", "perfect"), "geometry": ("planar", "sphereplane")}
DEFAULTS = {"tol": 1e-9, "l_m": 4, "l_m_g": 8, "R": 1.0}

HELP = __doc__


@dataclass(frozen=True)
class SweepSpec:
    """Target quantity, fixed parameters, grid axes (in file order) and output path."""

    target: str
    model_kind: str
    geometry_kind: str
    params: dict
    grid: tuple
    output: Path

    @property
    def rows(self):
        """Parameter dicts of all grid points, last axis fastest."""
        names = [name for name, _ in self.grid]
        for values in _product([vals for _, vals in self.grid]):
            row = dict(self.params)
            row.update(zip(names, values))
            yield row

    @property
    def size(self):
        return math.prod(len(v) for _, v in self.grid)

    def fingerprint(self):
        """Hash of the canonical configuration (identifies complete outputs)."""
        text = repr((self.target, self.model_kind, self.geometry_kind,
                     sorted(self.params.items()), self.grid))
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def _product(axes):
    if not axes:
        yield ()
        return
    for head in axes[0]:
        for tail in _product(axes[1:]):
            yield (head,) + tail


def _number(text, kind, key):
    try:
        return kind(text)
    except ValueError:
        # integers may be written as 4.0
        try:
            value = float(text)
        except ValueError:
            raise ConfigError(f"{key}: cannot parse {text!r} as a number") from None
        if kind is int and value == int(value):
            return int(value)
        raise ConfigError(f"{key}: expected {kind.__name__}, got {text!r}") from None


def parse_axis(key, text):
    """Grid axis from ``lo:hi:count``, ``log:lo:hi:count`` or a comma list."""
    kind = PARAMETERS[key][1]
    text = text.strip()
    if ":" in text:
        parts = [p.strip() for p in text.split(":")]
        log = parts[0] == "log"
        if log:
            parts = parts[1:]
        if len(parts) != 3:
            raise ConfigError(f"grid {key}: expected [log:]lo:hi:count, got {text!r}")
        lo, hi = _number(parts[0], float, key), _number(parts[1], float, key)
        count = _number(parts[2], int, key)
        if count < 1:
            raise ConfigError(f"grid {key}: count must be >= 1")
        if log:
            if not (lo > 0 and hi > 0):
                raise ConfigError(f"grid {key}: log axes need positive bounds")
            values = np.geomspace(lo, hi, count)
        else:
            values = np.linspace(lo, hi, count)
        values = [kind(v) for v in values]
    else:
        values = [_number(v.strip(), kind, key) for v in text.split(",") if v.strip()]
    if not values:
        raise ConfigError(f"grid {key}: empty axis")
    return tuple(values)


def read_config(path):
    """Parse a configuration file into (parser, params, grid)."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str            # keep R and L upper case
    path = Path(path)
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except configparser.Error as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from None
    params = dict(DEFAULTS)
    for section in parser.sections():
        if section in ("sweep", "grid", "validate"):
            continue
        for key, text in parser.items(section):
            if key == "kind":
                continue
            if key not in PARAMETERS:
                raise ConfigError(f"unknown key {key!r} in [{section}]")
            if PARAMETERS[key][0] != section:
                raise ConfigError(f"key {key!r} belongs in [{PARAMETERS[key][0]}], not [{section}]")
            params[key] = _number(text, PARAMETERS[key][1], key)
    grid = []
    if parser.has_section("grid"):
        for key, text in parser.items("grid"):
            if key not in PARAMETERS:
                raise ConfigError(f"unknown grid key {key!r}")
            grid.append((key, parse_axis(key, text)))
    return parser, params, tuple(grid)


def _kind(parser, section):
    if not parser.has_option(section, "kind"):
        raise ConfigError(f"missing key 'kind' in [{section}]")
    kind = parser.get(section, "kind").strip().lower()
    if kind not in KINDS[section]:
        raise ConfigError(f"[{section}] kind must be one of {', '.join(KINDS[section])}, got {kind!r}")
    return kind


def load_sweep(path, output=None):
    """Read a sweep configuration into a :class:`SweepSpec`."""
    from .targets import TARGETS, check_params

    parser, params, grid = read_config(path)
    if not parser.has_section("sweep"):
        raise ConfigError("missing section [sweep]")
    for key in ("target", "output"):
        if key not in parser["sweep"] and not (key == "output" and output):
            raise ConfigError(f"missing key {key!r} in [sweep]")
    target = parser.get("sweep", "target").strip()
    if target not in TARGETS:
        raise ConfigError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")
    out = Path(output) if output else Path(parser.get("sweep", "output").strip())
    spec = SweepSpec(target, _kind(parser, "model"), _kind(parser, "geometry"), params, grid, out)
    check_params(spec.target, spec.model_kind, spec.geometry_kind, set(params) | {k for k, _ in grid})
    return spec


def load_system(path):
    """Read a single-point configuration (the ``entropy`` subcommand)."""
    from .targets import check_params

    parser, params, grid = read_config(path)
    if grid:
        raise ConfigError("the entropy command takes a single point; remove [grid] or use sweep")
    model_kind, geometry_kind = _kind(parser, "model"), _kind(parser, "geometry")
    check_params("entropy", model_kind, geometry_kind, set(params))
    return model_kind, geometry_kind, params
