"""JSON run configurations: schema, loading and ensemble construction."""
from dataclasses import dataclass, field
from importlib import resources
import json
from pathlib import Path

import jsonschema
import numpy as np

from . import classical
from .classical import DoubledSpace, WeightSpec
from .ensemble import EnsembleSpec, PointSpace, orthonormalize

FAMILIES = ("beta1", "beta2", "beta4", "biorthogonal", "custom")
OUTPUTS = ("rho", "kernel", "janossy", "gap", "partition")

_number = {"type": "number"}
_scalar = {"oneOf": [_number, {"type": "array", "items": _number, "minItems": 2, "maxItems": 2}]}
_matrix = {"type": "array", "items": {"type": "array", "items": _scalar}}

SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["ensemble"],
    "properties": {
        "name": {"type": "string"},
        "space": {
            "type": "object",
            "additionalProperties": False,
            "required": ["points"],
            "properties": {
                "points": {"type": "array", "items": _number, "minItems": 1},
                "weights": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}},
            },
        },
        "ensemble": {
            "type": "object",
            "additionalProperties": False,
            "required": ["family", "n"],
            "properties": {
                "family": {"enum": list(FAMILIES)},
                "n": {"type": "integer", "minimum": 1},
                "omega": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["kind"],
                    "properties": {
                        "kind": {"enum": list(classical.WEIGHT_KINDS)},
                        "values": {"type": "array", "items": _number},
                        "a": _number, "b": _number, "mean": _number, "std": _number,
                    },
                },
                "phi": _matrix,
                "epsilon": _matrix,
                "xi": _matrix,
                "psi": _matrix,
                "orthonormalize": {"type": "boolean"},
            },
        },
        "interval": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "quadrature": {
            "type": "object",
            "additionalProperties": False,
            "required": ["rule", "nodes"],
            "properties": {
                "rule": {"enum": list(classical.RULES)},
                "nodes": {"type": "integer", "minimum": 1},
            },
        },
        "outputs": {"type": "array", "items": {"enum": list(OUTPUTS)}},
        "tolerance": {"type": "number", "exclusiveMinimum": 0},
        "seed": {"type": "integer", "minimum": 0},
        "max_interval_size": {"type": "integer", "minimum": 1},
        "sample": {"type": "integer", "minimum": 1},
    },
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    """Validated run description.

    ``interval`` is given in base-point indices for the doubled families
    (beta2, beta4, biorthogonal) and lifted to both copies by :meth:`lift`.
    """

    name: str
    spec: EnsembleSpec
    family: str
    interval: list = None
    outputs: list = field(default_factory=lambda: list(OUTPUTS))
    tolerance: float = None
    seed: int = 0
    max_interval_size: int = 3
    sample: int = 40

    @property
    def doubled(self):
        return isinstance(self.spec.space, DoubledSpace)

    @property
    def base_size(self):
        return self.spec.space.base.m if self.doubled else self.spec.m

    def lift(self, base_subset):
        if self.doubled:
            return self.spec.space.lift(base_subset)
        bad = [i for i in base_subset if not 0 <= i < self.spec.m]
        if bad:
            raise IndexError(f"interval indices {bad} out of range [0, {self.spec.m})")
        return sorted(set(int(i) for i in base_subset))


def _complex_matrix(rows):
    return np.array([[complex(v[0], v[1]) if isinstance(v, list) else complex(v)
                      for v in row] for row in rows], dtype=complex)


def _base_space(raw, weight):
    quad = raw.get("quadrature")
    if quad is not None:
        if weight is None:
            raise ConfigError("quadrature needs an 'omega' family")
        if "space" in raw:
            raise ConfigError("give either 'space' or 'quadrature', not both")
        return classical.discretize(weight, quad["rule"], quad["nodes"]), None
    if "space" not in raw:
        raise ConfigError("missing 'space' (or 'quadrature')")
    pts = np.asarray(raw["space"]["points"], dtype=float)
    w = raw["space"].get("weights")
    if w is not None and len(w) != pts.size:
        raise ConfigError(f"{len(w)} weights for {pts.size} points")
    ref = PointSpace(pts, np.ones_like(pts) if w is None else np.asarray(w, dtype=float))
    return ref, weight


def build_spec(raw):
    ens = raw["ensemble"]
    family, n = ens["family"], ens["n"]
    weight = WeightSpec(**ens["omega"]) if "omega" in ens else None
    if family in ("beta1", "beta2", "beta4"):
        space, omega = _base_space(raw, weight)
        ctor = {"beta1": classical.beta1_spec, "beta2": classical.beta2_spec,
                "beta4": classical.beta4_spec}[family]
        spec = ctor(space, omega, n)
    elif family == "biorthogonal":
        space, omega = _base_space(raw, weight)
        if omega is not None:
            space = PointSpace(space.coords, space.weights * omega(space.coords))
        if "xi" not in ens or "psi" not in ens:
            raise ConfigError("biorthogonal family needs 'xi' and 'psi'")
        spec = classical.biorthogonal_spec(_complex_matrix(ens["xi"]), _complex_matrix(ens["psi"]),
                                           space)
    else:
        if "phi" not in ens or "epsilon" not in ens:
            raise ConfigError("custom family needs 'phi' and 'epsilon'")
        space, omega = _base_space(raw, weight)
        if omega is not None:
            space = PointSpace(space.coords, space.weights * omega(space.coords))
        spec = EnsembleSpec(space, n, _complex_matrix(ens["phi"]), _complex_matrix(ens["epsilon"]))
    if ens.get("orthonormalize", True):
        spec = orthonormalize(spec)
    return spec


def parse(raw, name="config"):
    """Validate a decoded JSON document and build the :class:`RunConfig`.

    Raises
    ------
    ConfigError
        On schema violations or inconsistent ensemble data.
    """
    try:
        jsonschema.validate(raw, SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"{path}: {exc.message}") from None
    try:
        spec = build_spec(raw)
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from None
    cfg = RunConfig(
        name=raw.get("name", name),
        spec=spec,
        family=raw["ensemble"]["family"],
        interval=raw.get("interval"),
        outputs=raw.get("outputs", list(OUTPUTS)),
        tolerance=raw.get("tolerance"),
        seed=raw.get("seed", 0),
        max_interval_size=raw.get("max_interval_size", 3),
        sample=raw.get("sample", 40),
    )
    if cfg.interval is not None:
        if any(i >= cfg.base_size for i in cfg.interval):
            raise ConfigError(f"interval indices must be below {cfg.base_size}")
    return cfg


def bundled_names():
    root = resources.files("pfjanossy") / "configs"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load(path_or_name):
    """Load a config file, or a bundled config by name (e.g. ``beta1-m6-n2``)."""
    path = Path(path_or_name)
    if path.is_file():
        text, name = path.read_text(), path.stem
    elif str(path_or_name) in bundled_names():
        name = str(path_or_name)
        text = (resources.files("pfjanossy") / "configs" / f"{name}.json").read_text()
    else:
        raise ConfigError(f"no config file or bundled config named {path_or_name!r}")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from None
    return parse(raw, name)
