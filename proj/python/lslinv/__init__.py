"""Lippmann-Schwinger-Lanczos inversion.

Configs are plain dicts with the same schema as the JSON files under configs/.
Fields come back as numpy arrays shaped (ny, nx) in 2D and (nx,) in 1D.
"""

import json

import numpy as np

from . import _core
from ._core import Error

__all__ = [
    "Error",
    "load_config",
    "normalize_config",
    "make_medium",
    "generate_data",
    "invert",
    "run_experiment",
    "diagnose",
    "build_rom",
    "lanczos",
    "metrics",
]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def _shape(config):
    nodes = config["grid"]["nodes"]
    return (nodes[1], nodes[0]) if len(nodes) == 2 else (nodes[0],)


def _field(config, values):
    return np.asarray(values).reshape(_shape(config))


def load_config(path):
    with open(path) as f:
        return normalize_config(json.load(f))


def normalize_config(config):
    return json.loads(_core.normalize_config(_text(config)))


def make_medium(config):
    config = normalize_config(config)
    return _field(config, _core.make_medium(_text(config)))


def generate_data(config):
    return json.loads(_core.generate_data(_text(config)))


def invert(config, data):
    config = normalize_config(config)
    out = _core.invert(_text(config), _text(data))
    return {k: _field(config, v) for k, v in out.items()}


def run_experiment(config):
    config = normalize_config(config)
    out = _core.run_experiment(_text(config))
    return {
        "report": json.loads(out["report"]),
        "q_true": _field(config, out["q_true"]),
        "estimates": {k: _field(config, v) for k, v in out["estimates"].items()},
    }


def diagnose(config):
    return json.loads(_core.diagnose(_text(config)))


def build_rom(data):
    return _core.build_rom(_text(data))


def lanczos(data):
    return _core.lanczos(_text(data))


def metrics(config, q_hat, q_true):
    q_hat = np.ravel(np.asarray(q_hat, dtype=float))
    q_true = np.ravel(np.asarray(q_true, dtype=float))
    return json.loads(_core.metrics(_text(config), q_hat, q_true))
