import json
import os
import sys

import numpy as np
import pytest

import lslinv

CONFIGS = os.environ.get(
    "LSLINV_CONFIG_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "configs")
)


def config(name):
    return lslinv.load_config(os.path.join(CONFIGS, name + ".json"))


def test_medium_shape_and_peak():
    c = config("experiment1")
    q = lslinv.make_medium(c)
    assert q.shape == (41, 41)
    assert q.max() == pytest.approx(0.1, rel=0.05)


def test_forward_then_invert_matches_experiment():
    c = config("benchmark1d")
    data = lslinv.generate_data(c)
    assert len(data["points"]) == len(c["spectra"]["values"])
    c_inv = dict(c, methods=["LSL", "BORN"])
    est = lslinv.invert(c_inv, data)
    run = lslinv.run_experiment(c)
    assert est["LSL"].shape == (401,)
    np.testing.assert_array_equal(est["LSL"], run["estimates"]["LSL"])
    err = lslinv.metrics(c, est["LSL"], run["q_true"])["relative_l2"]
    assert err < 0.5


def test_lanczos_orthonormal():
    c = config("benchmark1d")
    # A wide spectral window keeps M well conditioned.
    c["spectra"]["values"] = list(np.geomspace(1.0, 16384.0, 6))
    data = lslinv.generate_data(c)
    mass, stiffness, moments = lslinv.build_rom(data)
    t, q, beta = lslinv.lanczos(data)
    assert t.shape == (6, 6)
    np.testing.assert_allclose(t, t.T, atol=0)
    gram = q.conj().T @ mass @ q
    assert np.abs(gram - np.eye(6)).max() < 1e-10


def test_errors_carry_kind():
    c = config("experiment1")
    c["tsvd"]["threshold"] = 0.0
    with pytest.raises(lslinv.Error) as info:
        lslinv.normalize_config(c)
    assert info.value.kind == "ConfigError"
    c = config("experiment1")
    with pytest.raises(lslinv.Error):
        lslinv.invert(c, lslinv.generate_data(c))  # CHEATED without the medium


def test_diagnose_report():
    r = lslinv.diagnose(config("benchmark1d"))
    assert max(e["ratio"] for e in r["conjecture"]) <= 0.2


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
