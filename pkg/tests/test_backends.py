"""The environment flag swaps every kernel for its numpy twin."""

import json
import os
import subprocess
import sys

import pytest

from multiplex_entanglement import _accel

SCRIPT = r"""
import json
from multiplex_entanglement import backend_name, kernels
from multiplex_entanglement.generator import GeneratorConfig, generate
from multiplex_entanglement.entanglement import analyze
net = generate(GeneratorConfig(120, 4, 0.6, seed=31))
rows = analyze(net)
print(json.dumps({
    "backend": backend_name(),
    "kernel": kernels.power_iteration.__name__ if hasattr(kernels.power_iteration, "__name__") else "",
    "edges": net.num_edges,
    "rows": [[r.component_id, r.lambda_max, r.homogeneity] for r in rows],
}))
"""


def _run(flag):
    env = dict(os.environ)
    env.pop("MXENT_DISABLE_NUMBA", None)
    if flag is not None:
        env["MXENT_DISABLE_NUMBA"] = flag
    out = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


@pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")
def test_flag_switches_backend_with_identical_results():
    fast = _run(None)
    slow = _run("1")
    assert fast["backend"] == "numba"
    assert slow["backend"] == "numpy"
    assert slow["kernel"] == "power_iteration_numpy"
    assert fast["edges"] == slow["edges"]
    for a, b in zip(fast["rows"], slow["rows"]):
        assert a[0] == b[0]
        assert abs(a[1] - b[1]) < 1e-12
        assert abs(a[2] - b[2]) < 1e-12


@pytest.mark.parametrize("value, disabled", [("1", True), ("true", True), ("0", False), ("", False)])
def test_flag_parsing(monkeypatch, value, disabled):
    monkeypatch.setenv("MXENT_DISABLE_NUMBA", value)
    assert _accel._flag_set() is disabled
