import numpy as np
import pytest

from multiplex_entanglement import kernels
from multiplex_entanglement.network import MultiplexNetwork

BACKENDS = {
    "numba": {
        "cooccurrence_counts": kernels.cooccurrence_counts_numba,
        "power_iteration": kernels.power_iteration_numba,
        "component_labels": kernels.component_labels_numba,
        "unrank_pairs": kernels.unrank_pairs_numba,
    },
    "numpy": {
        "cooccurrence_counts": kernels.cooccurrence_counts_numpy,
        "power_iteration": kernels.power_iteration_numpy,
        "component_labels": kernels.component_labels_numpy,
        "unrank_pairs": kernels.unrank_pairs_numpy,
    },
}


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return BACKENDS[request.param]


@pytest.fixture
def toy_net():
    """A={(1,2),(2,3)}, B={(1,2)}."""
    net = MultiplexNetwork()
    net.add_edge(1, 2, "A").add_edge(2, 3, "A").add_edge(1, 2, "B")
    return net


def random_multiplex(rng, max_nodes=15, max_layers=6):
    """Small random multiplex with per-layer random density."""
    n = int(rng.integers(2, max_nodes + 1))
    k = int(rng.integers(1, max_layers + 1))
    net = MultiplexNetwork()
    for layer in range(k):
        density = rng.uniform(0.05, 0.9)
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < density:
                    net.add_edge(i, j, f"L{layer}")
    return net


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "skipped", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::" not in nodeid:
                continue
            if outcome == "passed" and rep.when != "call":
                continue
            lines.append((nodeid.split("::", 1)[1], outcome.upper()))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, outcome in sorted(lines):
            status = {"PASSED": "PASS", "FAILED": "FAIL", "ERROR": "FAIL", "SKIPPED": "SKIP"}[outcome]
            terminalreporter.write_line(f"{status:5s} {name}")
