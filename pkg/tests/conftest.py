import random
from pathlib import Path

import pytest
from hypothesis import settings

from bridgetest.circuit import Gate, ReversibleCircuit, parse_circuit

settings.register_profile("ci", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("ci")

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def bench_path() -> Path:
    return DATA / "bench7x3.rev"


@pytest.fixture(scope="session")
def and2_path() -> Path:
    return DATA / "and2.rev"


@pytest.fixture(scope="session")
def bench(bench_path):
    return parse_circuit(bench_path.read_text(), name="bench7x3")


@pytest.fixture(scope="session")
def and2(and2_path):
    return parse_circuit(and2_path.read_text(), name="and2")


def random_circuit(rng: random.Random, index: int = 0, *, max_n: int = 8,
                   max_p: int = 4, max_d: int = 10, width_cap: int = 12) -> ReversibleCircuit:
    """Well-formed random circuit inside the exhaustive-oracle envelope."""
    while True:
        n = rng.randint(1, max_n)
        p = rng.randint(1, max_p)
        if n + p <= width_cap:
            break
    d = rng.randint(1, max_d)
    gates = []
    for gid in range(1, d + 1):
        k = rng.randint(1, min(n, 4))
        controls = frozenset(rng.sample(range(1, n + 1), k))
        gates.append(Gate(controls, rng.randint(1, p), gid))
    return ReversibleCircuit(n, p, tuple(gates), name=f"rand{index}")
