"""
Cross-checking generated sets against the exhaustive oracle
===========================================================

Generates random circuits small enough for the truth-table oracle,
builds the test sets for each, and confirms that every bridging fault
the oracle calls detectable really is caught.  This is a compact
version of what the acceptance suite runs over 100 circuits.
"""

import random

from bridgetest import (
    FaultKind,
    Gate,
    ReversibleCircuit,
    assemble_union,
    derive_pprm,
    enumerate_faults,
    evaluate_test_set,
    exhaustive_detectability,
    expand_network,
    fallback_search,
    generate_sets,
)

rng = random.Random(2718)


def random_circuit(index: int) -> ReversibleCircuit:
    n, p = rng.randint(2, 6), rng.randint(1, 3)
    gates = [
        Gate(frozenset(rng.sample(range(1, n + 1), rng.randint(1, min(n, 3)))),
             rng.randint(1, p), gid)
        for gid in range(1, rng.randint(2, 8) + 1)
    ]
    return ReversibleCircuit(n, p, tuple(gates), name=f"rand{index}")


checked = missed = redundant = 0
for index in range(20):
    circuit = random_circuit(index)
    net = expand_network(circuit)
    faults = enumerate_faults(net)

    result = generate_sets(derive_pprm(circuit), net)
    base = assemble_union(result.ordered_sets())
    first = evaluate_test_set(net, faults, base.test_set.patterns)
    fb = fallback_search(net, first.faults_with("undetected"))
    union = assemble_union(result.ordered_sets(), fb.patterns)
    final = evaluate_test_set(net, faults, union.test_set.patterns)

    status = {v.fault: v.status for v in final.verdicts}
    for fault in faults:
        if fault.kind is FaultKind.EXOR_INTERNAL:
            continue
        checked += 1
        if exhaustive_detectability(net, fault).detectable:
            if status[fault] != "detected":
                missed += 1
                print(f"MISS on {circuit.name}: {fault.describe()}")
        else:
            redundant += 1

print(f"{checked} faults across 20 circuits: {missed} misses,"
      f" {redundant} provably redundant")
assert missed == 0
