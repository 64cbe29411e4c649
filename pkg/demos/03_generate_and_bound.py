"""
Building the five test sets and checking the size bound
=======================================================

Runs the full generation pipeline on the benchmark: T1 corners for the
EXOR obligations, T2/T3 splitting constructions for input bridges, T4
halving patterns for cascade bridges, T5 walking zeros for AND-output
bridges.  The union is then graded, repaired where needed, and checked
against 3n + ceil(log2 p) + 2.
"""

from bridgetest import (
    assemble_union,
    benchmark_circuit,
    check_bound,
    derive_pprm,
    enumerate_faults,
    evaluate_test_set,
    expand_network,
    fallback_search,
    generate_sets,
)

circuit = benchmark_circuit()
net = expand_network(circuit)
pprms = derive_pprm(circuit)

result = generate_sets(pprms, net)
for name, ts in result.sets.items():
    print(f"{name} ({ts.target_class}): {len(ts)} patterns")
    for pat in ts:
        print(f"  {pat.line()}")
print()

# grade the union, then let the fallback handle whatever is left
faults = enumerate_faults(net)
union = assemble_union(result.ordered_sets())
evaluation = evaluate_test_set(net, faults, union.test_set.patterns)
missed = evaluation.faults_with("undetected")
print(f"union of {union.pre_dedup_size}: {evaluation.count('detected')} of"
      f" {len(faults)} faults detected, {len(missed)} left")

fb = fallback_search(net, missed)
for fault, method in fb.redundant.items():
    print(f"  {fault.describe()}: redundant ({method} proof)")
if fb.patterns:
    print(f"  repair patterns added: {[p.line() for p in fb.patterns]}")
print()

# the bound counts the construction before any deduplication
report = check_bound(union, len(net.real_inputs()), net.p)
print(f"bound: {report.size} <= {report.bound} -> {'pass' if report.passed else 'FAIL'}")

# duplicates across sets can still be dropped for the actual tester load
deduped = assemble_union(result.ordered_sets(), dedup=True)
print(f"after dedup: {len(deduped.test_set)} patterns ({deduped.removed} removed)")
