"""
Injecting bridging faults and grading a test set
================================================

Shows the four fault classes on a small circuit: what a wired-AND or
wired-OR short does to the two nets, how a single pattern is judged,
and how a whole pattern list is graded in one call.
"""

from bridgetest import (
    BridgingFault,
    Polarity,
    TestPattern,
    bridge_values,
    detects,
    enumerate_faults,
    eval_faulty,
    eval_good,
    evaluate_test_set,
    expand_network,
    parse_circuit,
)

# f1 = c1 + x1 + x2: two single-control gates on one target line
circuit = parse_circuit(".n 2\n.p 1\n.gate c1 : x1\n.gate c1 : x2\n.end\n")
net = expand_network(circuit)

# the wired semantics themselves: both nets take the AND (or OR)
for pol in (Polarity.WIRED_AND, Polarity.WIRED_OR):
    rows = [bridge_values(a, b, pol) for a in (0, 1) for b in (0, 1)]
    print(f"{pol.value}: 00 01 10 11 -> " + " ".join(f"{x}{y}" for x, y in rows))
print()

# a bridge between the two AND outputs, wired-AND polarity
fault = BridgingFault.a_pair(1, 2, Polarity.WIRED_AND)
pattern = TestPattern("0", "10")
good = eval_good(net, pattern)
bad = eval_faulty(net, fault, pattern)
print(f"pattern {pattern.line()}: good a={good.a_values} out={good.outputs},"
      f" bridged a={bad.a_values} out={bad.outputs}")
print(f"detected: {detects(net, fault, pattern)}")
print()

# the full universe for this netlist, graded against three patterns
faults = enumerate_faults(net)
print(f"fault universe: {dict(faults.counts)}")
patterns = [TestPattern("0", "10"), TestPattern("0", "01"), TestPattern("1", "11")]
evaluation = evaluate_test_set(net, faults, patterns)
for verdict in evaluation.verdicts:
    where = verdict.fault.describe()
    extra = f" (pattern {verdict.pattern_index + 1})" if verdict.pattern_index is not None else ""
    print(f"  {where}: {verdict.status}{extra}")
print()

# the EXOR obligations stay open above: three ad-hoc patterns cannot show
# a gate all four input combinations.  The corner set exists for exactly that.
from bridgetest import gen_corner_set

with_corners = patterns + list(gen_corner_set(net.n, net.p).patterns)
evaluation = evaluate_test_set(net, faults, with_corners)
print(f"with the corner set added: {evaluation.count('detected')} of"
      f" {len(faults)} detected, masks = {[bin(m) for m in evaluation.masks]}")
