"""Bit-accurate good and faulty evaluation, stimulation masks, and the
exhaustive detectability oracle.

Two independent evaluation routes live here.  The pattern simulator walks
one assignment at a time through the netlist and is what test generation
and coverage grading use.  The oracle evaluates all full assignments at
once on integer truth-table columns (bit v of a column is the net's value
under assignment v) and is the ground truth for detectability claims.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .faults import BridgingFault, FaultKind, FaultList, Polarity, bridge_values
from .network import AndExorNetwork
from .patterns import TestPattern

__all__ = [
    "SimulationResult",
    "eval_good",
    "eval_faulty",
    "detects",
    "exor_stimulation_mask",
    "FULL_MASK",
    "OracleCapExceeded",
    "OracleResult",
    "exhaustive_detectability",
    "FaultVerdict",
    "Evaluation",
    "evaluate_test_set",
]

FULL_MASK = 0b1111
DEFAULT_ORACLE_CAP = 22


@dataclass(frozen=True)
class SimulationResult:
    """Values of every net after one evaluation."""

    outputs: tuple[int, ...]
    x_values: tuple[int, ...]
    a_values: tuple[int, ...]
    cascade: tuple[tuple[int, ...], ...]  # cascade[j-1][level]


def _resolved_bits(
    network: AndExorNetwork, pattern: TestPattern, dc_policy: str
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if len(pattern.c) != network.p or len(pattern.x) != network.n:
        raise ValueError(
            f"pattern dimension mismatch: got p={len(pattern.c)} n={len(pattern.x)}, "
            f"network has p={network.p} n={network.n}"
        )
    return pattern.resolve(dc_policy)


def _simulate(
    network: AndExorNetwork,
    c_bits: Sequence[int],
    x_bits: Sequence[int],
    fault: BridgingFault | None,
) -> SimulationResult:
    x = list(x_bits)
    if fault is not None and fault.kind is FaultKind.X_PAIR:
        i, j = fault.ids
        x[i - 1], x[j - 1] = bridge_values(x[i - 1], x[j - 1], fault.polarity)

    a = [1 if all(x[v - 1] for v in sup) else 0 for sup in network.gate_supports]
    if fault is not None and fault.kind is FaultKind.A_PAIR:
        i, j = fault.ids
        a[i - 1], a[j - 1] = bridge_values(a[i - 1], a[j - 1], fault.polarity)

    intra = fault if fault is not None and fault.kind is FaultKind.INTRA_LEVEL else None
    w = list(c_bits)
    history = [tuple(w)]
    if intra is not None and intra.ids[0] == 0:
        _, j1, j2 = intra.ids
        w[j1 - 1], w[j2 - 1] = bridge_values(w[j1 - 1], w[j2 - 1], intra.polarity)
        history[0] = tuple(w)
    for gate_id, target in enumerate(network.gate_targets, start=1):
        w[target - 1] ^= a[gate_id - 1]
        if intra is not None and intra.ids[0] == gate_id:
            _, j1, j2 = intra.ids
            w[j1 - 1], w[j2 - 1] = bridge_values(w[j1 - 1], w[j2 - 1], intra.polarity)
        history.append(tuple(w))

    cascade = tuple(tuple(col[j] for col in history) for j in range(network.p))
    return SimulationResult(tuple(w), tuple(x), tuple(a), cascade)


def eval_good(
    network: AndExorNetwork, pattern: TestPattern, dc_policy: str = "fill-zero"
) -> SimulationResult:
    """Fault-free evaluation of one pattern."""
    c, x = _resolved_bits(network, pattern, dc_policy)
    return _simulate(network, c, x, None)


def eval_faulty(
    network: AndExorNetwork,
    fault: BridgingFault,
    pattern: TestPattern,
    dc_policy: str = "fill-zero",
) -> SimulationResult:
    """Evaluation with one injected bridge.

    ExorInternal is an exhaustive-stimulation obligation, not an injectable
    defect, so passing one here is a usage error.
    """
    if fault.kind is FaultKind.EXOR_INTERNAL:
        raise ValueError("ExorInternal faults are graded by stimulation masks, not injection")
    c, x = _resolved_bits(network, pattern, dc_policy)
    return _simulate(network, c, x, fault)


def detects(
    network: AndExorNetwork,
    fault: BridgingFault,
    pattern: TestPattern,
    dc_policy: str = "fill-zero",
) -> bool:
    """True when the pattern distinguishes faulty outputs from good outputs."""
    c, x = _resolved_bits(network, pattern, dc_policy)
    return _simulate(network, c, x, None).outputs != _simulate(network, c, x, fault).outputs


def exor_stimulation_mask(
    network: AndExorNetwork,
    patterns: Iterable[TestPattern],
    dc_policy: str = "fill-zero",
) -> list[int]:
    """4-bit mask per gate of the (left,right) EXOR input combinations seen.

    Bit (2*left + right) is set when the combination occurred under some
    pattern.  A full mask (0b1111) discharges the gate's ExorInternal
    obligation.
    """
    masks = [0] * network.d
    for pattern in patterns:
        sim = eval_good(network, pattern, dc_policy)
        for gate_id, target in enumerate(network.gate_targets, start=1):
            left = sim.cascade[target - 1][gate_id - 1]
            right = sim.a_values[gate_id - 1]
            masks[gate_id - 1] |= 1 << (left * 2 + right)
    return masks


class OracleCapExceeded(RuntimeError):
    """The exhaustive oracle refuses inputs wider than its cap."""


@dataclass(frozen=True)
class OracleResult:
    status: str  # "detectable" or "redundant"
    witness: TestPattern | None = None

    @property
    def detectable(self) -> bool:
        return self.status == "detectable"


def _input_column(pos_from_left: int, width: int) -> int:
    # Truth-table column of one input over all 2^width assignments, built by
    # doubling.  Assignment v is bit v; the leftmost pattern symbol is the
    # most significant bit of v, so smaller v means lexicographically
    # smaller pattern.
    bit = width - 1 - pos_from_left
    run = 1 << bit
    col = ((1 << run) - 1) << run
    span = run << 1
    total = 1 << width
    while span < total:
        col |= col << span
        span <<= 1
    return col


def exhaustive_detectability(
    network: AndExorNetwork,
    fault: BridgingFault,
    cap: int = DEFAULT_ORACLE_CAP,
) -> OracleResult:
    """Try every full assignment; first detecting pattern in lexicographic order.

    Assignments are ordered with the c bits most significant, matching the
    pattern string layout.  A constant-one line is pinned: assignments that
    drive it to 0 are never counted as witnesses.  Raises OracleCapExceeded
    when n + p exceeds ``cap``; callers must surface that, not skip it.
    """
    if fault.kind is FaultKind.EXOR_INTERNAL:
        raise ValueError("ExorInternal faults are graded by stimulation masks, not injection")
    width = network.n + network.p
    if width > cap:
        raise OracleCapExceeded(f"n + p = {width} exceeds oracle cap {cap}")

    c_cols = [_input_column(j, width) for j in range(network.p)]
    x_cols = [_input_column(network.p + i, width) for i in range(network.n)]
    ones = (1 << (1 << width)) - 1

    def run(bridged: BridgingFault | None) -> list[int]:
        x = list(x_cols)
        if bridged is not None and bridged.kind is FaultKind.X_PAIR:
            i, j = bridged.ids
            x[i - 1], x[j - 1] = _bridge_cols(x[i - 1], x[j - 1], bridged.polarity)
        a = []
        for sup in network.gate_supports:
            col = ones
            for v in sup:
                col &= x[v - 1]
            a.append(col)
        if bridged is not None and bridged.kind is FaultKind.A_PAIR:
            i, j = bridged.ids
            a[i - 1], a[j - 1] = _bridge_cols(a[i - 1], a[j - 1], bridged.polarity)
        intra = bridged if bridged is not None and bridged.kind is FaultKind.INTRA_LEVEL else None
        w = list(c_cols)
        if intra is not None and intra.ids[0] == 0:
            _, j1, j2 = intra.ids
            w[j1 - 1], w[j2 - 1] = _bridge_cols(w[j1 - 1], w[j2 - 1], intra.polarity)
        for gate_id, target in enumerate(network.gate_targets, start=1):
            w[target - 1] ^= a[gate_id - 1]
            if intra is not None and intra.ids[0] == gate_id:
                _, j1, j2 = intra.ids
                w[j1 - 1], w[j2 - 1] = _bridge_cols(w[j1 - 1], w[j2 - 1], intra.polarity)
        return w

    good = run(None)
    faulty = run(fault)
    diff = 0
    for g, f in zip(good, faulty):
        diff |= g ^ f
    if network.constant_line is not None:
        diff &= x_cols[network.constant_line - 1]
    if diff == 0:
        return OracleResult("redundant")

    v = (diff & -diff).bit_length() - 1
    bits = format(v, f"0{width}b")
    return OracleResult(
        "detectable", TestPattern(bits[: network.p], bits[network.p :], origin="Fallback")
    )


def _bridge_cols(col1: int, col2: int, polarity: Polarity) -> tuple[int, int]:
    col = col1 & col2 if polarity is Polarity.WIRED_AND else col1 | col2
    return col, col


@dataclass(frozen=True)
class FaultVerdict:
    fault: BridgingFault
    status: str  # "detected" | "undetected" | "redundant" | "unresolved"
    pattern_index: int | None = None
    method: str | None = None  # "simulation" | "stimulation" | "exhaustive" | "random" | "constant-line"


@dataclass
class Evaluation:
    """Per-fault verdicts of one test set, in fault-enumeration order."""

    verdicts: list[FaultVerdict]
    masks: list[int]
    dc_policy: str = "fill-zero"

    def count(self, status: str) -> int:
        return sum(1 for v in self.verdicts if v.status == status)

    def coverage(self) -> float:
        testable = len(self.verdicts) - self.count("redundant")
        if testable == 0:
            return 1.0
        return self.count("detected") / testable

    def faults_with(self, status: str) -> list[BridgingFault]:
        return [v.fault for v in self.verdicts if v.status == status]


def _grade_fault(
    network: AndExorNetwork,
    fault: BridgingFault,
    resolved: list[tuple[tuple[int, ...], tuple[int, ...]]],
    good_outputs: list[tuple[int, ...]],
    mask_full_at: dict[int, int],
) -> FaultVerdict:
    if fault.kind is FaultKind.EXOR_INTERNAL:
        gate_id = fault.ids[0]
        sup = network.gate_supports[gate_id - 1]
        if network.constant_line is not None and sup <= {network.constant_line}:
            # The AND value is pinned, so two of the four combinations can
            # never be applied: the obligation is unsatisfiable by design.
            return FaultVerdict(fault, "redundant", None, "constant-line")
        at = mask_full_at.get(gate_id)
        if at is None:
            return FaultVerdict(fault, "undetected")
        return FaultVerdict(fault, "detected", at, "stimulation")

    for idx, (c, x) in enumerate(resolved):
        if _simulate(network, c, x, fault).outputs != good_outputs[idx]:
            return FaultVerdict(fault, "detected", idx, "simulation")
    return FaultVerdict(fault, "undetected")


def evaluate_test_set(
    network: AndExorNetwork,
    faults: FaultList | Sequence[BridgingFault],
    patterns: Sequence[TestPattern],
    dc_policy: str = "fill-zero",
    jobs: int = 1,
) -> Evaluation:
    """Grade every fault against the pattern list.

    Detected faults record the first detecting pattern index (or, for
    ExorInternal, the index at which the stimulation mask became full).
    Verdicts come back in fault order regardless of ``jobs``.
    """
    fault_seq = list(faults)
    resolved = [_resolved_bits(network, pat, dc_policy) for pat in patterns]
    good_sims = [_simulate(network, c, x, None) for c, x in resolved]
    good_outputs = [sim.outputs for sim in good_sims]

    # Incremental masks so each gate knows when its obligation completed.
    masks = [0] * network.d
    mask_full_at: dict[int, int] = {}
    for idx, sim in enumerate(good_sims):
        for gate_id, target in enumerate(network.gate_targets, start=1):
            if gate_id in mask_full_at:
                continue
            left = sim.cascade[target - 1][gate_id - 1]
            right = sim.a_values[gate_id - 1]
            masks[gate_id - 1] |= 1 << (left * 2 + right)
            if masks[gate_id - 1] == FULL_MASK:
                mask_full_at[gate_id] = idx

    def grade(fault: BridgingFault) -> FaultVerdict:
        return _grade_fault(network, fault, resolved, good_outputs, mask_full_at)

    if jobs > 1 and len(fault_seq) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            verdicts = list(pool.map(grade, fault_seq))
    else:
        verdicts = [grade(f) for f in fault_seq]

    return Evaluation(verdicts, masks, dc_policy)
