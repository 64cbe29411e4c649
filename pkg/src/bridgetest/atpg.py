"""Test-set construction for the four bridging-fault classes.

Five named sets are built per circuit:

* T1: the four all-zero/all-one corner patterns.  Across them every gate's
  EXOR sees all four input combinations, discharging ExorInternal.
* T2: support-guided binary splitting of the input set.  Each accepted
  pattern drives one gate's support to 1 and everything else to 0, and is
  kept only if simulation confirms it detects every wired-AND input pair
  across the split.
* T3: parity-matrix driven patterns for wired-OR input pairs.  Case (a)
  handles variables with an odd diagonal count, case (b) pairs a variable
  with an odd joint count, case (c) retries both after restricting chosen
  variables to 0.  Every claim is confirmed by simulation before the
  partition is refined.
* T4: ceil(log2 p) halving patterns over the c lines with x all zero; every
  pair of cascade columns is driven to opposite values somewhere.
* T5: n walking-zero patterns separating AND outputs with distinct support.

T2 and T3 each refine a partition of the inputs and therefore emit at most
n - 1 patterns; with T1's 4, T4's ceil(log2 p), and T5's n, the union stays
within 3n + ceil(log2 p) + 2 whenever no fallback pattern is needed.
Fallback repair consults the exhaustive oracle per missed fault.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .faults import BridgingFault, FaultKind, Polarity
from .network import AndExorNetwork
from .patterns import TestPattern, TestSet
from .pprm import PprmFunction, restrict
from .simulate import (
    DEFAULT_ORACLE_CAP,
    detects,
    exhaustive_detectability,
)

__all__ = [
    "count_terms",
    "count_union",
    "ParityMatrix",
    "build_parity_matrix",
    "TreeNode",
    "PartitionTree",
    "gen_corner_set",
    "gen_input_and_tests",
    "gen_input_or_tests",
    "gen_cascade_pair_tests",
    "gen_walking_zero_tests",
    "SET_NAMES",
    "GenerationResult",
    "generate_sets",
    "UnionResult",
    "assemble_union",
    "BoundReport",
    "ceil_log2",
    "check_bound",
    "FallbackResult",
    "fallback_search",
]

SET_NAMES = ("T1", "T2", "T3", "T4", "T5")


def count_terms(pprm_list: Sequence[PprmFunction], k: int, variables: Iterable[int]) -> int:
    """Number of physical AND gates of output k whose term contains all of
    ``variables`` (one or two of them)."""
    need = frozenset(variables)
    if not 1 <= len(need) <= 2:
        raise ValueError("count_terms takes one or two variables")
    f = pprm_list[k - 1]
    return sum(1 for t in f.term_multiset if need <= t)


def count_union(pprm_list: Sequence[PprmFunction], k: int, i: int, j: int) -> int:
    """Inclusion-exclusion count of terms containing x_i or x_j."""
    return (
        count_terms(pprm_list, k, {i})
        + count_terms(pprm_list, k, {j})
        - count_terms(pprm_list, k, {i, j})
    )


@dataclass(frozen=True)
class ParityMatrix:
    """Symmetric 0/1 matrix: entry (i,j) is 1 when some output has an odd
    number of terms containing both x_i and x_j (just x_i on the diagonal)."""

    order: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    def get(self, i: int, j: int) -> int:
        return self.rows[self.order.index(i)][self.order.index(j)]

    def is_zero(self) -> bool:
        return all(all(v == 0 for v in row) for row in self.rows)


def build_parity_matrix(
    pprm_list: Sequence[PprmFunction], active_vars: Iterable[int]
) -> ParityMatrix:
    order = tuple(sorted(active_vars))
    outputs = range(1, len(pprm_list) + 1)
    rows = []
    for i in order:
        row = []
        for j in order:
            vs = {i} if i == j else {i, j}
            bit = 1 if any(count_terms(pprm_list, k, vs) % 2 for k in outputs) else 0
            row.append(bit)
        rows.append(tuple(row))
    return ParityMatrix(order, tuple(rows))


# ---------------------------------------------------------------------------
# T1

def gen_corner_set(n: int, p: int, *, constant_line: int | None = None) -> TestSet:
    """Four corner patterns; the constant line, if any, stays at 1."""
    zero_x = "".join("1" if v == constant_line else "0" for v in range(1, n + 1))
    one_x = "1" * n
    rows = [("0" * p, zero_x), ("0" * p, one_x), ("1" * p, zero_x), ("1" * p, one_x)]
    return TestSet(
        "T1",
        [TestPattern(c, x, origin="T1") for c, x in rows],
        target_class=FaultKind.EXOR_INTERNAL.value,
    )


# ---------------------------------------------------------------------------
# T2

@dataclass
class TreeNode:
    block: tuple[int, ...]
    gate_id: int | None = None
    pattern: TestPattern | None = None
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None and self.right is None


@dataclass
class PartitionTree:
    """Binary refinement tree over the input indices built by T2."""

    root: TreeNode | None

    def _walk(self):
        stack = [self.root] if self.root else []
        while stack:
            node = stack.pop()
            yield node
            if node.left:
                stack.append(node.left)
            if node.right:
                stack.append(node.right)

    def internal_count(self) -> int:
        return sum(1 for node in self._walk() if not node.is_leaf)

    def stuck_blocks(self) -> list[tuple[int, ...]]:
        """Leaves that still hold more than one variable."""
        return sorted(node.block for node in self._walk() if node.is_leaf and len(node.block) > 1)

    def uncovered_pairs(self) -> list[tuple[int, int]]:
        pairs = []
        for block in self.stuck_blocks():
            pairs.extend(itertools.combinations(block, 2))
        return sorted(pairs)


def gen_input_and_tests(
    pprm_list: Sequence[PprmFunction],
    network: AndExorNetwork,
    *,
    dc_policy: str = "fill-zero",
) -> tuple[TestSet, PartitionTree]:
    """Binary-split T2 construction for wired-AND input bridges.

    For the current block, gates whose support properly intersects it are
    tried smallest support first (gate id breaks ties).  The candidate
    pattern sets the gate's support to 1 and every other input to 0; it is
    accepted only if simulation confirms detection of every wired-AND pair
    across the induced split.  Blocks no candidate can split are left as
    stuck leaves for fallback.
    """
    aux = network.constant_line
    variables = network.real_inputs()
    patterns: list[TestPattern] = []

    candidates = sorted(
        (len(sup), gid) for gid, sup in enumerate(network.gate_supports, start=1)
    )

    def make_pattern(support: frozenset) -> TestPattern:
        bits = "".join(
            "1" if v == aux or v in support else "0" for v in range(1, network.n + 1)
        )
        return TestPattern("d" * network.p, bits, origin="T2")

    def split(block: tuple[int, ...]) -> TreeNode:
        if len(block) <= 1:
            return TreeNode(block=block)
        bset = frozenset(block)
        for _, gid in candidates:
            support = network.gate_supports[gid - 1]
            inter = (support - {aux}) & bset
            if not inter or inter == bset:
                continue
            pattern = make_pattern(support)
            targeted = [
                (r, s) for r in sorted(inter) for s in sorted(bset - inter)
            ]
            if not all(
                detects(network, BridgingFault.x_pair(r, s, Polarity.WIRED_AND), pattern, dc_policy)
                for r, s in targeted
            ):
                continue
            patterns.append(pattern)
            left = split(tuple(sorted(inter)))
            right = split(tuple(sorted(bset - inter)))
            return TreeNode(block=block, gate_id=gid, pattern=pattern, left=left, right=right)
        return TreeNode(block=block)

    root = split(tuple(variables)) if variables else None
    test_set = TestSet("T2", patterns, target_class="XPair/WiredAnd")
    return test_set, PartitionTree(root)


# ---------------------------------------------------------------------------
# T3

def gen_input_or_tests(
    pprm_list: Sequence[PprmFunction],
    network: AndExorNetwork,
    *,
    dc_policy: str = "fill-zero",
) -> tuple[TestSet, tuple[tuple[int, int], ...]]:
    """Parity-driven T3 construction for wired-OR input bridges.

    The generator refines a partition of the inputs; a pattern is emitted
    only when it provably separates at least one block, which caps the set
    at n - 1 patterns.  Case (a) splits off a variable with an odd diagonal
    entry, case (b) a variable paired with an odd joint entry, and case (c)
    repeats both on the function restricted at a growing set of variables
    held at 0 (single variables in ascending order, then pairs, and so on,
    never deeper than n - 1).  Pairs left in unsplit blocks are returned
    for fallback.
    """
    aux = network.constant_line
    variables = list(network.real_inputs())
    p = network.p
    patterns: list[TestPattern] = []
    blocks: list[frozenset] = [frozenset(variables)] if len(variables) >= 2 else []

    def block_of(v: int) -> frozenset | None:
        for b in blocks:
            if v in b:
                return b
        return None

    def multi_blocks() -> list[frozenset]:
        return [b for b in blocks if len(b) >= 2]

    def make_pattern(zeros: frozenset) -> TestPattern:
        bits = "".join(
            "1" if v == aux else ("0" if v in zeros else "1") for v in range(1, network.n + 1)
        )
        return TestPattern("d" * p, bits, origin="T3")

    def try_split(pattern: TestPattern, block: frozenset, side: frozenset) -> bool:
        """Validate every wired-OR pair across the split; refine on success."""
        cross = [(r, s) for r in sorted(side) for s in sorted(block - side)]
        if not cross:
            return False
        if not all(
            detects(network, BridgingFault.x_pair(r, s, Polarity.WIRED_OR), pattern, dc_policy)
            for r, s in cross
        ):
            return False
        blocks.remove(block)
        for part in (side, block - side):
            if len(part) >= 2:
                blocks.append(part)
        return True

    def stage(restricted: frozenset) -> None:
        multis = multi_blocks()
        if not multis or all(b & restricted for b in multis):
            return
        active = [v for v in variables if v not in restricted]
        if len(active) < 2:
            return
        sub = [restrict(f, restricted) for f in pprm_list] if restricted else list(pprm_list)
        parity = build_parity_matrix(sub, active)

        for i in active:  # case (a)
            if parity.get(i, i) != 1:
                continue
            block = block_of(i)
            if block is None or (block & restricted):
                continue
            pattern = make_pattern(restricted | {i})
            if try_split(pattern, block, frozenset({i})):
                patterns.append(pattern)

        for i in active:  # case (b)
            if parity.get(i, i) != 0:
                continue
            block = block_of(i)
            if block is None or (block & restricted):
                continue
            partners = [k for k in active if k != i and parity.get(i, k) == 1]
            if not partners:
                continue
            k = partners[0]
            pattern = make_pattern(restricted | {i, k})
            block_k = block_of(k)
            emitted = False
            if block_k is block:
                # i and k stay joined: their own pair is not exercised here
                emitted = try_split(pattern, block, frozenset({i, k}))
            else:
                emitted = try_split(pattern, block, frozenset({i}))
                if (
                    parity.get(k, k) == 0
                    and block_k is not None
                    and not (block_k & restricted)
                    and try_split(pattern, block_k, frozenset({k}))
                ):
                    emitted = True
            if emitted:
                patterns.append(pattern)

    stage(frozenset())
    for depth in range(1, len(variables)):
        if not multi_blocks():
            break
        for combo in itertools.combinations(variables, depth):
            if not multi_blocks():
                break
            stage(frozenset(combo))

    uncovered = []
    for block in sorted(multi_blocks(), key=min):
        uncovered.extend(itertools.combinations(sorted(block), 2))
    test_set = TestSet("T3", patterns, target_class="XPair/WiredOr")
    return test_set, tuple(sorted(uncovered))


# ---------------------------------------------------------------------------
# T4

def gen_cascade_pair_tests(p: int, n: int, *, constant_line: int | None = None) -> TestSet:
    """Halving construction over the c lines, x held at all-zero.

    Pattern r of ceil(log2 p) alternates runs of 2^(k-r) ones and zeros over
    a width-2^k grid, truncated to p columns.  Column codes are pairwise
    distinct, so every c pair sees opposite values in some pattern.
    """
    k = ceil_log2(p)
    x_bits = "".join("1" if v == constant_line else "0" for v in range(1, n + 1))
    rows = []
    for r in range(1, k + 1):
        run = 1 << (k - r)
        row = ("1" * run + "0" * run) * (1 << (r - 1))
        rows.append(TestPattern(row[:p], x_bits, origin="T4"))
    return TestSet("T4", rows, target_class=FaultKind.INTRA_LEVEL.value)


# ---------------------------------------------------------------------------
# T5

def gen_walking_zero_tests(n: int, p: int, *, constant_line: int | None = None) -> TestSet:
    """One pattern per input driving just that input to 0, c lines don't-care."""
    patterns = []
    for i in range(1, n + 1):
        if i == constant_line:
            continue
        bits = "".join("0" if v == i else "1" for v in range(1, n + 1))
        patterns.append(TestPattern("d" * p, bits, origin="T5"))
    return TestSet("T5", patterns, target_class=FaultKind.A_PAIR.value)


# ---------------------------------------------------------------------------
# pipeline helpers

@dataclass
class GenerationResult:
    sets: dict[str, TestSet]
    tree: PartitionTree | None = None
    t2_uncovered: tuple[tuple[int, int], ...] = ()
    t3_uncovered: tuple[tuple[int, int], ...] = ()

    def ordered_sets(self) -> list[TestSet]:
        return [self.sets[name] for name in SET_NAMES if name in self.sets]


def generate_sets(
    pprm_list: Sequence[PprmFunction],
    network: AndExorNetwork,
    selector: Iterable[str] = SET_NAMES,
    dc_policy: str = "fill-zero",
) -> GenerationResult:
    """Build the selected named sets for one netlist."""
    wanted = list(selector)
    unknown = [name for name in wanted if name not in SET_NAMES]
    if unknown:
        raise ValueError(f"unknown test-set name(s): {', '.join(unknown)}")
    aux = network.constant_line
    result = GenerationResult(sets={})
    if "T1" in wanted:
        result.sets["T1"] = gen_corner_set(network.n, network.p, constant_line=aux)
    if "T2" in wanted:
        t2, tree = gen_input_and_tests(pprm_list, network, dc_policy=dc_policy)
        result.sets["T2"] = t2
        result.tree = tree
        result.t2_uncovered = tuple(tree.uncovered_pairs())
    if "T3" in wanted:
        t3, uncovered = gen_input_or_tests(pprm_list, network, dc_policy=dc_policy)
        result.sets["T3"] = t3
        result.t3_uncovered = uncovered
    if "T4" in wanted:
        result.sets["T4"] = gen_cascade_pair_tests(network.p, network.n, constant_line=aux)
    if "T5" in wanted:
        result.sets["T5"] = gen_walking_zero_tests(network.n, network.p, constant_line=aux)
    return result


@dataclass
class UnionResult:
    test_set: TestSet
    pre_dedup_size: int
    fallback_count: int
    dedup: bool = False
    removed: int = 0


def assemble_union(
    sets: Sequence[TestSet],
    fallback: Sequence[TestPattern] = (),
    *,
    dedup: bool = False,
    dc_policy: str = "fill-zero",
) -> UnionResult:
    """Concatenate the named sets in order, then fallback patterns.

    The pre-deduplication size is recorded for the bound check even when
    ``dedup`` drops patterns that collide after don't-care instantiation.
    """
    ordered = [pat for ts in sets for pat in ts] + list(fallback)
    pre = len(ordered)
    removed = 0
    if dedup:
        seen: set[str] = set()
        kept = []
        for pat in ordered:
            key = pat.resolved_line(dc_policy)
            if key in seen:
                removed += 1
                continue
            seen.add(key)
            kept.append(pat)
        ordered = kept
    return UnionResult(TestSet("Union", ordered), pre, len(fallback), dedup, removed)


def ceil_log2(p: int) -> int:
    if p < 1:
        raise ValueError("p must be positive")
    return (p - 1).bit_length()


@dataclass(frozen=True)
class BoundReport:
    size: int
    bound: int
    passed: bool
    fallback_count: int
    construction_size: int
    exceeds_construction: bool


def check_bound(union: UnionResult, n: int, p: int) -> BoundReport:
    """Compare the pre-dedup union size against 3n + ceil(log2 p) + 2.

    ``n`` is the count of real inputs (the constant line does not count).
    Fallback patterns sit outside the construction, so their presence is
    flagged separately even when the size still fits.
    """
    bound = 3 * n + ceil_log2(p) + 2
    size = union.pre_dedup_size
    return BoundReport(
        size=size,
        bound=bound,
        passed=size <= bound,
        fallback_count=union.fallback_count,
        construction_size=size - union.fallback_count,
        exceeds_construction=union.fallback_count > 0,
    )


@dataclass
class FallbackResult:
    patterns: list[TestPattern] = field(default_factory=list)
    redundant: dict[BridgingFault, str] = field(default_factory=dict)
    unresolved: list[BridgingFault] = field(default_factory=list)


def fallback_search(
    network: AndExorNetwork,
    uncovered_faults: Sequence[BridgingFault],
    oracle_cap: int = DEFAULT_ORACLE_CAP,
    *,
    dc_policy: str = "fill-zero",
    rng_seed: int = 271828,
    attempts: int = 512,
    classify_only: bool = False,
) -> FallbackResult:
    """Repair coverage for faults the construction missed.

    Within the oracle cap each fault gets an exhaustive verdict: a witness
    pattern or a redundancy proof (``redundant`` maps the fault to the
    proving method).  Above the cap a seeded random search runs for
    ``attempts`` patterns per fault and gives up as unresolved.  Unmet
    ExorInternal obligations are repaired by appending the corner set,
    whose patterns provably complete every reachable mask.

    With ``classify_only`` no patterns are ever added; redundancy and
    unresolved classifications still come out, so a fixed test set can be
    graded with the same verdict vocabulary the repair path uses.
    """
    out = FallbackResult()
    corners_added = False
    width = network.n + network.p
    for idx, fault in enumerate(uncovered_faults):
        if fault.kind is FaultKind.EXOR_INTERNAL:
            support = network.gate_supports[fault.ids[0] - 1]
            if network.constant_line is not None and support <= {network.constant_line}:
                out.redundant[fault] = "constant-line"
            elif not classify_only and not corners_added:
                for pat in gen_corner_set(network.n, network.p, constant_line=network.constant_line):
                    out.patterns.append(replace(pat, origin="Fallback"))
                corners_added = True
            continue
        if any(detects(network, fault, pat, dc_policy) for pat in out.patterns):
            continue
        if width <= oracle_cap:
            res = exhaustive_detectability(network, fault, oracle_cap)
            if res.detectable:
                if not classify_only:
                    out.patterns.append(res.witness)
            else:
                out.redundant[fault] = "exhaustive"
            continue
        found = None
        if not classify_only and attempts > 0:
            rng = random.Random(rng_seed * 1000003 + idx)
            for _ in range(attempts):
                c = "".join(rng.choice("01") for _ in range(network.p))
                x = "".join(
                    "1" if v == network.constant_line else rng.choice("01")
                    for v in range(1, network.n + 1)
                )
                pat = TestPattern(c, x, origin="Fallback")
                if detects(network, fault, pat, dc_policy):
                    found = pat
                    break
        if found is not None:
            out.patterns.append(found)
        else:
            out.unresolved.append(fault)
    return out
