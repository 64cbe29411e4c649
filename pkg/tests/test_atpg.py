"""Test-set construction: counts, parity matrix, the five sets, union,
size bound, and fallback repair."""

import pytest

from bridgetest import (
    BridgingFault,
    Polarity,
    TestPattern,
    assemble_union,
    build_parity_matrix,
    ceil_log2,
    check_bound,
    count_terms,
    count_union,
    derive_pprm,
    detects,
    expand_network,
    fallback_search,
    gen_cascade_pair_tests,
    gen_corner_set,
    gen_input_and_tests,
    gen_input_or_tests,
    gen_walking_zero_tests,
    generate_sets,
    normalize_zero_controls,
    parse_circuit,
)

AND = Polarity.WIRED_AND
OR = Polarity.WIRED_OR

XOR3_TEXT = ".n 3\n.p 1\n.gate c1 : x1\n.gate c1 : x2\n.gate c1 : x3\n.end\n"
DUP_TEXT = ".n 3\n.p 2\n.gate c1 : x1\n.gate c1 : x1\n.gate c2 : x1 x2\n.end\n"


@pytest.fixture(scope="module")
def bench_parts(bench):
    return derive_pprm(bench), expand_network(bench)


def _parts(text):
    circuit = parse_circuit(text)
    return derive_pprm(circuit), expand_network(circuit)


class TestTermCounts:
    # spot values recomputed by hand from the gate list  [DERIVED]
    def test_single_variable(self, bench_parts):
        pprms, _ = bench_parts
        assert count_terms(pprms, 1, {1}) == 6
        assert count_terms(pprms, 1, {5}) == 4
        assert count_terms(pprms, 2, {4}) == 3
        assert count_terms(pprms, 3, {7}) == 2
        assert count_terms(pprms, 2, {1}) == 0

    def test_pair(self, bench_parts):
        pprms, _ = bench_parts
        assert count_terms(pprms, 1, {1, 2}) == 4
        assert count_terms(pprms, 1, {2, 6}) == 1
        assert count_terms(pprms, 1, {4, 5}) == 1
        assert count_terms(pprms, 3, {4, 5}) == 1
        assert count_terms(pprms, 3, {1, 2}) == 0
        assert count_terms(pprms, 2, {4, 7}) == 2

    def test_counts_respect_multiset(self):
        pprms, _ = _parts(DUP_TEXT)
        # both physical copies of the x1 gate count, even though they cancel
        assert count_terms(pprms, 1, {1}) == 2
        assert pprms[0].canonical_terms == ()

    def test_arity_guard(self, bench_parts):
        pprms, _ = bench_parts
        with pytest.raises(ValueError):
            count_terms(pprms, 1, set())
        with pytest.raises(ValueError):
            count_terms(pprms, 1, {1, 2, 3})

    def test_union_inclusion_exclusion(self, bench_parts):
        pprms, _ = bench_parts
        assert count_union(pprms, 1, 4, 5) == 7  # 4 + 4 - 1


class TestParityMatrix:
    def test_benchmark_rows(self, bench_parts):
        # full derived matrix  [DERIVED]
        pprms, _ = bench_parts
        matrix = build_parity_matrix(pprms, range(1, 8))
        rows = ["".join(map(str, row)) for row in matrix.rows]
        assert rows == [
            "0000000",
            "0000110",
            "0011111",
            "0011110",
            "0111011",
            "0111110",
            "0010101",
        ]

    def test_symmetry_and_accessor(self, bench_parts):
        pprms, _ = bench_parts
        matrix = build_parity_matrix(pprms, range(1, 8))
        for i in range(1, 8):
            for j in range(1, 8):
                assert matrix.get(i, j) == matrix.get(j, i)
        assert matrix.get(2, 6) == 1
        assert matrix.get(5, 5) == 0

    def test_subset_of_variables(self, bench_parts):
        pprms, _ = bench_parts
        matrix = build_parity_matrix(pprms, [3, 5, 7])
        assert matrix.order == (3, 5, 7)
        assert matrix.get(3, 7) == 1

    def test_is_zero(self):
        pprms, _ = _parts(".n 2\n.p 1\n.gate c1 : x1\n.gate c1 : x1\n.end\n")
        assert build_parity_matrix(pprms, [1, 2]).is_zero()


class TestCornerSet:
    def test_benchmark(self):
        ts = gen_corner_set(7, 3)
        assert ts.name == "T1" and ts.target_class == "ExorInternal"
        assert ts.lines() == [
            "0000000000",
            "0001111111",
            "1110000000",
            "1111111111",
        ]
        assert all(p.origin == "T1" for p in ts)

    def test_constant_line_held_high(self):
        ts = gen_corner_set(2, 1, constant_line=2)
        assert ts.lines() == ["001", "011", "101", "111"]


class TestInputAndSet:
    def test_benchmark_patterns(self, bench_parts):
        # frozen construction output (differs from the shipped worked set in
        # its last two rows; coverage is verified pairwise below)  [DERIVED]
        pprms, net = bench_parts
        ts, tree = gen_input_and_tests(pprms, net)
        assert [p.x for p in ts] == [
            "1000000",
            "0100000",
            "0001000",
            "0000100",
            "0100010",
            "0011000",
        ]
        assert all(p.c == "ddd" and p.origin == "T2" for p in ts)
        assert tree.internal_count() == 6
        assert tree.stuck_blocks() == []
        assert tree.uncovered_pairs() == []

    def test_benchmark_covers_all_wired_and_pairs(self, bench_parts):
        pprms, net = bench_parts
        ts, _ = gen_input_and_tests(pprms, net)
        for i in range(1, 8):
            for j in range(i + 1, 8):
                fault = BridgingFault.x_pair(i, j, AND)
                assert any(detects(net, fault, p) for p in ts), (i, j)

    def test_unsplittable_block(self, and2):
        # the only gate's support equals the whole block: nothing can split
        pprms, net = derive_pprm(and2), expand_network(and2)
        ts, tree = gen_input_and_tests(pprms, net)
        assert ts.lines() == []
        assert tree.stuck_blocks() == [(1, 2)]
        assert tree.uncovered_pairs() == [(1, 2)]

    def test_candidate_rejected_then_accepted(self):
        # f1 cancels to 0, so the single-control candidates detect nothing
        # and the two-control gate must carry the first split
        pprms, net = _parts(DUP_TEXT)
        ts, tree = gen_input_and_tests(pprms, net)
        assert [p.x for p in ts] == ["110"]
        assert tree.stuck_blocks() == [(1, 2)]


class TestInputOrSet:
    def test_benchmark_patterns(self, bench_parts):
        # four case-(a) splits, one case (b), one case (c) at x1 = 0  [DERIVED]
        pprms, net = bench_parts
        ts, uncovered = gen_input_or_tests(pprms, net)
        assert [p.x for p in ts] == [
            "1101111",
            "1110111",
            "1111101",
            "1111110",
            "1011011",
            "0011101",
        ]
        assert all(p.c == "ddd" and p.origin == "T3" for p in ts)
        assert uncovered == ()

    def test_benchmark_covers_all_wired_or_pairs(self, bench_parts):
        pprms, net = bench_parts
        ts, _ = gen_input_or_tests(pprms, net)
        for i in range(1, 8):
            for j in range(i + 1, 8):
                fault = BridgingFault.x_pair(i, j, OR)
                assert any(detects(net, fault, p) for p in ts), (i, j)

    def test_emission_is_partition_gated(self):
        # x = 110 would detect the pairs it leaves joined, but no block
        # split justifies it, so the generator stays at n - 1 patterns
        pprms, net = _parts(XOR3_TEXT)
        ts, uncovered = gen_input_or_tests(pprms, net)
        assert [p.x for p in ts] == ["011", "101"]
        assert uncovered == ()
        probe = TestPattern("d", "110")
        assert detects(net, BridgingFault.x_pair(1, 3, OR), probe)
        assert detects(net, BridgingFault.x_pair(2, 3, OR), probe)

    def test_case_a_on_and2(self, and2):
        pprms, net = derive_pprm(and2), expand_network(and2)
        ts, uncovered = gen_input_or_tests(pprms, net)
        assert [p.x for p in ts] == ["01"]
        assert uncovered == ()

    def test_duplicate_terms_cancel_into_case_a(self):
        pprms, net = _parts(DUP_TEXT)
        ts, uncovered = gen_input_or_tests(pprms, net)
        assert [p.x for p in ts] == ["011", "101"]
        assert uncovered == ()

    def test_size_within_partition_budget(self, bench_parts):
        pprms, net = bench_parts
        ts, _ = gen_input_or_tests(pprms, net)
        assert len(ts) <= net.n - 1


class TestCascadePairSet:
    def test_benchmark(self):
        ts = gen_cascade_pair_tests(3, 7)
        assert ts.lines() == ["1100000000", "1010000000"]
        assert all(p.origin == "T4" for p in ts)

    def test_p_one_needs_nothing(self):
        assert gen_cascade_pair_tests(1, 2).lines() == []

    @pytest.mark.parametrize("p", [2, 3, 4, 5, 7, 8, 16])
    def test_column_codes_distinct(self, p):
        ts = gen_cascade_pair_tests(p, 1)
        assert len(ts) == ceil_log2(p)
        codes = [tuple(pat.c[j] for pat in ts) for j in range(p)]
        assert len(set(codes)) == p
        # distinct codes mean every pair differs in some pattern
        for a in range(p):
            for b in range(a + 1, p):
                assert any(
                    pat.c[a] != pat.c[b] for pat in ts
                ), (a + 1, b + 1)

    def test_constant_line_held_high(self):
        ts = gen_cascade_pair_tests(2, 3, constant_line=3)
        assert ts.lines() == ["10001"]


class TestWalkingZeroSet:
    def test_benchmark(self):
        ts = gen_walking_zero_tests(7, 3)
        assert [p.x for p in ts] == [
            "0111111",
            "1011111",
            "1101111",
            "1110111",
            "1111011",
            "1111101",
            "1111110",
        ]
        assert all(p.c == "ddd" and p.origin == "T5" for p in ts)

    def test_constant_line_skipped(self):
        ts = gen_walking_zero_tests(3, 1, constant_line=3)
        assert [p.x for p in ts] == ["011", "101"]


class TestGenerateSets:
    def test_full_benchmark_run(self, bench_parts):
        pprms, net = bench_parts
        result = generate_sets(pprms, net)
        assert list(result.sets) == ["T1", "T2", "T3", "T4", "T5"]
        sizes = {name: len(ts) for name, ts in result.sets.items()}
        assert sizes == {"T1": 4, "T2": 6, "T3": 6, "T4": 2, "T5": 7}
        assert result.t2_uncovered == ()
        assert result.t3_uncovered == ()
        assert result.tree is not None

    def test_selector(self, bench_parts):
        pprms, net = bench_parts
        result = generate_sets(pprms, net, ["T1", "T4"])
        assert list(result.sets) == ["T1", "T4"]
        assert result.tree is None

    def test_unknown_name(self, bench_parts):
        pprms, net = bench_parts
        with pytest.raises(ValueError, match="unknown test-set name"):
            generate_sets(pprms, net, ["T1", "T9"])


class TestUnionAndBound:
    def test_benchmark_union(self, bench_parts):
        pprms, net = bench_parts
        result = generate_sets(pprms, net)
        union = assemble_union(result.ordered_sets())
        assert union.pre_dedup_size == 25
        assert union.fallback_count == 0
        assert len(union.test_set) == 25
        report = check_bound(union, 7, 3)
        assert (report.size, report.bound) == (25, 25)
        assert report.passed
        assert report.construction_size == 25
        assert not report.exceeds_construction

    def test_dedup_drops_resolved_collisions(self, bench_parts):
        # four T5 rows resolve to the same vectors as earlier T3 rows
        pprms, net = bench_parts
        result = generate_sets(pprms, net)
        union = assemble_union(result.ordered_sets(), dedup=True)
        assert union.pre_dedup_size == 25
        assert union.removed == 4
        assert len(union.test_set) == 21
        lines = [p.resolved_line() for p in union.test_set]
        assert len(set(lines)) == 21
        # the bound still judges the pre-dedup size
        assert check_bound(union, 7, 3).size == 25

    def test_fallback_counts_separately(self, bench_parts):
        pprms, net = bench_parts
        result = generate_sets(pprms, net)
        extra = [TestPattern("000", "1111111", origin="Fallback")]
        union = assemble_union(result.ordered_sets(), extra)
        assert union.pre_dedup_size == 26
        assert union.fallback_count == 1
        report = check_bound(union, 7, 3)
        assert not report.passed  # 26 > 25
        assert report.construction_size == 25
        assert report.exceeds_construction

    def test_ceil_log2(self):
        assert [ceil_log2(p) for p in (1, 2, 3, 4, 5, 8, 9, 64)] == [
            0, 1, 2, 2, 3, 3, 4, 6,
        ]
        with pytest.raises(ValueError):
            ceil_log2(0)


class TestFallbackSearch:
    def test_oracle_witness_and_redundancy(self, and2):
        net = expand_network(and2)
        missed = [BridgingFault.x_pair(1, 2, OR), BridgingFault.x_pair(1, 2, AND)]
        fb = fallback_search(net, missed)
        assert [p.line() for p in fb.patterns] == ["001"]
        assert fb.patterns[0].origin == "Fallback"
        assert fb.redundant == {missed[1]: "exhaustive"}
        assert fb.unresolved == []

    def test_classify_only_adds_nothing(self, and2):
        net = expand_network(and2)
        missed = [BridgingFault.x_pair(1, 2, OR), BridgingFault.x_pair(1, 2, AND)]
        fb = fallback_search(net, missed, classify_only=True)
        assert fb.patterns == []
        assert fb.redundant == {missed[1]: "exhaustive"}
        assert fb.unresolved == []

    def test_greedy_reuse_of_appended_patterns(self, and2):
        net = expand_network(and2)
        fault = BridgingFault.x_pair(1, 2, OR)
        fb = fallback_search(net, [fault, fault])
        assert len(fb.patterns) == 1

    def test_exor_obligation_appends_corners_once(self):
        net = expand_network(parse_circuit(".n 1\n.p 2\n.gate c1 : x1\n.gate c2 : x1\n.end\n"))
        missed = [BridgingFault.exor_internal(1), BridgingFault.exor_internal(2)]
        fb = fallback_search(net, missed)
        assert [p.line() for p in fb.patterns] == ["000", "001", "110", "111"]
        assert all(p.origin == "Fallback" for p in fb.patterns)
        fb2 = fallback_search(net, missed, classify_only=True)
        assert fb2.patterns == []

    def test_constant_line_obligation_is_redundant(self):
        circuit = normalize_zero_controls(
            parse_circuit(".n 1\n.p 1\n.gate c1 :\n.end\n", allow_zero_controls=True)
        )
        net = expand_network(circuit)
        fault = BridgingFault.exor_internal(1)
        fb = fallback_search(net, [fault])
        assert fb.patterns == []
        assert fb.redundant == {fault: "constant-line"}

    def test_wide_circuit_random_path(self):
        # n + p = 23 sits above the oracle cap: detectable faults get seeded
        # random witnesses, unprovable ones come back unresolved
        text = ".n 20\n.p 3\n.gate c1 : x1 x2\n.gate c2 : x3\n.gate c3 : x4\n.end\n"
        net = expand_network(parse_circuit(text))
        or_fault = BridgingFault.x_pair(1, 2, OR)
        and_fault = BridgingFault.x_pair(1, 2, AND)
        fb = fallback_search(net, [or_fault, and_fault])
        assert len(fb.patterns) == 1
        assert detects(net, or_fault, fb.patterns[0])
        assert fb.unresolved == [and_fault]
        assert fb.redundant == {}

    def test_wide_circuit_determinism(self):
        text = ".n 20\n.p 3\n.gate c1 : x1 x2\n.gate c2 : x3\n.gate c3 : x4\n.end\n"
        net = expand_network(parse_circuit(text))
        or_fault = BridgingFault.x_pair(1, 2, OR)
        a = fallback_search(net, [or_fault])
        b = fallback_search(net, [or_fault])
        assert [p.line() for p in a.patterns] == [p.line() for p in b.patterns]

    def test_zero_attempts_leaves_unresolved(self):
        text = ".n 20\n.p 3\n.gate c1 : x1 x2\n.gate c2 : x3\n.gate c3 : x4\n.end\n"
        net = expand_network(parse_circuit(text))
        or_fault = BridgingFault.x_pair(1, 2, OR)
        fb = fallback_search(net, [or_fault], attempts=0)
        assert fb.patterns == [] and fb.unresolved == [or_fault]
