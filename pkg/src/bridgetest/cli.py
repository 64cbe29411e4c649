"""Command line front end.

Subcommands: parse, faults, atpg, simulate, verify, bench.

Exit codes: 0 success; 1 at least one fault left undetected; 2 usage,
circuit, or test-file error; 3 I/O error; 4 nothing undetected but some
fault's detectability could not be resolved.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .atpg import (
    SET_NAMES,
    assemble_union,
    check_bound,
    fallback_search,
    generate_sets,
)
from .benchmark import (
    BENCHMARK_TEXT,
    REFERENCE_T2_X,
    REFERENCE_T3_X,
    benchmark_circuit,
    tabulated_discrepancies,
)
from .circuit import CircuitError, format_circuit, normalize_zero_controls, parse_circuit
from .faults import enumerate_faults
from .network import expand_network
from .patterns import (
    DC_POLICIES,
    TestFileError,
    TestPattern,
    TestSet,
    format_patterns,
    parse_test_file,
)
from .pprm import derive_pprm
from .report import (
    SCHEMA_VERSION,
    build_coverage_report,
    build_fault_report,
    build_generation_report,
    render_report,
)
from .simulate import (
    DEFAULT_ORACLE_CAP,
    Evaluation,
    FaultVerdict,
    evaluate_test_set,
)

EXIT_OK = 0
EXIT_COVERAGE = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_UNRESOLVED = 4


@dataclass
class RunConfig:
    command: str
    sets: tuple[str, ...] = SET_NAMES
    dc_policy: str = "fill-zero"
    oracle_cap: int = DEFAULT_ORACLE_CAP
    fallback: bool = True
    dedup: bool = False
    include_aux: bool = False
    jobs: int = 1

    def echo(self) -> dict:
        """Configuration block for reports.

        Output path and job count are left out on purpose: neither changes
        any computed value, and reports must be byte-identical across runs
        that differ only in where they are written or how parallel they are.
        """
        out: dict = {"command": self.command}
        if self.command in ("verify", "atpg"):
            out["sets"] = list(self.sets)
        out["dc_policy"] = self.dc_policy
        if self.command in ("verify", "simulate", "atpg"):
            out["oracle_cap"] = self.oracle_cap
        if self.command in ("verify", "simulate", "atpg"):
            out["fallback"] = self.fallback
        if self.command in ("verify", "atpg"):
            out["dedup"] = self.dedup
        if self.command in ("verify", "simulate", "faults"):
            out["include_aux"] = self.include_aux
        return out


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_circuit(path: str, *, normalize: bool = True):
    name = "" if path == "-" else Path(path).stem
    circuit = parse_circuit(_read_text(path), allow_zero_controls=normalize, name=name)
    if normalize:
        circuit = normalize_zero_controls(circuit)
    return circuit


def _parse_sets(arg: str) -> tuple[str, ...]:
    names = tuple(s.strip() for s in arg.split(",") if s.strip())
    if not names:
        raise ValueError("empty --sets selection")
    return names


def _apply_fallback_classification(evaluation: Evaluation, fb) -> Evaluation:
    """Rewrite leftover undetected verdicts that fallback classified."""
    unresolved = set(fb.unresolved)
    verdicts = []
    for v in evaluation.verdicts:
        if v.status == "undetected" and v.fault in fb.redundant:
            v = FaultVerdict(v.fault, "redundant", None, fb.redundant[v.fault])
        elif v.status == "undetected" and v.fault in unresolved:
            v = FaultVerdict(v.fault, "unresolved", None, None)
        verdicts.append(v)
    return Evaluation(tuple(verdicts), evaluation.masks, evaluation.dc_policy)


def _coverage_exit(evaluation: Evaluation) -> int:
    if evaluation.count("undetected"):
        return EXIT_COVERAGE
    if evaluation.count("unresolved"):
        return EXIT_UNRESOLVED
    return EXIT_OK


def _parse_tests_for(network, text: str) -> list[TestPattern]:
    """Parse a test file sized for the network.

    When normalization added a constant line, files written for the
    original circuit (one x column short) are accepted and padded with the
    mandatory 1 on that line.
    """
    n, p = network.n, network.p
    if network.constant_line == n:
        width = None
        for raw in text.splitlines():
            row = raw.split("#", 1)[0]
            row = "".join(row.split())
            if row:
                width = len(row)
                break
        if width == p + n - 1:
            short = parse_test_file(text, n - 1, p)
            return [TestPattern(q.c, q.x + "1", origin=q.origin) for q in short]
    return parse_test_file(text, n, p)


# ---------------------------------------------------------------------------
# subcommands

def cmd_parse(args) -> int:
    circuit = _load_circuit(args.circuit, normalize=args.normalize)
    _write_text(args.out, format_circuit(circuit))
    return EXIT_OK


def cmd_faults(args) -> int:
    cfg = RunConfig(command="faults", include_aux=args.include_aux)
    circuit = _load_circuit(args.circuit)
    network = expand_network(circuit)
    faults = enumerate_faults(
        network,
        include_aux=cfg.include_aux,
        record_out_of_model=args.out_of_model,
    )
    report = build_fault_report(
        circuit, network, faults, cfg.echo(), timestamp=not args.no_timestamp
    )
    _write_text(args.out, render_report(report, args.format))
    return EXIT_OK


def cmd_atpg(args) -> int:
    cfg = RunConfig(
        command="atpg",
        sets=_parse_sets(args.sets),
        dc_policy=args.dc_policy,
        oracle_cap=args.oracle_cap,
        fallback=args.fallback,
        dedup=args.dedup,
        jobs=args.jobs,
    )
    circuit = _load_circuit(args.circuit)
    network = expand_network(circuit)
    pprms = derive_pprm(circuit)
    gen = generate_sets(pprms, network, cfg.sets, cfg.dc_policy)
    sets = gen.ordered_sets()
    fb_patterns: list[TestPattern] = []
    if cfg.fallback:
        faults = enumerate_faults(network)
        base = assemble_union(sets, dc_policy=cfg.dc_policy)
        first = evaluate_test_set(
            network, faults, list(base.test_set), dc_policy=cfg.dc_policy, jobs=cfg.jobs
        )
        fb = fallback_search(
            network,
            first.faults_with("undetected"),
            cfg.oracle_cap,
            dc_policy=cfg.dc_policy,
        )
        fb_patterns = fb.patterns
    union = assemble_union(sets, fb_patterns, dedup=cfg.dedup, dc_policy=cfg.dc_policy)
    bound = check_bound(union, len(network.real_inputs()), network.p)
    if args.format == "text":
        header = [
            f"# {circuit.name or 'circuit'}: n={network.n} p={network.p} d={network.d}",
            f"# columns: {network.p} c lines then {network.n} x lines",
        ]
        body = format_patterns(list(union.test_set))
        _write_text(args.out, "\n".join(header) + "\n" + body)
    else:
        report = build_generation_report(
            circuit, network, sets, union, bound, cfg.echo(),
            timestamp=not args.no_timestamp,
        )
        _write_text(args.out, render_report(report, "json"))
    if not bound.passed:
        print(
            f"warning: union size {bound.size} exceeds bound {bound.bound}",
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = RunConfig(
        command="simulate",
        dc_policy=args.dc_policy,
        oracle_cap=args.oracle_cap,
        fallback=False,
        include_aux=args.include_aux,
        jobs=args.jobs,
    )
    circuit = _load_circuit(args.circuit)
    network = expand_network(circuit)
    faults = enumerate_faults(network, include_aux=cfg.include_aux)
    patterns = _parse_tests_for(network, _read_text(args.tests))
    evaluation = evaluate_test_set(
        network, faults, patterns, dc_policy=cfg.dc_policy, jobs=cfg.jobs
    )
    fb = fallback_search(
        network,
        evaluation.faults_with("undetected"),
        cfg.oracle_cap,
        dc_policy=cfg.dc_policy,
        classify_only=True,
    )
    evaluation = _apply_fallback_classification(evaluation, fb)
    user_set = TestSet("User", list(patterns))
    union = assemble_union([user_set], dc_policy=cfg.dc_policy)
    report = build_coverage_report(
        circuit, network, faults, evaluation, [user_set], union, None,
        cfg.echo(), timestamp=not args.no_timestamp,
    )
    _write_text(args.out, render_report(report, args.format))
    return _coverage_exit(evaluation)


def cmd_verify(args) -> int:
    cfg = RunConfig(
        command="verify",
        sets=_parse_sets(args.sets),
        dc_policy=args.dc_policy,
        oracle_cap=args.oracle_cap,
        fallback=not args.no_fallback,
        dedup=args.dedup,
        include_aux=args.include_aux,
        jobs=args.jobs,
    )
    circuit = _load_circuit(args.circuit)
    network = expand_network(circuit)
    pprms = derive_pprm(circuit)
    faults = enumerate_faults(network, include_aux=cfg.include_aux)
    gen = generate_sets(pprms, network, cfg.sets, cfg.dc_policy)
    sets = gen.ordered_sets()
    base = assemble_union(sets, dc_policy=cfg.dc_policy)
    first = evaluate_test_set(
        network, faults, list(base.test_set), dc_policy=cfg.dc_policy, jobs=cfg.jobs
    )
    fb = fallback_search(
        network,
        first.faults_with("undetected"),
        cfg.oracle_cap,
        dc_policy=cfg.dc_policy,
        classify_only=not cfg.fallback,
    )
    union = assemble_union(sets, fb.patterns, dedup=cfg.dedup, dc_policy=cfg.dc_policy)
    bound = check_bound(union, len(network.real_inputs()), network.p)
    evaluation = evaluate_test_set(
        network, faults, list(union.test_set), dc_policy=cfg.dc_policy, jobs=cfg.jobs
    )
    evaluation = _apply_fallback_classification(evaluation, fb)
    report = build_coverage_report(
        circuit, network, faults, evaluation, sets, union, bound,
        cfg.echo(), timestamp=not args.no_timestamp,
    )
    _write_text(args.out, render_report(report, args.format))
    return _coverage_exit(evaluation)


def cmd_bench(args) -> int:
    if args.emit_circuit:
        _write_text(args.out, BENCHMARK_TEXT)
        return EXIT_OK
    circuit = benchmark_circuit()
    network = expand_network(circuit)
    pprms = derive_pprm(circuit)
    gen = generate_sets(pprms, network)
    generated_t2 = [pat.x for pat in gen.sets["T2"]]
    generated_t3 = [pat.x for pat in gen.sets["T3"]]
    cells = tabulated_discrepancies(circuit)
    if args.format == "json":
        report = {
            "schema_version": SCHEMA_VERSION,
            "circuit": {
                "name": circuit.name, "n": network.n,
                "p": network.p, "d": network.d,
            },
            "discrepancies": [
                {
                    "table": c["table"],
                    "cell": list(c["cell"]),
                    "reference": list(c["reference"]) if isinstance(c["reference"], tuple) else c["reference"],
                    "derived": list(c["derived"]) if isinstance(c["derived"], tuple) else c["derived"],
                }
                for c in cells
            ],
            "t2": {
                "generated": generated_t2,
                "reference": list(REFERENCE_T2_X),
                "match": generated_t2 == list(REFERENCE_T2_X),
            },
            "t3": {
                "generated": generated_t3,
                "reference": list(REFERENCE_T3_X),
                "match": generated_t3 == list(REFERENCE_T3_X),
            },
        }
        _write_text(args.out, render_report(report, "json"))
        return EXIT_OK
    lines = [
        f"benchmark {circuit.name}: n={network.n} p={network.p} d={network.d}",
        f"tabulated cells disagreeing with recomputation: {len(cells)}"
        " (recomputed values are authoritative)",
    ]
    for c in cells:
        lines.append(
            f"  {c['table']} {c['cell']}: tabulated {c['reference']}, derived {c['derived']}"
        )
    for name, generated, reference in (
        ("T2", generated_t2, list(REFERENCE_T2_X)),
        ("T3", generated_t3, list(REFERENCE_T3_X)),
    ):
        verdict = "matches" if generated == reference else "differs from"
        lines.append(f"{name} generated {verdict} the tabulated set")
        lines.append(f"  generated: {' '.join(generated)}")
        lines.append(f"  tabulated: {' '.join(reference)}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bridgetest",
        description="Bridging-fault test generation and fault simulation"
        " for AND-EXOR reversible circuit netlists.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_out(sp, formats=("text", "json", "csv")):
        if formats:
            sp.add_argument("--format", "-f", choices=formats, default=formats[0])
        sp.add_argument("--out", "-o", default=None, metavar="PATH",
                        help="write output here instead of stdout")
        sp.add_argument("--no-timestamp", action="store_true",
                        help="omit the generation timestamp from reports")

    def add_grading(sp):
        sp.add_argument("--dc-policy", choices=DC_POLICIES, default="fill-zero",
                        help="how don't-care positions are instantiated")
        sp.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP,
                        help="max n+p for exhaustive detectability checks")
        sp.add_argument("--jobs", type=int, default=1,
                        help="worker threads for fault grading")

    sp = sub.add_parser("parse", help="parse a circuit and echo its canonical form")
    sp.add_argument("circuit", help="circuit file, or - for stdin")
    sp.add_argument("--normalize", action="store_true",
                    help="rewrite 0-control gates onto a shared constant-1 line")
    sp.add_argument("--out", "-o", default=None, metavar="PATH")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("faults", help="enumerate the bridging-fault universe")
    sp.add_argument("circuit")
    sp.add_argument("--include-aux", action="store_true",
                    help="also pair the constant line in input bridges")
    sp.add_argument("--out-of-model", action="store_true",
                    help="report counts of cross-class shorts outside the model")
    add_out(sp)
    sp.set_defaults(func=cmd_faults)

    sp = sub.add_parser("atpg", help="generate the named test sets")
    sp.add_argument("circuit")
    sp.add_argument("--sets", default=",".join(SET_NAMES),
                    help="comma list out of T1,T2,T3,T4,T5")
    sp.add_argument("--fallback", action="store_true",
                    help="append repair patterns for faults the sets miss")
    sp.add_argument("--dedup", action="store_true",
                    help="drop patterns identical after don't-care fill")
    add_grading(sp)
    add_out(sp, formats=("text", "json"))
    sp.set_defaults(func=cmd_atpg)

    sp = sub.add_parser("simulate", help="grade a test file against all faults")
    sp.add_argument("circuit")
    sp.add_argument("--tests", required=True, metavar="PATH",
                    help="test patterns, one c+x row per line")
    sp.add_argument("--include-aux", action="store_true")
    add_grading(sp)
    add_out(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("verify", help="generate, grade, repair, and check the bound")
    sp.add_argument("circuit")
    sp.add_argument("--sets", default=",".join(SET_NAMES))
    sp.add_argument("--no-fallback", action="store_true",
                    help="classify misses but do not add repair patterns")
    sp.add_argument("--dedup", action="store_true")
    sp.add_argument("--include-aux", action="store_true")
    add_grading(sp)
    add_out(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="built-in benchmark and its reference tables")
    sp.add_argument("--emit-circuit", action="store_true",
                    help="print the benchmark netlist and exit")
    add_out(sp, formats=("text", "json"))
    sp.set_defaults(func=cmd_bench)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CircuitError, TestFileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
