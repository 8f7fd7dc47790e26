"""Command-line front end.

Exit codes: 0 success, 2 parse/usage failure, 3 verification failure.
All randomness flows from --seed (default 0); outputs are byte-identical for
identical invocations unless --times is given.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import codesf4, intervalwords, oracle, rankwidth, synthesis, tableau
from .graphcore import (Graph, GraphError, ParseError, TraceError, parse_graph,
                        parse_trace, replay, serialize_graph, serialize_trace)
from .intervalwords import DOWord, parse_word
from .synthesis import SynthesisError

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VERIFY = 3


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _CliError(EXIT_PARSE, f"cannot read {path}: {exc}") from None


def _load_graph(path: str, fmt: str) -> Graph:
    try:
        return parse_graph(_read(path), fmt)
    except (ParseError, GraphError) as exc:
        raise _CliError(EXIT_PARSE, f"{path}: {exc}") from None


def _load_word(path: str) -> DOWord:
    try:
        return parse_word(_read(path))
    except (ParseError, intervalwords.WordError) as exc:
        raise _CliError(EXIT_PARSE, f"{path}: {exc}") from None


def _emit(args, pairs: Sequence[tuple]) -> None:
    if args.format == "kv":
        for key, value in pairs:
            print(f"{key}={value}")
    else:
        width = max((len(str(k)) for k, _ in pairs), default=0)
        for key, value in pairs:
            print(f"{key:<{width}}  {value}")


def _write_out(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text)


# ---------------------------------------------------------------------------
# Commands


def cmd_synth(args) -> int:
    g = _load_graph(args.graph, args.graph_format)
    try:
        res = synthesis.synth(g, strategy=args.strategy,
                              max_n_exact=args.max_n_exact)
        cert = synthesis.certify(g, res, max_n_exact=args.max_n_exact)
    except (rankwidth.GuardError, SynthesisError) as exc:
        raise _CliError(EXIT_VERIFY, f"synthesis failed: {exc}") from None
    trace_text = serialize_trace(res.trace)
    _write_out(args.out_trace, trace_text)
    circuit = tableau.trace_to_circuit(res.trace)
    _write_out(args.out_circuit, circuit.serialize())
    b = res.bounds
    pairs = [("n", res.trace.n), ("s", res.trace.s), ("cost", res.cost),
             ("strategy", res.strategy),
             ("lower_bound", "-" if b.lower is None else b.lower),
             ("upper_generic", f"{float(b.upper_generic):.6g}"),
             ("upper_rankwidth",
              "-" if b.upper_rankwidth is None else f"{float(b.upper_rankwidth):.6g}"),
             ("cz_gates", circuit.cz_count()),
             ("certified", int(cert.ok))]
    if args.times:
        pairs.append(("wall_ms", f"{res.wall_time * 1e3:.3f}"))
    _emit(args, pairs)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.graph, args.graph_format)
    try:
        trace = parse_trace(_read(args.trace))
    except ParseError as exc:
        raise _CliError(EXIT_PARSE, f"{args.trace}: {exc}") from None
    try:
        combinatorial = replay(trace)
    except TraceError as exc:
        print(f"replay error: {exc}")
        return EXIT_VERIFY
    if combinatorial != g:
        print("mismatch (combinatorial replay differs from target)")
        return EXIT_VERIFY
    circuit = tableau.trace_to_circuit(trace)
    state, _ = tableau.simulate_circuit(circuit)
    report = tableau.check_graph_state(state, g)
    print(report.status)
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_oracle(args) -> int:
    if args.graph:
        g = _load_graph(args.graph, args.graph_format)
        try:
            value = oracle.exact_ec(g, guard=args.guard)
        except oracle.OracleGuardError as exc:
            raise _CliError(EXIT_PARSE, str(exc)) from None
        _emit(args, [("n", g.n), ("dist", value)])
        return EXIT_OK
    if args.n is None:
        raise _CliError(EXIT_PARSE, "oracle needs --n or --graph")
    try:
        table = oracle.get_table(args.n, guard=args.guard)
    except oracle.OracleGuardError as exc:
        raise _CliError(EXIT_PARSE, str(exc)) from None
    pairs = [("n", args.n), ("max_cost", table.max_cost())]
    for cost, count in table.histogram().items():
        pairs.append((f"count_cost_{cost}", count))
    _emit(args, pairs)
    return EXIT_OK


def cmd_rankwidth(args) -> int:
    g = _load_graph(args.graph, args.graph_format)
    if g.n <= 1:
        _emit(args, [("n", g.n), ("rankwidth", 0), ("exact", 1)])
        return EXIT_OK
    if g.n <= args.max_n_exact:
        value, deco = rankwidth.exact_rankwidth(g, args.max_n_exact)
        exact = 1
    else:
        deco = rankwidth.greedy_decomposition(g)
        value = rankwidth.width(g, deco)
        exact = 0
    pairs = [("n", g.n), ("rankwidth", value), ("exact", exact),
             ("decomposition", deco.serialize())]
    _emit(args, pairs)
    return EXIT_OK


def cmd_words(args) -> int:
    word = _load_word(args.word)
    if args.action == "build":
        builders = {"interval": intervalwords.interval_graph,
                    "containment": intervalwords.containment_graph,
                    "circle": intervalwords.circle_graph}
        g = builders[args.kind](word)
        text = serialize_graph(Graph(g.n, g.rows), args.graph_format
                               if args.graph_format != "auto" else "edge-list")
        if args.out:
            _write_out(args.out, text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    synths = {"synth-interval": intervalwords.synth_interval,
              "synth-circle": intervalwords.synth_circle,
              "synth-containment": intervalwords.synth_containment}
    try:
        res = synths[args.action](word)
    except SynthesisError as exc:
        raise _CliError(EXIT_VERIFY, f"word synthesis failed: {exc}") from None
    _write_out(args.out_trace, serialize_trace(res.trace))
    if args.out_circuit:
        _write_out(args.out_circuit, tableau.trace_to_circuit(res.trace).serialize())
    pairs = [("n", word.n), ("cost", res.cost), ("strategy", res.strategy)]
    if args.times:
        pairs.append(("wall_ms", f"{res.wall_time * 1e3:.3f}"))
    _emit(args, pairs)
    return EXIT_OK


def cmd_clifford(args) -> int:
    if args.action == "classify":
        counts = tableau.enumerate_two_qubit_classes()
        _emit(args, [("class_a", counts["a"]), ("class_b", counts["b"]),
                     ("class_c", counts["c"]), ("class_d", counts["d"]),
                     ("total", counts["total"])])
        return EXIT_OK
    # decompose: read a 4x4 bit matrix (4 lines of 4 bits)
    text = _read(args.matrix)
    rows = []
    for ln in text.splitlines():
        ln = ln.strip().replace(" ", "")
        if not ln or ln.startswith("#"):
            continue
        if len(ln) != 4 or any(c not in "01" for c in ln):
            raise _CliError(EXIT_PARSE, f"bad matrix row {ln!r} (want 4 bits)")
        rows.append(int(ln[::-1], 2))
    if len(rows) != 4:
        raise _CliError(EXIT_PARSE, f"expected 4 matrix rows, got {len(rows)}")
    try:
        circuit = tableau.decompose_two_qubit(tuple(rows))
    except tableau.TableauError as exc:
        raise _CliError(EXIT_VERIFY, str(exc)) from None
    sys.stdout.write(circuit.serialize())
    return EXIT_OK


def cmd_code(args) -> int:
    g = _load_graph(args.graph, args.graph_format)
    code = codesf4.code_from_graph(g)
    try:
        d = codesf4.min_distance(code)
        support = codesf4.min_weight_support(code)
    except rankwidth.GuardError as exc:
        raise _CliError(EXIT_PARSE, str(exc)) from None
    _emit(args, [("n", g.n), ("min_distance", d),
                 ("support", ",".join(str(v) for v in support)),
                 ("distance_bound", codesf4.mind_bound(g.n))])
    return EXIT_OK


def _random_tree(n: int, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(rng.randrange(i), i) for i in range(1, n)])


def _random_graph(n: int, rng: random.Random, p: float = 0.5) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def _random_word(n: int, rng: random.Random) -> DOWord:
    letters = [f"v{i}" for i in range(n)] * 2
    rng.shuffle(letters)
    return DOWord(letters)


def cmd_bench(args) -> int:
    import time as _time

    rng = random.Random(args.seed)
    rows: List[tuple] = []
    if args.suite == "cycles":
        for n in range(5, 21):
            g = Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
            t0 = _time.perf_counter()
            res = synthesis.synth(g, strategy=args.strategy,
                                  max_n_exact=args.max_n_exact)
            synthesis.certify(g, res, max_n_exact=args.max_n_exact)
            rows.append((f"cycle_n{n}", res.cost, _time.perf_counter() - t0))
    elif args.suite == "trees":
        for n in range(5, 41, 5):
            g = _random_tree(n, rng)
            t0 = _time.perf_counter()
            res = synthesis.synth(g, strategy=args.strategy,
                                  max_n_exact=args.max_n_exact)
            rows.append((f"tree_n{n}", res.cost, _time.perf_counter() - t0))
    elif args.suite == "random":
        for n in range(4, 15, 2):
            g = _random_graph(n, rng)
            t0 = _time.perf_counter()
            res = synthesis.synth(g, strategy=args.strategy,
                                  max_n_exact=args.max_n_exact)
            rows.append((f"random_n{n}", res.cost, _time.perf_counter() - t0))
    elif args.suite == "words":
        for n in range(10, 51, 10):
            word = _random_word(n, rng)
            t0 = _time.perf_counter()
            res = intervalwords.synth_interval(word)
            rows.append((f"interval_n{n}", res.cost, _time.perf_counter() - t0))
            t0 = _time.perf_counter()
            res = intervalwords.synth_circle(word)
            rows.append((f"circle_n{n}", res.cost, _time.perf_counter() - t0))
    else:
        raise _CliError(EXIT_PARSE, f"unknown suite {args.suite!r}")
    pairs = []
    for name, cost, dt in rows:
        pairs.append((f"{name}_cost", cost))
        if args.times:
            pairs.append((f"{name}_ms", f"{dt * 1e3:.3f}"))
    _emit(args, pairs)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument wiring


def _common_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # attached to the root parser with real defaults and to every subparser
    # with SUPPRESS defaults, so the flags parse in either position
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--seed", type=int,
                        default=d if suppress else 0, help="master RNG seed")
    parser.add_argument("--format", choices=("text", "kv"),
                        default=d if suppress else "text",
                        help="output style for stats blocks")
    parser.add_argument("--max-n-exact", type=int, dest="max_n_exact",
                        default=d if suppress else 13,
                        help="largest n for exact rank-width certificates")
    parser.add_argument("--times", action="store_true",
                        default=d if suppress else False,
                        help="include wall-clock timings in output")
    parser.add_argument("--graph-format", choices=("auto", "edge-list", "graph6"),
                        dest="graph_format", default=d if suppress else "auto")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="czsynth",
        description="Graph-state preparation synthesis, verification and "
                    "exact small-instance search.")
    _common_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _common_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", parents=[common],
                       help="synthesize a preparation trace for a graph")
    p.add_argument("graph")
    p.add_argument("--strategy", choices=("auto", "rankwidth", "code", "trivial"),
                   default="auto")
    p.add_argument("--out-trace")
    p.add_argument("--out-circuit")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", parents=[common], help="replay and simulate a trace against a target")
    p.add_argument("trace")
    p.add_argument("graph")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[common], help="exact costs by exhaustive search")
    p.add_argument("--n", type=int)
    p.add_argument("--graph")
    p.add_argument("--guard", type=int, default=oracle.ORACLE_MAX_N)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("rankwidth", parents=[common], help="exact or heuristic rank-width")
    p.add_argument("graph")
    p.set_defaults(func=cmd_rankwidth)

    p = sub.add_parser("words", parents=[common], help="word-defined graphs and their synthesizers")
    p.add_argument("action", choices=("build", "synth-interval", "synth-circle",
                                      "synth-containment"))
    p.add_argument("word")
    p.add_argument("--kind", choices=("interval", "containment", "circle"),
                   default="interval")
    p.add_argument("--out")
    p.add_argument("--out-trace")
    p.add_argument("--out-circuit")
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("clifford", parents=[common], help="two-qubit Clifford classification")
    p.add_argument("action", choices=("classify", "decompose"))
    p.add_argument("matrix", nargs="?",
                   help="file with a 4x4 bit matrix (decompose only)")
    p.set_defaults(func=cmd_clifford)

    p = sub.add_parser("code", parents=[common], help="self-dual GF(4) code diagnostics")
    p.add_argument("action", choices=("mindist",))
    p.add_argument("graph")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("bench", parents=[common], help="cost tables over generated families")
    p.add_argument("suite", choices=("cycles", "trees", "random", "words"))
    p.add_argument("--strategy", choices=("auto", "rankwidth", "code", "trivial"),
                   default="auto")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    if args.command == "clifford" and args.action == "decompose" and not args.matrix:
        print("clifford decompose needs a matrix file", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except _CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
