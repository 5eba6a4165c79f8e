"""Command-line front end.

Subcommands::

    onevar solve "x a = a x"            # solution set of a system
    onevar oracle "x^2 = a^2"           # bounded brute-force variety
    onevar subgroup ab ba --contains abab
    onevar corpus                       # shipped regression corpus

Exit codes: 0 success, 1 corpus mismatch, 2 parse or usage error,
3 oracle budget exhausted (partial result printed), 4 missing or malformed
input file.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from onevar import kernels
from onevar.equations import DEFAULT_BUDGET, ParseError, parse_system, scan_variety
from onevar.solver import DEFAULT_BOUND, DEFAULT_ORACLE_RANGE, SolutionSet, solve
from onevar.stallings import build, contains, subgroup_rank
from onevar.words import MalformedWordError, check_rank, parse_word

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_INPUT = 4

DEFAULT_CORPUS = "free_rank2.txt"
IGNORED_KEYS = ("diagnostics",)


class CorpusError(ValueError):
    pass


@dataclass
class RunConfig:
    rank: int = 2
    bound: int = DEFAULT_BOUND
    budget: int = DEFAULT_BUDGET
    output_mode: str = "text"
    oracle_range: int = DEFAULT_ORACLE_RANGE
    stable_check: bool = True
    workers: int = 1

    def __post_init__(self):
        check_rank(self.rank)
        if self.bound < 1:
            raise ValueError("bound must be >= 1")
        if self.budget < 1:
            raise ValueError("budget must be >= 1")
        if self.output_mode not in ("text", "json"):
            raise ValueError(f"unknown output mode {self.output_mode!r}")


def render(result: SolutionSet, mode: str) -> str:
    if mode == "json":
        return result.to_json() + "\n"
    return result.to_text()


def run_solve(config: RunConfig, equations: Sequence[str]) -> tuple[int, str]:
    """Solve the system; returns (exit code, rendered output)."""
    try:
        system = parse_system(list(equations), config.rank)
    except ParseError as exc:
        return EXIT_PARSE, f"parse error: {exc}\n"
    result = solve(system, config.bound, config.budget, config.workers,
                   config.stable_check, config.oracle_range)
    code = EXIT_BUDGET if result.bound < config.bound else EXIT_OK
    return code, render(result, config.output_mode)


def run_oracle(config: RunConfig, equations: Sequence[str]) -> tuple[int, str]:
    try:
        system = parse_system(list(equations), config.rank)
    except ParseError as exc:
        return EXIT_PARSE, f"parse error: {exc}\n"
    res = scan_variety(system, config.bound, config.budget, config.workers)
    code = EXIT_BUDGET if res.truncated else EXIT_OK
    if config.output_mode == "json":
        out = {"rank": config.rank, "bound": res.radius,
               "solutions": [str(w) for w in res.solutions], "diagnostics": res.diagnostics}
        return code, json.dumps(out) + "\n"
    lines = [f"# rank={config.rank} bound={res.radius} count={len(res.solutions)}"]
    lines += [f"# diagnostic: {d}" for d in res.diagnostics]
    lines += [str(w) for w in res.solutions]
    return code, "\n".join(lines) + "\n"


def run_subgroup(config: RunConfig, gens: Sequence[str], queries: Sequence[str] = ()) -> tuple[int, str]:
    try:
        words = [parse_word(g, config.rank) for g in gens]
        asks = [parse_word(q, config.rank) for q in queries]
    except (ParseError, MalformedWordError) as exc:
        return EXIT_PARSE, f"parse error: {exc}\n"
    graph = build(words, config.rank)
    rank = subgroup_rank(graph)
    answers = [(str(q), contains(graph, q)) for q in asks]
    if config.output_mode == "json":
        out = {"generators": [str(w) for w in words], "rank": rank,
               "vertices": graph.vertices, "edges": len(graph.edges),
               "contains": {q: ans for q, ans in answers}}
        return EXIT_OK, json.dumps(out) + "\n"
    lines = [f"rank {rank}"]
    lines += [f"contains {q}: {str(ans).lower()}" for q, ans in answers]
    return EXIT_OK, "\n".join(lines) + "\n"


@dataclass
class CorpusInstance:
    name: str
    equations: list
    expected: dict
    line: int


def parse_corpus(text: str) -> list:
    """Blocks separated by blank lines: optional ``# name`` comments,
    equation lines, and a final ``expect: <json>`` line."""
    instances = []
    block: list = []
    lines = text.splitlines() + [""]
    for lineno, line in enumerate(lines, 1):
        if line.strip():
            block.append((lineno, line.strip()))
            continue
        if not block:
            continue
        first = block[0][0]
        if all(l.startswith("#") for _, l in block):
            block = []
            continue
        comments = [l[1:].strip() for _, l in block if l.startswith("#")]
        body = [(n, l) for n, l in block if not l.startswith("#")]
        n, last = body[-1]
        if not last.startswith("expect:"):
            raise CorpusError(f"line {n}: block must end with 'expect: <json>'")
        try:
            expected = json.loads(last[len("expect:"):])
        except json.JSONDecodeError as exc:
            raise CorpusError(f"line {n}: bad expectation JSON ({exc})") from None
        if not isinstance(expected, dict):
            raise CorpusError(f"line {n}: expectation must be a JSON object")
        equations = [l for _, l in body[:-1]]
        if not equations:
            raise CorpusError(f"line {first}: block has no equations")
        name = comments[0] if comments else f"instance {len(instances) + 1}"
        instances.append(CorpusInstance(name, equations, expected, first))
        block = []
    return instances


def compare(expected: dict, actual: dict) -> list:
    return [key for key in expected if key not in IGNORED_KEYS and actual.get(key) != expected[key]]


def run_corpus(config: RunConfig, text: str) -> tuple[int, str]:
    try:
        instances = parse_corpus(text)
    except CorpusError as exc:
        return EXIT_INPUT, f"malformed corpus: {exc}\n"
    lines = []
    failures = 0
    for inst in instances:
        try:
            system = parse_system(inst.equations, config.rank)
        except ParseError as exc:
            failures += 1
            lines.append(f"FAIL {inst.name}: parse error {exc}")
            continue
        actual = solve(system, config.bound, config.budget, config.workers,
                       config.stable_check, config.oracle_range).to_dict()
        bad = compare(inst.expected, actual)
        if bad:
            failures += 1
            diff = ", ".join(f"{k}: expected {inst.expected[k]!r} got {actual.get(k)!r}" for k in bad)
            lines.append(f"FAIL {inst.name}: {diff}")
        else:
            lines.append(f"PASS {inst.name}")
    lines.append(f"{len(instances)} instances, {failures} failed")
    return (EXIT_MISMATCH if failures else EXIT_OK), "\n".join(lines) + "\n"


def regenerate_corpus(config: RunConfig, text: str) -> str:
    """The corpus with every ``expect:`` line replaced by the current output."""
    out = []
    block_lines: list = []

    def flush():
        eqs = [l for l in block_lines if l.strip() and not l.lstrip().startswith(("#", "expect:"))]
        for l in block_lines:
            if not l.lstrip().startswith("expect:"):
                out.append(l)
        if eqs:
            res = solve(parse_system(eqs, config.rank), config.bound, config.budget,
                        config.workers, config.stable_check, config.oracle_range).to_dict()
            golden = {k: res[k] for k in ("full", "stable", "points", "cosets")}
            out.append("expect: " + json.dumps(golden))
        block_lines.clear()

    for line in text.splitlines():
        if line.strip():
            block_lines.append(line)
        else:
            flush()
            out.append("")
    flush()
    return "\n".join(out).rstrip("\n") + "\n"


def default_corpus_text() -> str:
    return resources.files("onevar").joinpath("corpus", DEFAULT_CORPUS).read_text()


def _read_equations(args) -> list:
    equations = list(args.equations)
    if args.file:
        equations += Path(args.file).read_text().splitlines()
    return equations


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rank", type=int, default=2, help="rank of the free group (default 2)")
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                        help="enumeration radius L (default %(default)s)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="max candidate substitutions (default %(default)s)")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--oracle-range", type=int, default=DEFAULT_ORACLE_RANGE,
                        help="cross-check cosets at n in [-R, R] (default %(default)s)")
    common.add_argument("--stable-check", action=argparse.BooleanOptionalAction, default=True,
                        help="compare with the description at bound-2")
    common.add_argument("--workers", type=int, default=1, help="oracle worker processes")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="onevar", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="solve a one-variable system")
    p.add_argument("equations", nargs="*", help="equations, e.g. 'x a = a x'")
    p.add_argument("--file", help="read equations from a file, one per line")

    p = sub.add_parser("oracle", parents=[common], help="list all solutions of length <= bound")
    p.add_argument("equations", nargs="*")
    p.add_argument("--file")

    p = sub.add_parser("subgroup", parents=[common], help="Stallings graph of <gens>")
    p.add_argument("gens", nargs="+", help="generator words")
    p.add_argument("--contains", action="append", default=[], metavar="WORD",
                   help="membership query (repeatable)")

    p = sub.add_parser("corpus", parents=[common], help="run a regression corpus")
    p.add_argument("corpus", nargs="?", help="corpus file (default: the shipped corpus)")
    p.add_argument("--regenerate", metavar="OUT",
                   help="write the corpus with fresh expectations to OUT instead of checking")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger(__name__).info("kernels: %s", kernels.IMPLEMENTATION)
    try:
        config = RunConfig(args.rank, args.bound, args.budget, "json" if args.json else "text",
                           args.oracle_range, args.stable_check, args.workers)
    except ValueError as exc:
        parser.error(str(exc))

    try:
        if args.command in ("solve", "oracle"):
            equations = _read_equations(args)
            run = run_solve if args.command == "solve" else run_oracle
            code, out = run(config, equations)
        elif args.command == "subgroup":
            code, out = run_subgroup(config, args.gens, args.contains)
        else:
            text = Path(args.corpus).read_text() if args.corpus else default_corpus_text()
            if args.regenerate:
                Path(args.regenerate).write_text(regenerate_corpus(config, text))
                code, out = EXIT_OK, f"wrote {args.regenerate}\n"
            else:
                code, out = run_corpus(config, text)
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    (sys.stderr if code == EXIT_PARSE else sys.stdout).write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
