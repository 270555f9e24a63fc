"""Command-line front end.

Exit status: 0 accept/agree, 1 reject/disagree, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .construct import construct_haplotypes_dpph, construct_haplotypes_pph
from .decide import ROUTES, decide
from .errors import NotAdmitting, ParseError, TooLarge
from .matrix import (
    GenotypeMatrix,
    explains_matrix,
    four_gamete_check,
    parse_genotype_matrix,
    pph_to_dpph,
    three_gamete_check,
)
from .oracle import DEFAULT_CAP, oracle_decide, oracle_solutions, plant_instance
from .phylogeny import build_tree, tree_to_dot, verify_tree
from .resolution import analyze, graphs_to_dot

EXIT_OK, EXIT_REJECT, EXIT_ERROR = 0, 1, 2

COMMANDS = ("decide", "solve", "tree", "oracle", "gen", "crosscheck")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    output: str | None = None
    directed: bool = False
    route: str = "parity"
    cap: int = DEFAULT_CAP
    seed: int = 0
    rows: int = 10
    cols: int = 10
    dump_graphs: str | None = None
    witness: str | None = None
    solutions: bool = False

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.route not in ROUTES:
            raise UsageError(f"--route must be one of {', '.join(ROUTES)}")
        if self.cap < 0:
            raise UsageError("--cap must be non-negative")
        if self.command == "gen":
            if self.rows < 1 or self.cols < 1:
                raise UsageError("--rows and --cols must be at least 1")
            if self.input is not None:
                raise UsageError("gen takes no input")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pphaplo",
        description="Perfect phylogeny haplotyping via resolution graphs.",
        epilog="Exit status: 0 accept/agree, 1 reject/disagree, 2 usage or input error.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input", nargs="?", help="genotype matrix file (default: standard input)")
            p.add_argument("--directed", action="store_true",
                           help="require a directed perfect phylogeny rooted at the all-0 haplotype")
        p.add_argument("--output", "-o", metavar="PATH", help="write the result here instead of stdout")

    p = sub.add_parser("decide", help="print YES or NO with a rejection witness")
    common(p)
    p.add_argument("--route", choices=ROUTES, default="parity",
                   help="odd-cycle check: parity union-find or subdivided-graph bipartiteness")
    p.add_argument("--dump-graphs", metavar="PATH", help="write the resolution graphs as DOT")

    p = sub.add_parser("solve", help="print an explaining haplotype matrix")
    common(p)

    p = sub.add_parser("tree", help="print the perfect phylogeny of the solution as DOT")
    common(p)

    p = sub.add_parser("oracle", help="decide by exhaustive search")
    common(p)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help=f"maximum number of 2-entries (default {DEFAULT_CAP})")
    p.add_argument("--solutions", action="store_true",
                   help="print every valid explaining matrix, separated by blank lines")

    p = sub.add_parser("gen", help="generate a planted instance")
    common(p, with_input=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rows", type=int, default=10, help="number of genotypes")
    p.add_argument("--cols", type=int, default=10, help="number of columns")
    p.add_argument("--witness", metavar="PATH", help="also write the planted haplotype matrix")

    p = sub.add_parser("crosscheck", help="compare both routes and the oracle")
    common(p)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help=f"skip the oracle above this many 2-entries (default {DEFAULT_CAP})")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fields = RunConfig.__dataclass_fields__
    cfg = RunConfig(**{k: v for k, v in vars(ns).items() if k in fields})
    cfg.validate()
    return cfg


def _read_matrix(cfg: RunConfig) -> GenotypeMatrix:
    if cfg.input is None or cfg.input == "-":
        return parse_genotype_matrix(sys.stdin.read())
    return parse_genotype_matrix(Path(cfg.input).read_text())


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


def _solve(A: GenotypeMatrix, directed: bool):
    return construct_haplotypes_dpph(A) if directed else construct_haplotypes_pph(A)


def cmd_decide(cfg: RunConfig) -> int:
    A = _read_matrix(cfg)
    verdict = decide(A, cfg.directed, cfg.route)
    if cfg.dump_graphs:
        target = A if cfg.directed else pph_to_dpph(A)[0]
        Path(cfg.dump_graphs).write_text(graphs_to_dot(analyze(target).graphs))
    _emit(cfg, verdict.report() + "\n")
    return EXIT_OK if verdict.admits else EXIT_REJECT


def cmd_solve(cfg: RunConfig) -> int:
    A = _read_matrix(cfg)
    try:
        B = _solve(A, cfg.directed)
    except NotAdmitting as exc:
        sys.stderr.write(exc.verdict.report() + "\n")
        return EXIT_REJECT
    _emit(cfg, B.to_text())
    return EXIT_OK


def cmd_tree(cfg: RunConfig) -> int:
    A = _read_matrix(cfg)
    try:
        B = _solve(A, cfg.directed)
    except NotAdmitting as exc:
        sys.stderr.write(exc.verdict.report() + "\n")
        return EXIT_REJECT
    T = build_tree(B, directed=cfg.directed)
    check = verify_tree(B, T)
    if not check:
        raise AssertionError(f"constructed tree fails condition {check.condition}: {check.detail}")
    _emit(cfg, tree_to_dot(T))
    return EXIT_OK


def cmd_oracle(cfg: RunConfig) -> int:
    A = _read_matrix(cfg)
    if cfg.solutions:
        found = [B.to_text() for B in oracle_solutions(A, cfg.directed, cfg.cap)]
        _emit(cfg, "\n".join(found))
        return EXIT_OK if found else EXIT_REJECT
    admits = oracle_decide(A, cfg.directed, cfg.cap)
    _emit(cfg, "YES\n" if admits else "NO\n")
    return EXIT_OK if admits else EXIT_REJECT


def cmd_gen(cfg: RunConfig) -> int:
    A, B = plant_instance(cfg.seed, cfg.rows, cfg.cols)
    _emit(cfg, A.to_text())
    if cfg.witness:
        Path(cfg.witness).write_text(B.to_text())
    return EXIT_OK


def cmd_crosscheck(cfg: RunConfig) -> int:
    A = _read_matrix(cfg)
    answers = {route: decide(A, cfg.directed, route).admits for route in ROUTES}
    lines = []
    try:
        answers["oracle"] = oracle_decide(A, cfg.directed, cfg.cap)
    except TooLarge as exc:
        lines.append(f"note: oracle skipped ({exc}); routes-only comparison")
    agree = len(set(answers.values())) == 1
    if agree and answers["parity"]:
        B = _solve(A, cfg.directed)
        gamete = three_gamete_check if cfg.directed else four_gamete_check
        if not explains_matrix(B, A) or gamete(B) is not None:
            agree = False
            lines.append("note: constructed haplotypes fail verification")
    detail = " ".join(f"{k}={'YES' if v else 'NO'}" for k, v in answers.items())
    if agree:
        head = f"AGREE {'YES' if answers['parity'] else 'NO'}"
    else:
        head = f"DISAGREE {detail}"
    _emit(cfg, "\n".join([head] + lines + [detail]) + "\n")
    return EXIT_OK if agree else EXIT_REJECT


HANDLERS = {
    "decide": cmd_decide,
    "solve": cmd_solve,
    "tree": cmd_tree,
    "oracle": cmd_oracle,
    "gen": cmd_gen,
    "crosscheck": cmd_crosscheck,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        cfg = config_from_args(ns)
        return HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"pphaplo: error: {exc}\n")
    except ParseError as exc:
        sys.stderr.write(f"pphaplo: input error: {exc}\n")
    except TooLarge as exc:
        sys.stderr.write(f"pphaplo: {exc}\n")
    except OSError as exc:
        sys.stderr.write(f"pphaplo: {exc}\n")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
