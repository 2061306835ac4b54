"""Command-line entry point: ``nacll <command> ...``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import classical as C
from . import intuitionistic as I
from .corpus import report, run_corpus
from .embedding import NotATranslation, lift_proof, lower_proof, translate_sequent
from .equivalence import canonicalize
from .proof import ProofFormatError, Violation, dumps, loads
from .render import render
from .search import Budget, BudgetExceeded, Exhausted, Proved, prove_classical, prove_intuitionistic
from .signature import EMPTY_SIGNATURE, SignatureError, load_signature
from .syntax import ISequent, Sequent, SyntaxErrorAt, parse_sequent, parse_structure

EXIT = {Proved: 0, Exhausted: 1, BudgetExceeded: 2}


def _signature(args):
    return load_signature(Path(args.sig).read_text()) if args.sig else EMPTY_SIGNATURE


def _system(args) -> I.ISystem:
    base = I.ALL_PLUS if args.sys == "int-plus" else I.ALL
    return base.with_zero(args.zero)


def _read_proof(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return loads(text)


def _write(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_prove(args) -> int:
    seq = parse_sequent(args.sequent)
    sig = _signature(args)
    budget = Budget(args.depth, args.contractions, args.visited)
    if args.sys == "classical":
        if not isinstance(seq, Sequent):
            seq = translate_sequent(seq)
            print(f"translated: {seq}")
        outcome = prove_classical(seq, sig, budget, canon=not args.no_canon)
    else:
        if not isinstance(seq, ISequent):
            raise SystemExit("error: the intuitionistic systems need a two-sided sequent")
        outcome = prove_intuitionistic(seq, sig, _system(args), budget)
    if isinstance(outcome, Proved):
        print(f"Proved (height {outcome.proof.height}, {outcome.visited} states)")
        if args.emit:
            Path(args.emit).write_text(dumps(outcome.proof) + "\n")
        if args.render:
            sys.stdout.write(render(outcome.proof, args.render))
    else:
        print(f"{outcome} ({outcome.visited} states)")
    return EXIT[type(outcome)]


def cmd_check(args) -> int:
    proof = _read_proof(args.proof)
    sig = _signature(args)
    try:
        if isinstance(proof.conclusion, Sequent):
            C.check_proof(proof, sig, args.mode)
        else:
            I.check_proof_i(proof, sig, _system(args))
    except Violation as v:
        print(f"violation {v}")
        return 1
    print(f"ok: {proof.conclusion} ({proof.size} steps)")
    return 0


def cmd_translate(args) -> int:
    seq = parse_sequent(args.sequent)
    if not isinstance(seq, ISequent):
        raise SystemExit("error: translate expects a two-sided sequent")
    print(translate_sequent(seq))
    return 0


def cmd_lift(args) -> int:
    proof = _read_proof(args.proof)
    sig = _signature(args)
    I.check_proof_i(proof, sig, _system(args))
    _write(dumps(lift_proof(proof, sig)) + "\n", args.output)
    return 0


def cmd_lower(args) -> int:
    proof = _read_proof(args.proof)
    sig = _signature(args)
    C.check_proof(proof, sig, args.mode)
    lowered = lower_proof(proof, sig, _system(args), Budget(args.depth, args.contractions))
    _write(dumps(lowered) + "\n", args.output)
    return 0


def cmd_canon(args) -> int:
    text = args.structure.strip()
    s = parse_sequent(text).structure if text.startswith("|-") else parse_structure(text)
    print(canonicalize(s))
    return 0


def cmd_corpus(args) -> int:
    results = run_corpus(Path(args.directory), args.jobs)
    print(report(results))
    return 0 if all(r.passed for r in results) else 1


def cmd_render(args) -> int:
    _write(render(_read_proof(args.proof), args.format), args.output)
    return 0


def _common(p: argparse.ArgumentParser, system: bool = True) -> None:
    p.add_argument("--sig", metavar="FILE", help="signature file")
    if system:
        p.add_argument("--sys", choices=("classical", "int", "int-plus"), default="classical")
        p.add_argument("--zero", action="store_true", help="add the zero rule (intuitionistic)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nacll", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    d = Budget()

    p = sub.add_parser("prove", help="search for a cut-free proof")
    p.add_argument("sequent")
    _common(p)
    p.add_argument("--depth", type=int, default=d.max_depth)
    p.add_argument("--contractions", type=int, default=d.max_contractions)
    p.add_argument("--visited", type=int, default=d.max_visited)
    p.add_argument("--emit", metavar="FILE", help="write the proof as an S-expression")
    p.add_argument("--render", choices=("text", "latex"))
    p.add_argument("--no-canon", action="store_true", help="key states literally")
    p.set_defaults(run=cmd_prove)

    p = sub.add_parser("check", help="check a proof file")
    p.add_argument("proof")
    _common(p)
    p.add_argument("--mode", choices=(C.STRICT, C.MODULO), default=C.MODULO)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("translate", help="print the classical translation of a sequent")
    p.add_argument("sequent")
    p.set_defaults(run=cmd_translate)

    p = sub.add_parser("lift", help="intuitionistic proof to classical proof")
    p.add_argument("proof")
    _common(p)
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_lift, sys="int")

    p = sub.add_parser("lower", help="classical proof of a translation to intuitionistic proof")
    p.add_argument("proof")
    _common(p)
    p.add_argument("--mode", choices=(C.STRICT, C.MODULO), default=C.MODULO)
    p.add_argument("--depth", type=int, default=d.max_depth)
    p.add_argument("--contractions", type=int, default=d.max_contractions)
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_lower)

    p = sub.add_parser("canon", help="canonical representative of a structure's class")
    p.add_argument("structure")
    p.set_defaults(run=cmd_canon)

    p = sub.add_parser("corpus", help="run a directory of case files")
    p.add_argument("directory")
    p.add_argument("-j", "--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(run=cmd_corpus)

    p = sub.add_parser("render", help="render a proof file")
    p.add_argument("proof")
    p.add_argument("--format", choices=("text", "latex"), default="text")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "sys", None) == "classical" and args.command in ("lift", "lower"):
        args.sys = "int"
    try:
        return args.run(args)
    except (SyntaxErrorAt, SignatureError, ProofFormatError, NotATranslation, Violation,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
