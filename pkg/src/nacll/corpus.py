"""Line-oriented case files and the runner that replays them.

A case file holds ``key value`` lines.  Lines starting with ``#`` are
comments (``#`` is also the par connective, so there are no trailing
comments)::

    # where the case comes from
    name      exchange-check
    system    classical
    signature ../signatures/assoc.sig
    sequent   |- ((b^ * a), (a^ # b))
    expect    CheckOk
    proof     ../proofs/exchange.sexp
    mode      strict
    zero      yes
    contractions 0
    depth     14

``system`` is classical, int or int-plus; ``expect`` is Proved, Exhausted
or CheckOk (the proof file checks, in ``mode`` for classical proofs).
Relative paths resolve against the case file's directory.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import classical as C
from . import intuitionistic as I
from .proof import Violation, loads
from .search import Budget, prove_classical, prove_intuitionistic
from .signature import EMPTY_SIGNATURE, Signature, load_signature
from .syntax import ISequent, Sequent, parse_sequent

EXPECTATIONS = ("Proved", "Exhausted", "CheckOk")
SYSTEMS = ("classical", "int", "int-plus")


class CaseError(ValueError):
    pass


@dataclass
class Case:
    name: str
    system: str = "classical"
    expect: str = "Proved"
    sequent: Sequent | ISequent | None = None
    signature: Signature = EMPTY_SIGNATURE
    proof: Path | None = None
    mode: str = C.STRICT
    zero: bool = False
    budget: Budget = field(default_factory=Budget)
    comment: str = ""

    def isystem(self) -> I.ISystem:
        base = I.ALL_PLUS if self.system == "int-plus" else I.ALL
        return base.with_zero(self.zero)


@dataclass
class Result:
    case: Case
    passed: bool
    verdict: str
    seconds: float


def load_case(path: Path) -> Case:
    fields: dict[str, str] = {}
    comments = []
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        if not line:
            continue
        key, _, value = line.partition(" ")
        if not value.strip():
            raise CaseError(f"{path}:{lineno}: missing value for {key!r}")
        fields[key] = value.strip()
    unknown = set(fields) - {"name", "system", "signature", "sequent", "expect", "proof", "mode",
                             "zero", "contractions", "depth", "visited"}
    if unknown:
        raise CaseError(f"{path}: unknown key {sorted(unknown)[0]!r}")
    base = path.parent
    case = Case(name=fields.get("name", path.stem), comment=" ".join(comments))
    case.system = fields.get("system", "classical")
    if case.system not in SYSTEMS:
        raise CaseError(f"{path}: unknown system {case.system!r}")
    case.expect = fields.get("expect", "Proved")
    if case.expect not in EXPECTATIONS:
        raise CaseError(f"{path}: unknown expectation {case.expect!r}")
    if "signature" in fields:
        case.signature = load_signature((base / fields["signature"]).read_text())
    if "sequent" in fields:
        case.sequent = parse_sequent(fields["sequent"])
    if "proof" in fields:
        case.proof = base / fields["proof"]
    case.mode = fields.get("mode", C.STRICT)
    case.zero = fields.get("zero", "no") in ("yes", "true", "1")
    defaults = Budget()
    case.budget = Budget(int(fields.get("depth", defaults.max_depth)),
                         int(fields.get("contractions", defaults.max_contractions)),
                         int(fields.get("visited", defaults.max_visited)))
    if case.expect == "CheckOk" and case.proof is None:
        raise CaseError(f"{path}: CheckOk needs a proof file")
    if case.expect != "CheckOk" and case.sequent is None:
        raise CaseError(f"{path}: search cases need a sequent")
    return case


def run_case(case: Case) -> Result:
    start = time.perf_counter()
    if case.expect == "CheckOk":
        proof = loads(case.proof.read_text())
        try:
            if case.system == "classical":
                C.check_proof(proof, case.signature, case.mode)
            else:
                I.check_proof_i(proof, case.signature, case.isystem())
            verdict = "CheckOk"
        except Violation as v:
            verdict = f"Violation {v}"
        if case.sequent is not None and proof.conclusion != case.sequent:
            verdict = f"proof concludes {proof.conclusion}, case names {case.sequent}"
    else:
        if case.system == "classical":
            outcome = prove_classical(case.sequent, case.signature, case.budget)
        else:
            outcome = prove_intuitionistic(case.sequent, case.signature, case.isystem(), case.budget)
        verdict = type(outcome).__name__
    return Result(case, verdict == case.expect, verdict, time.perf_counter() - start)


def run_corpus(directory: Path, jobs: int = 1) -> list[Result]:
    """Run every case in ``directory``; ``jobs > 1`` runs cases in worker processes."""
    files = sorted(Path(directory).glob("*.case"))
    if not files:
        raise CaseError(f"no .case files in {directory}")
    cases = [load_case(f) for f in files]
    if jobs <= 1:
        return [run_case(c) for c in cases]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_case, cases))


def report(results: list[Result]) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status}  {r.case.name:<28} expect {r.case.expect:<9} got {r.verdict}"
                     f"  ({r.seconds:.2f}s)")
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} cases passed")
    return "\n".join(lines)

