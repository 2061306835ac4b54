"""Acceptance criteria 1-8.

Each test records its outcome in :mod:`acceptance_log`; the terminal summary
prints one PASS/FAIL line per criterion.  Parts that fail because the
displayed associativity derivation does not check under the stated rules are
strict xfails, so they stay visible as FAIL in the summary.
"""
from __future__ import annotations

import random
import time
from functools import cache
from pathlib import Path

import pytest

from nacll import classical as C
from nacll import intuitionistic as I
from nacll.corpus import load_case
from nacll.embedding import Polarity, classify, h_count, lower_proof, polarizable, translate_sequent
from nacll.proof import Violation, loads
from nacll.search import Budget, Exhausted, Proved, prove_classical, prove_intuitionistic
from nacll.signature import EMPTY_SIGNATURE, load_signature
from nacll.syntax import Atom, Pair, leaves, parse_sequent

from acceptance_log import record
from designator_props import correctness, preservation, uniqueness
from oracle import Classes, all_structures, paths, random_structure
from sweep import _size, classical_corpus, cut_compositions, intuitionistic_corpus

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
LIMIT = 60.0
DEFECT = "the displayed associativity derivation does not check as transcribed; see decisions ledger"

ASSOC_SIG = load_signature((CORPUS / "signatures" / "assoc.sig").read_text())
ZERO_SIG = load_signature((CORPUS / "signatures" / "zero.sig").read_text())
BANG_ASSOC = parse_sequent("((a * b) * ![a1]c) |- (a * (b * ![a1]c))")
ZERO_SEQ = parse_sequent("(![a]((r <- (0 -> q)) <- p), ((s <- p) -> 0)) |- r")
NO_CONTRACTION = Budget(max_contractions=0)


def timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


# -- criterion 1 -----------------------------------------------------------------

def test_criterion_1_exhaustive_small_structures():
    def run():
        classes = Classes()
        bad, count = [], 0
        for n in range(1, 6):
            for s in all_structures(n):
                count += 1
                if correctness(s, classes) or uniqueness(s, classes) or \
                        preservation(s, Pair(Atom("x"), Atom("y"))):
                    bad.append(s)
        return bad, count

    (bad, count), secs = timed(run)
    ok = record(1, "exhaustive, <= 5 leaves", not bad and secs <= LIMIT,
                f"{count} structures, {len(bad)} failures, {secs:.1f}s")
    assert ok, bad[:5]


def test_criterion_1_random_structures():
    def run():
        rng = random.Random(20240601)
        bad = []
        for _ in range(10_000):
            s = random_structure(rng, rng.randint(2, 12))
            classes = Classes()
            marked = [rng.choice([p for p in paths(s) if p])]
            if correctness(s, classes) or uniqueness(s, classes, marked) or \
                    preservation(s, Atom("fresh"), marked):
                bad.append(s)
        return bad

    bad, secs = timed(run)
    ok = record(1, "10,000 random, <= 12 leaves", not bad and secs <= LIMIT,
                f"{len(bad)} failures, {secs:.1f}s")
    assert ok, bad[:5]


# -- criterion 2 -----------------------------------------------------------------

def _strict(name, sig):
    proof = loads((CORPUS / "proofs" / name).read_text())
    try:
        C.check_proof(proof, sig, C.STRICT)
        return True, f"{proof.size} steps check"
    except Violation as v:
        return False, str(v)


@pytest.mark.parametrize("name,sig", [("exchange.sexp", EMPTY_SIGNATURE),
                                      ("assoc.sexp", EMPTY_SIGNATURE),
                                      ("zero-classical.sexp", ZERO_SIG)])
def test_criterion_2_displayed_derivations(name, sig):
    ok, detail = _strict(name, sig)
    assert record(2, name, ok, detail), detail


@pytest.mark.xfail(strict=True, reason=DEFECT)
def test_criterion_2_associativity_derivation():
    ok, detail = _strict("bang-assoc-classical.sexp", ASSOC_SIG)
    assert record(2, "bang-assoc-classical.sexp", ok, detail), detail


# -- criterion 3 -----------------------------------------------------------------

def _expect(criterion, part, fn, kind):
    outcome, secs = timed(fn)
    ok = isinstance(outcome, kind) and secs <= LIMIT
    record(criterion, part, ok, f"{outcome} ({outcome.visited} states, {secs:.1f}s)")
    return ok, outcome


def test_criterion_3_associativity_intuitionistic():
    ok, out = _expect(3, "associativity sequent in ALL",
                      lambda: prove_intuitionistic(BANG_ASSOC, ASSOC_SIG, I.ALL, NO_CONTRACTION),
                      Exhausted)
    assert ok and out.contractions == 0


@pytest.mark.xfail(strict=True, reason=DEFECT)
def test_criterion_3_associativity_translation():
    ok, _ = _expect(3, "associativity translation, classical",
                    lambda: prove_classical(translate_sequent(BANG_ASSOC), ASSOC_SIG,
                                            NO_CONTRACTION), Proved)
    assert ok


def test_criterion_3_zero_intuitionistic():
    ok, out = _expect(3, "zero sequent in ALL+0",
                      lambda: prove_intuitionistic(ZERO_SEQ, ZERO_SIG, I.ALL.with_zero(),
                                                   NO_CONTRACTION), Exhausted)
    assert ok and out.contractions == 0


def test_criterion_3_zero_translation():
    ok, out = _expect(3, "zero translation, classical",
                      lambda: prove_classical(translate_sequent(ZERO_SEQ), ZERO_SIG, NO_CONTRACTION),
                      Proved)
    assert ok
    C.check_proof(out.proof, ZERO_SIG, C.MODULO)


# -- criterion 4 (shared sweep) ---------------------------------------------------------

@cache
def sweep():
    """Run the conservativity sweep once; later criteria reuse its proofs."""
    start = time.perf_counter()
    rows = []
    for name, sig, seq in intuitionistic_corpus():
        i = prove_intuitionistic(seq, sig, I.ALL, Budget())
        c = prove_classical(translate_sequent(seq), sig, Budget())
        lowered = None
        if isinstance(c, Proved):
            lowered = lower_proof(c.proof, sig, I.ALL, Budget())
        rows.append((name, sig, seq, i, c, lowered))
    return rows, time.perf_counter() - start


def test_criterion_4_conservativity():
    rows, secs = sweep()
    agree = [isinstance(i, (Proved, Exhausted)) and type(i) is type(c) for _, _, _, i, c, _ in rows]
    proved = sum(isinstance(c, Proved) for *_, c, _ in rows)
    ok = len(rows) >= 300 and all(agree) and secs <= LIMIT
    record(4, "agreement", ok, f"{sum(agree)}/{len(rows)} agree, {proved} proved, {secs:.1f}s")
    bad = [(str(seq), str(i), str(c)) for (_, _, seq, i, c, _), a in zip(rows, agree) if not a]
    assert ok, bad[:5]


def test_criterion_4_sweep_respects_bounds():
    rows, _ = sweep()
    assert all(_size(seq) <= 5 for _, _, seq, *_ in rows)
    assert all(sig.restricted_to({"C", "W", "E"}) for _, sig, *_ in rows)


def test_criterion_4_lowering():
    rows, _ = sweep()
    bad, fallbacks, total = [], 0, 0
    for _, sig, seq, _, c, lowered in rows:
        if lowered is None:
            continue
        total += 1
        fallbacks += sum(1 for n in lowered.nodes() if n.note)
        if lowered.conclusion != seq or not I.is_valid_i(lowered, sig, I.ALL):
            bad.append(str(seq))
    ok = record(4, "lowering", not bad,
                f"{total - len(bad)}/{total} lowered proofs check, {fallbacks} fallback nodes")
    assert ok, bad[:5]


# -- criterion 5 -----------------------------------------------------------------

def test_criterion_5_polarization():
    rows, _ = sweep()
    bad, total = [], 0
    for _, _, _, _, c, _ in rows:
        if not isinstance(c, Proved):
            continue
        total += 1
        seq = c.proof.conclusion
        formulas = [f for _, f in leaves(seq.structure)]
        positive = sum(classify(f) is Polarity.POSITIVE for f in formulas)
        h = sum(h_count(f) for f in formulas)
        if positive != 1 or h != len(formulas) - 1 or polarizable(seq) is None:
            bad.append(str(seq))
    ok = record(5, "one positive leaf and h-sum n-1", not bad and total > 0,
                f"{total - len(bad)}/{total} proved translations")
    assert ok, bad[:5]


# -- criterion 6 -----------------------------------------------------------------

def test_criterion_6_cut_admissibility():
    def run():
        lefts = [(sig, seq) for _, sig, seq, i, _, _ in sweep()[0]
                 if isinstance(i, Proved) and seq.antecedent != seq.succedent]
        cuts = cut_compositions(lefts, count=100)
        bad, heights = [], []
        for sig, proof in cuts:
            C.check_proof(proof, sig, C.MODULO)
            out = prove_classical(proof.conclusion, sig, Budget(max_depth=14, max_contractions=1))
            if isinstance(out, Proved) and out.proof.height <= 14 and "Cut" not in out.proof.rules():
                heights.append(out.proof.height)
            else:
                bad.append(str(proof.conclusion))
        return cuts, bad, heights

    (cuts, bad, heights), secs = timed(run)
    ok = record(6, "cut-free search on composed cuts",
                len(cuts) == 100 and not bad and secs <= LIMIT,
                f"{len(heights)}/{len(cuts)} proved cut-free, max height {max(heights, default=0)},"
                f" {secs:.1f}s")
    assert ok, bad[:5]


# -- criterion 7 -----------------------------------------------------------------

def test_criterion_7_containment():
    rows, _ = sweep()
    proofs = [(sig, i.proof) for _, sig, _, i, _, _ in rows if isinstance(i, Proved)]
    proofs += [(sig, low) for _, sig, _, _, _, low in rows if low is not None]
    for case in sorted((CORPUS / "cases").glob("*.case")):
        c = load_case(case)
        if c.system == "int" and c.expect == "Proved":
            out = prove_intuitionistic(c.sequent, c.signature, c.isystem(), c.budget)
            proofs.append((c.signature, out.proof))
    bad = [str(p.conclusion) for sig, p in proofs if not I.is_valid_i(p, sig, I.ALL_PLUS)]
    ok = record(7, "ALL proofs recheck in ALL_PLUS", not bad, f"{len(proofs) - len(bad)}/{len(proofs)}")
    assert ok, bad[:5]


@pytest.mark.xfail(strict=True, reason=DEFECT)
def test_criterion_7_associativity_in_plus_system():
    ok, _ = _expect(7, "associativity sequent in ALL_PLUS",
                    lambda: prove_intuitionistic(BANG_ASSOC, ASSOC_SIG, I.ALL_PLUS, NO_CONTRACTION),
                    Proved)
    assert ok


@pytest.mark.xfail(strict=True, reason=DEFECT)
def test_criterion_7_associativity_lowering():
    out = prove_classical(translate_sequent(BANG_ASSOC), ASSOC_SIG, NO_CONTRACTION)
    ok = isinstance(out, Proved)
    if ok:
        lowered = lower_proof(out.proof, ASSOC_SIG, I.ALL_PLUS)
        ok = lowered.conclusion == BANG_ASSOC and I.is_valid_i(lowered, ASSOC_SIG, I.ALL_PLUS)
    record(7, "lowered associativity proof checks", ok,
           "lowered" if ok else f"no classical proof to lower ({out})")
    assert ok


def test_converse_sequent_behaves_as_a_counterexample():
    """Not a criterion: the converse sequent shows the intended separation under these rules."""
    seq = parse_sequent("(a * (b * ![a1]c)) |- ((a * b) * ![a1]c)")
    assert isinstance(prove_intuitionistic(seq, ASSOC_SIG, I.ALL, NO_CONTRACTION), Exhausted)
    classical = prove_classical(translate_sequent(seq), ASSOC_SIG, NO_CONTRACTION)
    assert isinstance(classical, Proved)
    assert isinstance(prove_intuitionistic(seq, ASSOC_SIG, I.ALL_PLUS, NO_CONTRACTION), Proved)
    lowered = lower_proof(classical.proof, ASSOC_SIG, I.ALL_PLUS)
    I.check_proof_i(lowered, ASSOC_SIG, I.ALL_PLUS)


# -- criterion 8 -----------------------------------------------------------------

def test_criterion_8_quotient_safety():
    def run():
        items = [(sig, translate_sequent(seq), Budget())
                 for _, sig, seq, *_ in sweep()[0] if _size(seq) <= 4]
        items += [(sig, seq, Budget()) for _, sig, seq in classical_corpus(per_signature=60)]
        for case in sorted((CORPUS / "cases").glob("*.case")):
            c = load_case(case)
            if c.system == "classical" and c.sequent is not None:
                items.append((c.signature, c.sequent, c.budget))
        bad = []
        for sig, seq, budget in items:
            a = prove_classical(seq, sig, budget, canon=True)
            b = prove_classical(seq, sig, budget, canon=False)
            if type(a) is not type(b):
                bad.append((str(seq), str(a), str(b)))
        return items, bad

    (items, bad), secs = timed(run)
    ok = record(8, "canon vs literal states", not bad and secs <= LIMIT,
                f"{len(items) - len(bad)}/{len(items)} verdicts agree, {secs:.1f}s")
    assert ok, bad[:5]
