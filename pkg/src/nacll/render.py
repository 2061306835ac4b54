"""Plain-text and LaTeX (bussproofs) rendering of proof trees."""
from __future__ import annotations

from .proof import Proof
from .syntax import (EMPTY, Atom, Formula, ISequent, NegAtom, Pair, Sequent, Structure, _Binary,
                     _Modal, _Unit)

_LATEX_BINARY = {"*": r"\otimes", "#": r"\parr", "+": r"\oplus", "&": r"\&",
                 "->": r"\rightarrow", "<-": r"\leftarrow"}
_LATEX_UNIT = {"1": "1", "0": "0", "bot": r"\bot", "top": r"\top"}
_LATEX_RULE = {"Tensor": r"\otimes", "Par": r"\parr", "PlusL": r"\oplus_1", "PlusR": r"\oplus_2",
               "With": r"\&", "BotIntro": r"\bot", "OneAx": "1", "TopAx": r"\top", "Init": "init",
               "Cut": "cut", "Prom": "prom", "Der": "der", "QA1": "?A1", "QA2": "?A2",
               "QE": "?E", "QW": "?W", "QC": "?C"}

PREAMBLE = r"""\documentclass{article}
\usepackage{amssymb,bussproofs}
\providecommand{\parr}{\mathbin{\rotatebox[origin=c]{180}{\&}}}
\usepackage{graphicx}
\begin{document}
"""


def render_text(proof: Proof) -> str:
    """Indented tree, conclusion first; each line is ``rule [positions] sequent``."""
    lines: list[str] = []

    def go(p: Proof, depth: int) -> None:
        where = f" [{' '.join(repr(x) if x == '' else x for x in p.at)}]" if p.at else ""
        label = f" {{{p.label}}}" if p.label else ""
        cut = f" <{p.formula}>" if p.formula is not None else ""
        note = f"  ; {p.note}" if p.note else ""
        lines.append(f"{'  ' * depth}{p.rule}{label}{where}{cut}  {p.conclusion}{note}")
        for q in p.premises:
            go(q, depth + 1)

    go(proof, 0)
    return "\n".join(lines) + "\n"


def latex_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, NegAtom):
        return f"{f.name}^{{\\perp}}"
    if isinstance(f, _Unit):
        return _LATEX_UNIT[f.text]
    if isinstance(f, _Modal):
        return f"{f.symbol}^{{{f.label}}}{latex_formula(f.body)}"
    if isinstance(f, _Binary):
        return f"({latex_formula(f.left)} {_LATEX_BINARY[f.symbol]} {latex_formula(f.right)})"
    raise TypeError(f)


def latex_structure(s: Structure) -> str:
    if s is EMPTY:
        return ""
    if isinstance(s, Pair):
        return f"({latex_structure(s.left)}, {latex_structure(s.right)})"
    return latex_formula(s)


def latex_sequent(seq: Sequent | ISequent) -> str:
    if isinstance(seq, ISequent):
        return f"{latex_structure(seq.antecedent)} \\Rightarrow {latex_formula(seq.succedent)}"
    return f"\\Rightarrow {latex_structure(seq.structure)}"


def render_latex(proof: Proof, standalone: bool = False) -> str:
    out: list[str] = []

    def go(p: Proof) -> None:
        for q in p.premises:
            go(q)
        name = _LATEX_RULE.get(p.rule, p.rule)
        out.append(f"\\RightLabel{{\\scriptsize ${name}$}}")
        if not p.premises:
            out.append("\\AxiomC{}")
        inf = {0: "UnaryInfC", 1: "UnaryInfC", 2: "BinaryInfC"}[len(p.premises)]
        out.append(f"\\{inf}{{${latex_sequent(p.conclusion)}$}}")

    go(proof)
    body = "\\begin{prooftree}\n" + "\n".join(out) + "\n\\end{prooftree}\n"
    return PREAMBLE + body + "\\end{document}\n" if standalone else body


def render(proof: Proof, fmt: str = "text") -> str:
    if fmt == "text":
        return render_text(proof)
    if fmt == "latex":
        return render_latex(proof, standalone=True)
    raise ValueError(f"unknown format {fmt!r}")
