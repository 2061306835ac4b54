"""Proof trees and their S-expression file format.

A proof file holds one term::

    (rule Tensor :seq "|- ((a^, b^), (b * a))" :at ("R")
      :premises ((rule Init :seq "|- (a^, a)") (rule Init :seq "|- (b^, b)")))

Keys: ``:seq`` (required), ``:at`` (list of paths, each a string over L/R),
``:label``, ``:formula`` (the cut formula), ``:note`` and ``:premises``.
Lines starting with ``;`` are comments.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterator

from .syntax import Formula, ISequent, Sequent, parse_formula, parse_sequent


class Violation(Exception):
    """A rule application that does not check.

    ``location`` lists premise indices from the root of the proof down to the
    offending node.
    """

    def __init__(self, rule: str, message: str, location: tuple[int, ...] = ()):
        self.rule = rule
        self.message = message
        self.location = tuple(location)
        super().__init__(self._text())

    def _text(self) -> str:
        where = "/".join(map(str, self.location)) or "root"
        return f"[{where}] {self.rule}: {self.message}"

    def located(self, index: int) -> "Violation":
        return Violation(self.rule, self.message, (index, *self.location))


@dataclass(frozen=True)
class Proof:
    rule: str
    conclusion: Sequent | ISequent
    at: tuple[str, ...] = ()
    label: str | None = None
    formula: Formula | None = None
    premises: tuple["Proof", ...] = ()
    note: str | None = field(default=None, compare=False)

    def with_premises(self, *premises: "Proof") -> "Proof":
        return replace(self, premises=tuple(premises))

    def nodes(self) -> Iterator["Proof"]:
        yield self
        for p in self.premises:
            yield from p.nodes()

    @property
    def height(self) -> int:
        return 1 + max((p.height for p in self.premises), default=0)

    @property
    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def rules(self) -> list[str]:
        """Rule names in post-order, leaves first (the order a derivation is read top-down)."""
        out: list[str] = []
        for p in self.premises:
            out.extend(p.rules())
        out.append(self.rule)
        return out


# -- S-expressions ----------------------------------------------------------

class ProofFormatError(ValueError):
    pass


_SEXP_TOKEN = re.compile(r'\s*(?:;[^\n]*\n?|(\()|(\))|"((?:[^"\\]|\\.)*)"|([^\s()";]+))')


def _read_sexp(text: str):
    stack: list[list] = [[]]
    pos = 0
    while pos < len(text):
        m = _SEXP_TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip():
                raise ProofFormatError(f"unexpected character at {pos}")
            break
        pos = m.end()
        if m.group(1):
            stack.append([])
        elif m.group(2):
            if len(stack) == 1:
                raise ProofFormatError(f"unbalanced ')' at {m.start()}")
            done = stack.pop()
            stack[-1].append(done)
        elif m.group(3) is not None:
            stack[-1].append(_Str(re.sub(r"\\(.)", r"\1", m.group(3))))
        elif m.group(4):
            stack[-1].append(m.group(4))
    if len(stack) != 1:
        raise ProofFormatError("unbalanced '('")
    if len(stack[0]) != 1:
        raise ProofFormatError(f"expected exactly one term, found {len(stack[0])}")
    return stack[0][0]


class _Str(str):
    """A quoted string, as opposed to a bare symbol."""


def _to_proof(term) -> Proof:
    if not isinstance(term, list) or len(term) < 2 or term[0] != "rule":
        raise ProofFormatError(f"expected (rule NAME ...), got {term!r}")
    name = str(term[1])
    args = term[2:]
    if len(args) % 2:
        raise ProofFormatError(f"odd keyword list in rule {name}")
    kw = {}
    for key, value in zip(args[::2], args[1::2]):
        if not isinstance(key, str) or not key.startswith(":"):
            raise ProofFormatError(f"expected a :keyword in rule {name}, got {key!r}")
        kw[key[1:]] = value
    unknown = set(kw) - {"seq", "at", "label", "formula", "premises", "note"}
    if unknown:
        raise ProofFormatError(f"unknown key :{sorted(unknown)[0]} in rule {name}")
    if "seq" not in kw:
        raise ProofFormatError(f"rule {name} has no :seq")
    paths = kw.get("at", [])
    if not isinstance(paths, list):
        paths = [paths]
    for p in paths:
        if not re.fullmatch(r"[LR]*", str(p)):
            raise ProofFormatError(f"bad path {p!r} in rule {name}")
    premises = kw.get("premises", [])
    if not isinstance(premises, list):
        raise ProofFormatError(f":premises of {name} must be a list")
    return Proof(
        rule=name,
        conclusion=parse_sequent(str(kw["seq"])),
        at=tuple(str(p) for p in paths),
        label=str(kw["label"]) if "label" in kw else None,
        formula=parse_formula(str(kw["formula"])) if "formula" in kw else None,
        premises=tuple(_to_proof(p) for p in premises),
        note=str(kw["note"]) if "note" in kw else None,
    )


def loads(text: str) -> Proof:
    return _to_proof(_read_sexp(text))


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dumps(proof: Proof, indent: int = 0) -> str:
    pad = " " * indent
    parts = [f"{pad}(rule {proof.rule} :seq {_quote(str(proof.conclusion))}"]
    if proof.at:
        parts.append(" :at (" + " ".join(_quote(p) for p in proof.at) + ")")
    if proof.label is not None:
        parts.append(f" :label {proof.label}")
    if proof.formula is not None:
        parts.append(f" :formula {_quote(str(proof.formula))}")
    if proof.note is not None:
        parts.append(f" :note {_quote(proof.note)}")
    if proof.premises:
        inner = "\n".join(dumps(p, indent + 2) for p in proof.premises)
        parts.append(f"\n{pad} :premises (\n{inner})")
    parts.append(")")
    return "".join(parts)
