"""Subexponential signatures: an index preorder with an axiom set per index."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .syntax import EMPTY, Pair, Quest, Structure, leaves, pair

AXIOMS = frozenset({"C", "W", "E", "A1", "A2"})


class SignatureError(ValueError):
    pass


class NotApplicable(ValueError):
    """Promotion cannot fire: the context has a leaf without the modality."""


@dataclass(frozen=True)
class Signature:
    """Finite preorder on labels plus the axioms each label licenses.

    ``leq`` holds the reflexive-transitive closure as a set of pairs, so order
    queries are set lookups.  Labels that were never declared behave as if
    declared with no axioms and related only to themselves.
    """

    axioms: Mapping[str, frozenset[str]] = field(default_factory=dict)
    leq: frozenset[tuple[str, str]] = frozenset()

    @classmethod
    def build(cls, axioms: Mapping[str, Iterable[str]] | None = None,
              order: Iterable[tuple[str, str]] = ()) -> "Signature":
        ax = {k: frozenset(v) for k, v in (axioms or {}).items()}
        for label, names in ax.items():
            unknown = names - AXIOMS
            if unknown:
                raise SignatureError(f"unknown axiom {sorted(unknown)[0]!r} for label {label!r}")
        pairs = set()
        for lo, hi in order:
            for x in (lo, hi):
                if x not in ax:
                    raise SignatureError(f"undeclared index {x!r} in order declaration")
            pairs.add((lo, hi))
        closure = _closure(ax.keys(), pairs)
        for lo, hi in sorted(closure):
            missing = ax[lo] - ax[hi]
            if missing:
                raise SignatureError(
                    f"not upwardly closed: {lo} <= {hi} but {sorted(missing)[0]} "
                    f"is in f({lo}) and not in f({hi})")
        return cls(ax, frozenset(closure))

    @property
    def labels(self) -> list[str]:
        return sorted(self.axioms)

    def has(self, label: str, axiom: str) -> bool:
        return axiom in self.axioms.get(label, ())

    def le(self, i: str, j: str) -> bool:
        return i == j or (i, j) in self.leq

    def restricted_to(self, allowed: Iterable[str]) -> bool:
        allowed = set(allowed)
        return all(v <= allowed for v in self.axioms.values())

    def to_text(self) -> str:
        lines = [f"label {k} : {', '.join(sorted(v))}".rstrip() for k, v in sorted(self.axioms.items())]
        lines += [f"order {lo} <= {hi}" for lo, hi in sorted(self.leq) if lo != hi]
        return "\n".join(lines) + "\n"


EMPTY_SIGNATURE = Signature()


def _closure(labels: Iterable[str], pairs: set[tuple[str, str]]) -> set[tuple[str, str]]:
    labels = list(labels)
    rel = {x: {x} for x in labels}
    for lo, hi in pairs:
        rel[lo].add(hi)
    for k in labels:  # Warshall
        for i in labels:
            if k in rel[i]:
                rel[i] |= rel[k]
    return {(i, j) for i in labels for j in rel[i]}


_LABEL_LINE = re.compile(r"label\s+([A-Za-z0-9_]+)\s*:\s*(.*)\Z")
_ORDER_LINE = re.compile(r"order\s+([A-Za-z0-9_]+)\s*<=\s*([A-Za-z0-9_]+)\Z")


def load_signature(text: str) -> Signature:
    axioms: dict[str, set[str]] = {}
    order = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LABEL_LINE.match(line)
        if m:
            names = [a.strip() for a in m.group(2).split(",") if a.strip()]
            for a in names:
                if a not in AXIOMS:
                    raise SignatureError(f"line {lineno}: unknown axiom {a!r}")
            axioms.setdefault(m.group(1), set()).update(names)
            continue
        m = _ORDER_LINE.match(line)
        if m:
            order.append((m.group(1), m.group(2)))
            continue
        raise SignatureError(f"line {lineno}: cannot parse {raw!r}")
    return Signature.build(axioms, order)


def upset_restrict(sig: Signature, g: Structure, i: str, modality: type = Quest) -> Structure | None:
    """The promotion context for index ``i``.

    Leaves labelled above ``i`` are kept; leaves labelled elsewhere are erased
    when their label licenses weakening.  Returns ``None`` when some leaf is
    neither, and raises :class:`NotApplicable` if a leaf lacks the modality
    (``Quest`` for one-sided sequents, ``Bang`` for antecedents).
    """
    if g is EMPTY:
        return EMPTY
    return _restrict(sig, g, i, modality)


def _restrict(sig, g, i, modality):
    if isinstance(g, Pair):
        left = _restrict(sig, g.left, i, modality)
        right = _restrict(sig, g.right, i, modality)
        if left is None or right is None:
            return None
        return pair(left, right)
    if not isinstance(g, modality):
        raise NotApplicable(f"{g} is not a {modality.__name__.lower()}-formula")
    if sig.le(i, g.label):
        return g
    if sig.has(g.label, "W"):
        return EMPTY
    return None


def licensed(sig: Signature, s: Structure, axiom: str, modality: type = Quest) -> bool:
    """Every leaf of ``s`` carries ``modality`` with a label licensing ``axiom``."""
    return all(isinstance(f, modality) and sig.has(f.label, axiom) for _, f in leaves(s))
