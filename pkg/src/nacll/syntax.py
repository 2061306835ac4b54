"""Formulas, structures and sequents, with the ASCII concrete syntax.

Everything here is immutable.  Structure nodes cache their hash and their
printed form, since the search engine hashes and prints the same values many
times over.

Paths into a structure are strings over ``"L"`` and ``"R"``; the empty string
addresses the root.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping


class SyntaxErrorAt(ValueError):
    """Raised by the parser; ``pos`` is the character offset of the problem."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class IllFormed(ValueError):
    """A formula uses a connective that does not belong to the target system."""


class InvalidPath(ValueError):
    pass


class Structure:
    """Base class of the structure tree: :data:`EMPTY`, :class:`Pair`, or a formula leaf."""

    __slots__ = ("_hash", "_text", "_size")
    _fields: tuple = ()

    def _init(self, *values) -> None:
        for name, value in zip(self._fields, values):
            object.__setattr__(self, name, value)
        object.__setattr__(self, "_hash", hash((type(self).__name__, *values)))
        object.__setattr__(self, "_text", None)
        object.__setattr__(self, "_size", None)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if type(other) is not type(self) or other._hash != self._hash:
            return False
        return all(getattr(self, f) == getattr(other, f) for f in self._fields)

    def __ne__(self, other) -> bool:
        return not self.__eq__(other)

    def __lt__(self, other) -> bool:
        return str(self) < str(other)

    def __str__(self) -> str:
        text = self._text
        if text is None:
            text = self._render()
            object.__setattr__(self, "_text", text)
        return text

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"

    def __reduce__(self):
        return (type(self), tuple(getattr(self, f) for f in self._fields))

    def _render(self) -> str:
        raise NotImplementedError

    @property
    def leaf_count(self) -> int:
        size = self._size
        if size is None:
            size = self._count()
            object.__setattr__(self, "_size", size)
        return size

    def _count(self) -> int:
        return 1


class _Empty(Structure):
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            inst = super().__new__(cls)
            inst._init()
            cls._instance = inst
        return cls._instance

    def __init__(self):
        pass

    def _render(self) -> str:
        return "()"

    def _count(self) -> int:
        return 0


EMPTY = _Empty()


class Pair(Structure):
    __slots__ = ("left", "right")
    _fields = ("left", "right")
    __match_args__ = ("left", "right")

    def __init__(self, left: Structure, right: Structure):
        self._init(left, right)

    def _render(self) -> str:
        return f"({self.left}, {self.right})"

    def _count(self) -> int:
        return self.left.leaf_count + self.right.leaf_count


class Formula(Structure):
    """A formula; as a structure it is a leaf."""

    __slots__ = ()


class Atom(Formula):
    __slots__ = ("name",)
    _fields = ("name",)
    __match_args__ = ("name",)

    def __init__(self, name: str):
        self._init(name)

    def _render(self) -> str:
        return self.name


class NegAtom(Formula):
    __slots__ = ("name",)
    _fields = ("name",)
    __match_args__ = ("name",)

    def __init__(self, name: str):
        self._init(name)

    def _render(self) -> str:
        return f"{self.name}^"


class _Binary(Formula):
    __slots__ = ("left", "right")
    _fields = ("left", "right")
    __match_args__ = ("left", "right")
    symbol = "?"

    def __init__(self, left: Formula, right: Formula):
        self._init(left, right)

    def _render(self) -> str:
        return f"({self.left} {self.symbol} {self.right})"


class Tensor(_Binary):
    __slots__ = ()
    symbol = "*"


class Par(_Binary):
    __slots__ = ()
    symbol = "#"


class Plus(_Binary):
    __slots__ = ()
    symbol = "+"


class With(_Binary):
    __slots__ = ()
    symbol = "&"


class ImplR(_Binary):
    """``A -> B``: ``left`` is the argument A, ``right`` the result B."""

    __slots__ = ()
    symbol = "->"


class ImplL(_Binary):
    """``B <- A``: ``left`` is the result B, ``right`` the argument A."""

    __slots__ = ()
    symbol = "<-"


class _Unit(Formula):
    __slots__ = ()
    text = "?"

    def __init__(self):
        self._init()

    def _render(self) -> str:
        return self.text


class One(_Unit):
    __slots__ = ()
    text = "1"


class Bot(_Unit):
    __slots__ = ()
    text = "bot"


class Zero(_Unit):
    __slots__ = ()
    text = "0"


class Top(_Unit):
    __slots__ = ()
    text = "top"


ONE, BOT, ZERO, TOP = One(), Bot(), Zero(), Top()


class _Modal(Formula):
    __slots__ = ("label", "body")
    _fields = ("label", "body")
    __match_args__ = ("label", "body")
    symbol = "?"

    def __init__(self, label: str, body: Formula):
        self._init(label, body)

    def _render(self) -> str:
        return f"{self.symbol}[{self.label}]{self.body}"


class Bang(_Modal):
    __slots__ = ()
    symbol = "!"


class Quest(_Modal):
    __slots__ = ()
    symbol = "?"


LITERALS = (Atom, NegAtom)


# -- well-formedness --------------------------------------------------------

_CLASSICAL_ONLY = (Par, Quest, NegAtom, Bot)
_INTUITIONISTIC_ONLY = (ImplR, ImplL)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, _Binary):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, _Modal):
        yield from subformulas(f.body)


def connective_count(f: Formula) -> int:
    return sum(1 for g in subformulas(f) if not isinstance(g, LITERALS))


def is_classical(f: Formula) -> bool:
    return not any(isinstance(g, _INTUITIONISTIC_ONLY) for g in subformulas(f))


def is_intuitionistic(f: Formula, zero: bool = False) -> bool:
    for g in subformulas(f):
        if isinstance(g, _CLASSICAL_ONLY):
            return False
        if isinstance(g, Zero) and not zero:
            return False
    return True


def check_classical(f: Formula) -> Formula:
    if not is_classical(f):
        raise IllFormed(f"not a classical formula: {f}")
    return f


def check_intuitionistic(f: Formula, zero: bool = False) -> Formula:
    if not is_intuitionistic(f, zero):
        raise IllFormed(f"not an intuitionistic formula{' (with 0)' if zero else ''}: {f}")
    return f


# -- negation ---------------------------------------------------------------

_DUAL_UNIT = {ONE: BOT, BOT: ONE, ZERO: TOP, TOP: ZERO}


def negate(f: Formula) -> Formula:
    """Linear negation pushed down to the atoms.

    Multiplicatives reverse their arguments, ``(F * G)^ = G^ # F^``, because
    the logic is non-commutative; additives keep their order.
    """
    match f:
        case Atom(name):
            return NegAtom(name)
        case NegAtom(name):
            return Atom(name)
        case Tensor(l, r):
            return Par(negate(r), negate(l))
        case Par(l, r):
            return Tensor(negate(r), negate(l))
        case Plus(l, r):
            return With(negate(l), negate(r))
        case With(l, r):
            return Plus(negate(l), negate(r))
        case Bang(i, body):
            return Quest(i, negate(body))
        case Quest(i, body):
            return Bang(i, negate(body))
        case One() | Bot() | Zero() | Top():
            return _DUAL_UNIT[f]
    raise IllFormed(f"negation is undefined on {f}")


# -- structures -------------------------------------------------------------

def pair(left: Structure, right: Structure) -> Structure:
    """Build ``(left, right)`` with empty components wiped out."""
    if left is EMPTY:
        return right
    if right is EMPTY:
        return left
    return Pair(left, right)


def normalize(s: Structure) -> Structure:
    if isinstance(s, Pair):
        left, right = normalize(s.left), normalize(s.right)
        if left is s.left and right is s.right and EMPTY not in (left, right):
            return s
        return pair(left, right)
    return s


def leaves(s: Structure, prefix: str = "") -> Iterator[tuple[str, Formula]]:
    """Formula leaves with their paths, left to right."""
    if isinstance(s, Pair):
        yield from leaves(s.left, prefix + "L")
        yield from leaves(s.right, prefix + "R")
    elif s is not EMPTY:
        yield prefix, s


def nodes(s: Structure, prefix: str = "") -> Iterator[tuple[str, Structure]]:
    """Every subtree (pre-order) with its path; empty structures have none."""
    if s is EMPTY:
        return
    yield prefix, s
    if isinstance(s, Pair):
        yield from nodes(s.left, prefix + "L")
        yield from nodes(s.right, prefix + "R")


def at(s: Structure, path: str) -> Structure:
    for i, step in enumerate(path):
        if not isinstance(s, Pair):
            raise InvalidPath(f"path {path!r} leaves the structure after {i} steps")
        if step == "L":
            s = s.left
        elif step == "R":
            s = s.right
        else:
            raise InvalidPath(f"bad path step {step!r} in {path!r}")
    if s is EMPTY:
        raise InvalidPath("path into the empty structure")
    return s


def _replace_raw(s: Structure, path: str, t: Structure) -> Structure:
    if not path:
        return t
    if not isinstance(s, Pair):
        raise InvalidPath(f"path {path!r} is invalid here")
    if path[0] == "L":
        return Pair(_replace_raw(s.left, path[1:], t), s.right)
    if path[0] == "R":
        return Pair(s.left, _replace_raw(s.right, path[1:], t))
    raise InvalidPath(f"bad path step {path[0]!r}")


def replace(s: Structure, path: str, t: Structure) -> Structure:
    """Substitute ``t`` for the subtree at ``path``; empties are wiped out."""
    at(s, path)
    return normalize(_replace_raw(s, path, t))


def replace_many(s: Structure, subst: Mapping[str, Structure]) -> Structure:
    """Simultaneous substitution at pairwise disjoint paths."""
    paths = sorted(subst)
    for a, b in zip(paths, paths[1:]):
        if b.startswith(a):
            raise InvalidPath(f"overlapping holes {a!r} and {b!r}")
    out = s
    for p in paths:
        at(s, p)
        out = _replace_raw(out, p, subst[p])
    return normalize(out)


def is_prefix(a: str, b: str) -> bool:
    return b.startswith(a)


def disjoint(a: str, b: str) -> bool:
    return not (a.startswith(b) or b.startswith(a))


# -- sequents ---------------------------------------------------------------

@dataclass(frozen=True)
class Sequent:
    """One-sided classical sequent ``|- S``."""

    structure: Structure

    def __post_init__(self):
        if self.structure is EMPTY:
            raise ValueError("a classical sequent needs a non-empty structure")

    def __str__(self) -> str:
        return f"|- {self.structure}"


@dataclass(frozen=True)
class ISequent:
    """Two-sided intuitionistic sequent ``S |- F``; the antecedent may be empty."""

    antecedent: Structure
    succedent: Formula

    def __str__(self) -> str:
        return f"{self.antecedent} |- {self.succedent}"


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<turnstile>\|-)|(?P<arrow>->|<-)|(?P<punct>[()\[\],*#+&!?^])"
    r"|(?P<ident>[A-Za-z0-9_]+))"
)
_ATOM = re.compile(r"[a-z][a-z0-9_]*\Z")
_LABEL = re.compile(r"[A-Za-z0-9_]+\Z")
_BINARY = {"*": Tensor, "#": Par, "+": Plus, "&": With, "->": ImplR, "<-": ImplL}
_UNITS = {"1": ONE, "0": ZERO, "bot": BOT, "top": TOP}


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:]
            if rest.strip():
                bad = pos + len(rest) - len(rest.lstrip())
                raise SyntaxErrorAt(f"unexpected character {text[bad]!r}", bad)
            break
        tokens.append((m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def take(self, expected: str | None = None) -> str:
        tok, pos = self.tokens[self.i]
        if expected is not None and tok != expected:
            shown = repr(tok) if tok else "end of input"
            raise SyntaxErrorAt(f"expected {expected!r}, found {shown}", pos)
        self.i += 1
        return tok

    def end(self) -> None:
        if self.peek() != "":
            raise SyntaxErrorAt(f"trailing input {self.peek()!r}", self.pos())

    def item(self) -> Structure:
        tok, pos = self.tokens[self.i]
        if tok == "(":
            self.take()
            if self.peek() == ")":
                self.take()
                return EMPTY
            first = self.item()
            sep, sep_pos = self.tokens[self.i]
            if sep == ",":
                self.take()
                second = self.item()
                self.take(")")
                return pair(first, second)
            if sep in _BINARY:
                if not isinstance(first, Formula):
                    raise SyntaxErrorAt(f"left operand of {sep!r} is a structure", sep_pos)
                self.take()
                second = self.item()
                if not isinstance(second, Formula):
                    raise SyntaxErrorAt(f"right operand of {sep!r} is a structure", pos)
                self.take(")")
                return _BINARY[sep](first, second)
            if sep == ")":
                raise SyntaxErrorAt("redundant parentheses around a single item", sep_pos)
            raise SyntaxErrorAt(f"expected ',' or a binary connective, found {sep!r}", sep_pos)
        if tok in ("!", "?"):
            self.take()
            self.take("[")
            label, lpos = self.tokens[self.i]
            if not _LABEL.match(label or " "):
                raise SyntaxErrorAt("expected a subexponential label", lpos)
            self.take()
            self.take("]")
            body = self.item()
            if not isinstance(body, Formula):
                raise SyntaxErrorAt(f"operand of {tok!r} is a structure", pos)
            return (Bang if tok == "!" else Quest)(label, body)
        if tok in _UNITS:
            self.take()
            return _UNITS[tok]
        if tok and _ATOM.match(tok):
            self.take()
            if self.peek() == "^":
                self.take()
                return NegAtom(tok)
            return Atom(tok)
        shown = repr(tok) if tok else "end of input"
        raise SyntaxErrorAt(f"unexpected {shown}", pos)

    def formula(self) -> Formula:
        pos = self.pos()
        f = self.item()
        if not isinstance(f, Formula):
            raise SyntaxErrorAt("expected a formula, found a structure", pos)
        return f


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    p.end()
    return f


def parse_structure(text: str) -> Structure:
    p = _Parser(text)
    s = p.item()
    p.end()
    return s


def parse_sequent(text: str) -> Sequent | ISequent:
    """``|- S`` gives a classical sequent, ``S |- F`` an intuitionistic one."""
    p = _Parser(text)
    if p.peek() == "|-":
        p.take()
        pos = p.pos()
        s = p.item()
        p.end()
        if s is EMPTY:
            raise SyntaxErrorAt("a classical sequent needs a non-empty structure", pos)
        return Sequent(s)
    ante = p.item()
    p.take("|-")
    succ = p.formula()
    p.end()
    return ISequent(ante, succ)


def parse_isequent(text: str) -> ISequent:
    """Like :func:`parse_sequent` but reads ``|- F`` as an empty antecedent."""
    seq = parse_sequent(text)
    if isinstance(seq, Sequent):
        if not isinstance(seq.structure, Formula):
            raise SyntaxErrorAt("an intuitionistic succedent must be a formula", 0)
        return ISequent(EMPTY, seq.structure)
    return seq


def parse_csequent(text: str) -> Sequent:
    seq = parse_sequent(text)
    if not isinstance(seq, Sequent):
        raise SyntaxErrorAt("expected a classical sequent '|- S'", 0)
    return seq
