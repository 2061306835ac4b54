"""Structural equivalence, the designator, and canonical class representatives.

Two structures are equivalent when one can be turned into the other with
top-level exchange and re-association only.  Designating an occurrence
rotates it to the top-right position ``(context, occurrence)``; the context
obtained this way is unique within an equivalence class, so the least printed
designation over all leaves is a canonical representative of the class.
"""
from __future__ import annotations

from functools import lru_cache

from .syntax import EMPTY, Pair, Structure, at, leaves, nodes, pair

# top-level rewrites, read backwards: conclusion -> premise
E, A1, A2 = "E", "A1", "A2"


def _top(rule: str, s: Structure) -> Structure:
    """Apply a top-level structural rule backwards to ``s``."""
    if rule == E:
        return Pair(s.right, s.left)
    if rule == A1:  # ((G, D), P) -> (G, (D, P))
        return Pair(s.left.left, Pair(s.left.right, s.right))
    if rule == A2:  # (G, (D, P)) -> ((G, D), P)
        return Pair(Pair(s.left, s.right.left), s.right.right)
    raise ValueError(rule)


def rotation_steps(s: Structure, path: str) -> tuple[Structure, list[tuple[str, Structure]]]:
    """Rotate the subtree at ``path`` to the top-right.

    Returns the rotated structure and the list of ``(rule, premise)`` steps
    leading to it, each a top-level E, A1 or A2 applied backwards.
    """
    at(s, path)
    steps: list[tuple[str, Structure]] = []

    def step(rule: str) -> None:
        nonlocal s
        s = _top(rule, s)
        steps.append((rule, s))

    while len(path) > 1 or path == "L":
        if path[0] == "L":
            step(E)
            path = "R" + path[1:]
        elif path[1] == "R":
            step(A2)
            path = "R" + path[2:]
        else:
            step(A2)
            step(E)
            step(A2)
            path = "R" + path[2:]
    return s, steps


def designate(s: Structure, path: str) -> Structure:
    """The context left when the subtree at ``path`` is rotated to the top-right.

    Returns :data:`EMPTY` when ``path`` addresses the whole structure.
    """
    at(s, path)
    while path:
        if path == "R":
            return s.left
        if path[0] == "L":
            s, path = Pair(s.right, s.left), "R" + path[1:]
        elif path[1] == "R":
            s, path = Pair(Pair(s.left, s.right.left), s.right.right), "R" + path[2:]
        else:
            s, path = Pair(Pair(s.right.right, s.left), s.right.left), "R" + path[2:]
    return EMPTY


def rotate(s: Structure, path: str) -> Structure:
    """``(designate(s, path), at(s, path))`` with empties wiped out."""
    return pair(designate(s, path), at(s, path))


def rotations(s: Structure) -> list[tuple[Structure, str]]:
    """Every leaf rotated to the top-right, with the leaf's path in the result."""
    if s is EMPTY:
        raise ValueError("the empty structure has no rotations")
    out = []
    for p, _ in leaves(s):
        r = rotate(s, p)
        out.append((r, "R" if isinstance(r, Pair) else ""))
    return out


@lru_cache(maxsize=200_000)
def canonicalize(s: Structure) -> Structure:
    """Canonical representative of the equivalence class of ``s``."""
    if s is EMPTY:
        raise ValueError("cannot canonicalize the empty structure")
    if not isinstance(s, Pair):
        return s
    best = None
    best_text = None
    for p, _ in leaves(s):
        r = rotate(s, p)
        text = str(r)
        if best_text is None or text < best_text:
            best, best_text = r, text
    return best


def equivalent(s: Structure, t: Structure) -> bool:
    if s is EMPTY or t is EMPTY:
        return s is t
    if s == t:
        return True
    if s.leaf_count != t.leaf_count:
        return False
    return canonicalize(s) == canonicalize(t)


def split_points(s: Structure) -> list[tuple[Structure, Structure]]:
    """All ways to read ``s`` as ``(G, D)`` up to equivalence, empty parts included."""
    out = [(s, EMPTY), (EMPTY, s)]
    for p, sub in nodes(s):
        if p:
            out.append((designate(s, p), sub))
    return out
