"""Proof kernel and bounded proof search for non-associative, non-commutative
linear logic with subexponentials, classical and intuitionistic."""

__version__ = "0.1.0"
