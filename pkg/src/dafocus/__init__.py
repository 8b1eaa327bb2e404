"""Proof search, focusing and readings for the displacement calculus with additives."""

from .formula import parse_formula, to_text
from .config import Sequent, parse_sequent, sequent_text
from .calculus import Derivation, prove_all, provable, replay
from .focus import prove_focused, focused_provable
from .semantics import readings

__all__ = [
    "parse_formula", "to_text", "Sequent", "parse_sequent", "sequent_text",
    "Derivation", "prove_all", "provable", "replay", "prove_focused",
    "focused_provable", "readings",
]

__version__ = "0.1.0"
