"""Inference over contact-geometric facts about open books."""

from obcalc.infer.engine import RULES, Closure, ConflictError, RULE_FUNCS, rule_ids, run
from obcalc.infer.model import Derivation, Fact, InferError, Program, UnknownSubject, load_program

__all__ = [
    "RULES", "RULE_FUNCS", "Closure", "ConflictError", "Derivation", "Fact", "InferError",
    "Program", "UnknownSubject", "load_program", "rule_ids", "run",
]
