"""Minimum-time implementation of two-qubit gates on a heteronuclear spin pair.

Computes local invariants, the local-equivalence class (I-IV), the analytic
minimum time, a constructive Cartan factorization and a time-optimal
hard-pulse schedule.
"""
from .bell import InvariantSet, bell_form, invariants, m_matrix
from .gates import (Gate, PhaseFactor, SystemConfig, canonical, haar_su2, haar_su4,
                    local_gate, named_gate, normalize_su4, validate)
from .kak import CartanFactorization, canonicalize, decompose, minimal_factorization
from .pulse import PulseSchedule, simulate, synthesize
from .weyl import AlphaBeta, ClassificationResult, classify, min_time

__all__ = [
    "AlphaBeta", "CartanFactorization", "ClassificationResult", "Gate", "InvariantSet",
    "PhaseFactor", "PulseSchedule", "SystemConfig", "bell_form", "canonical",
    "canonicalize", "classify", "decompose", "haar_su2", "haar_su4", "invariants",
    "local_gate", "m_matrix", "min_time", "minimal_factorization", "named_gate",
    "normalize_su4", "simulate", "synthesize", "validate",
]
