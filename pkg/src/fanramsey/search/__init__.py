"""Exhaustive colorings search, star extensions and Ramsey-number checks."""

from __future__ import annotations

from .checkpoint import CheckpointError, load_checkpoint, save_checkpoint
from .coloring import DEFAULT_SCHEME, SCHEMES, ColoringProblem, closes_target, search_free_coloring
from .ramsey import (
    INCONCLUSIVE,
    REFUTED,
    VERIFIED,
    classify_block_coloring,
    uniqueness_scan,
    verify_ramsey_number,
)
from .runtime import ABORTED, EXHAUSTED, WITNESS_FOUND, Budget, SearchOutcome
from .star import max_star_extension, search_star_free

__all__ = [
    "ABORTED",
    "Budget",
    "CheckpointError",
    "ColoringProblem",
    "DEFAULT_SCHEME",
    "EXHAUSTED",
    "INCONCLUSIVE",
    "REFUTED",
    "SCHEMES",
    "SearchOutcome",
    "VERIFIED",
    "WITNESS_FOUND",
    "classify_block_coloring",
    "closes_target",
    "load_checkpoint",
    "max_star_extension",
    "save_checkpoint",
    "search_free_coloring",
    "search_star_free",
    "uniqueness_scan",
    "verify_ramsey_number",
]
