"""Checkpoint files: the unexplored frontier of an aborted coloring search.

Layout::

    fanramsey-checkpoint 1
    order <N>
    red <target>
    blue <target>
    symmetry <scheme>
    ---
    <prefix over {R, B}, one per line; an empty line is the root>
"""

from __future__ import annotations

from pathlib import Path

from ..graph_model import TargetPair

MAGIC = "fanramsey-checkpoint 1"
_SYMBOL = {1: "R", 2: "B"}
_CODE = {"R": 1, "B": 2}


class CheckpointError(ValueError):
    pass


def _header(order: int, targets: TargetPair, symmetry: str) -> list[str]:
    return [MAGIC, f"order {order}", f"red {targets.red}", f"blue {targets.blue}", f"symmetry {symmetry}"]


def save_checkpoint(path, order: int, targets: TargetPair, symmetry: str, frontier) -> None:
    lines = _header(order, targets, symmetry) + ["---"]
    lines += ["".join(_SYMBOL[c] for c in prefix) for prefix in frontier]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_checkpoint(path, order: int, targets: TargetPair, symmetry: str) -> list[tuple[int, ...]]:
    """Read the frontier; the header must match the current query exactly."""
    lines = Path(path).read_text(encoding="utf-8").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    try:
        sep = lines.index("---")
    except ValueError:
        raise CheckpointError("checkpoint has no '---' separator") from None
    expected = _header(order, targets, symmetry)
    if lines[:sep] != expected:
        raise CheckpointError(
            f"checkpoint header {lines[:sep]!r} does not match query {expected!r}"
        )
    frontier = []
    for lineno, line in enumerate(lines[sep + 1:], start=sep + 2):
        try:
            frontier.append(tuple(_CODE[ch] for ch in line))
        except KeyError:
            raise CheckpointError(f"line {lineno}: prefix must use only R and B") from None
    return frontier
