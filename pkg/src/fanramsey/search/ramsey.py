"""Ramsey-number verification by exhaustion, and the block-family uniqueness scan."""

from __future__ import annotations

import logging
import time
from pathlib import Path

from ..constructions import block_of, blocks, known_critical
from ..detectors import clique_partitions, is_free
from ..graph_model import RED, Clique, ColoredGraph, Fan, TargetPair, serialize, write_graph
from .coloring import DEFAULT_SCHEME, ColoringProblem, search_free_coloring
from .runtime import ABORTED, EXHAUSTED, WITNESS_FOUND, Budget, run_tasks

log = logging.getLogger(__name__)

VERIFIED = "VERIFIED"
REFUTED = "REFUTED"
INCONCLUSIVE = "INCONCLUSIVE"


def _side(outcome, expect: str, method: str, order: int) -> dict:
    if outcome.status == ABORTED:
        verdict = INCONCLUSIVE
    elif outcome.status == expect:
        verdict = VERIFIED
    else:
        verdict = REFUTED
    return {
        "order": order,
        "expected": expect,
        "status": outcome.status,
        "verdict": verdict,
        "method": method,
        "stats": outcome.stats,
    }


def verify_ramsey_number(
    targets: TargetPair,
    claimed_r: int,
    budget: Budget | None = None,
    *,
    symmetry: str = DEFAULT_SCHEME,
    workers: int = 1,
    use_constructions: bool = True,
) -> dict:
    """Check ``r(targets) = claimed_r``: a free coloring of ``K_{r-1}`` and none of ``K_r``.

    The lower side first tries a known construction (validated with
    ``is_free``) and falls back to search.  A side that runs out of budget is
    reported ``INCONCLUSIVE``, never as verified.
    """
    if claimed_r < 2:
        raise ValueError("claimed Ramsey number must be at least 2")
    if budget is None:
        budget = Budget.from_env()
    low_order = claimed_r - 1
    lower = None
    if use_constructions:
        g = known_critical(targets, low_order)
        if g is not None:
            t0 = time.monotonic()
            free = is_free(g, targets).free
            if free:
                from .runtime import SearchOutcome

                out = SearchOutcome(WITNESS_FOUND, g, elapsed=time.monotonic() - t0, symmetry="n/a")
                lower = _side(out, WITNESS_FOUND, "construction", low_order)
            else:
                log.warning("known construction at order %d is not free for %s", low_order, targets)
    if lower is None:
        out = search_free_coloring(low_order, targets, budget, symmetry=symmetry, workers=workers)
        lower = _side(out, WITNESS_FOUND, "search", low_order)
        if out.witness is not None and not is_free(out.witness, targets).free:
            raise AssertionError("search returned a witness that is not free")
    out = search_free_coloring(claimed_r, targets, budget, symmetry=symmetry, workers=workers)
    if out.witness is not None and not is_free(out.witness, targets).free:
        raise AssertionError("search returned a witness that is not free")
    upper = _side(out, EXHAUSTED, "search", claimed_r)

    verdicts = {lower["verdict"], upper["verdict"]}
    if REFUTED in verdicts:
        verdict = REFUTED
    elif INCONCLUSIVE in verdicts:
        verdict = INCONCLUSIVE
    else:
        verdict = VERIFIED
    return {
        "targets": {"red": str(targets.red), "blue": str(targets.blue)},
        "claimed": claimed_r,
        "lower": lower,
        "upper": upper,
        "verdict": verdict,
    }


# -- membership in the block family ------------------------------------------------

G1_CLASS = "G1"
G2_CLASS = "G2"
PARTIAL_CLASS = "G2-partial"
NON_MEMBER = "non-member"
_RANK = {G1_CLASS: 0, G2_CLASS: 1, PARTIAL_CLASS: 2}


def _classify_partition(g: ColoredGraph, parts: list[list[int]]) -> str | None:
    red = g.adjacency(RED)
    masks = [sum(1 << v for v in p) for p in parts]
    counts = []
    for i, j in ((0, 1), (1, 2), (2, 0)):
        seen_j = 0
        k = 0
        for a in parts[i]:
            cross = red[a] & masks[j]
            if cross.bit_count() > 1 or cross & seen_j:
                return None
            if cross:
                seen_j |= cross
                k += 1
        counts.append(k)
    for a in parts[0]:
        for b in parts[1]:
            if (red[a] >> b) & 1 and red[a] & red[b] & masks[2]:
                return None
    if all(k == 0 for k in counts):
        return G1_CLASS
    if all(k >= 1 for k in counts):
        return G2_CLASS
    return PARTIAL_CLASS


def classify_block_coloring(g: ColoredGraph, n: int) -> str:
    """Which part of the block family ``g`` belongs to, under any red ``3K_2n`` partition.

    ``G2-partial`` marks red cross edges that fit the family except that some
    block pair carries none, which the family's definition excludes.
    """
    if g.order != 6 * n:
        raise ValueError(f"expected order {6 * n}, got {g.order}")
    best = None
    for parts in clique_partitions(g.adjacency(RED), 2 * n):
        cls = _classify_partition(g, parts)
        if cls is not None and (best is None or _RANK[cls] < _RANK[best]):
            best = cls
            if best == G1_CLASS:
                break
    return best or NON_MEMBER


def uniqueness_scan(
    n: int,
    budget: Budget | None = None,
    *,
    symmetry: str = DEFAULT_SCHEME,
    dump_dir: str | Path | None = None,
    max_dump: int = 20,
) -> dict:
    """Enumerate free colorings of ``K_6n`` whose red graph contains the three blocks.

    The blocks are pinned red; symmetry breaking only permutes vertices inside
    a block, so the enumeration covers every such coloring up to
    block-preserving isomorphism.  Each coloring found is classified with
    ``classify_block_coloring``; colorings outside ``{G1, G2}`` are written to
    ``dump_dir`` when given.
    """
    if n < 1:
        raise ValueError("fan parameter must be positive")
    if budget is None:
        budget = Budget.from_env()
    order = 6 * n
    targets = TargetPair(Fan(n), Clique(4))
    labels = tuple(block_of(n, v) for v in range(order))
    fixed = tuple(
        ((u, v), 1) for part in blocks(n) for u in part for v in part if u < v
    )
    problem = ColoringProblem(order, targets, symmetry, fixed=fixed, labels=labels, collect=True)
    t0 = time.monotonic()
    status, _, nodes, prunes, _, found = run_tasks(
        problem, [()], 1, budget, combine_value=lambda vals: [g for v in vals if v for g in v]
    )
    classes = {G1_CLASS: 0, G2_CLASS: 0, PARTIAL_CLASS: 0, NON_MEMBER: 0}
    dumped: list[str] = []
    examples: dict[str, str] = {}
    for g in found:
        if not is_free(g, targets).free:
            raise AssertionError("enumerated coloring is not free")
        cls = classify_block_coloring(g, n)
        classes[cls] += 1
        if cls in (PARTIAL_CLASS, NON_MEMBER):
            examples.setdefault(cls, serialize(g))
            if dump_dir is not None and len(dumped) < max_dump:
                path = Path(dump_dir) / f"counterexample_n{n}_{len(dumped):03d}_{cls}.cg"
                path.parent.mkdir(parents=True, exist_ok=True)
                write_graph(g, path)
                dumped.append(str(path))
    return {
        "n": n,
        "order": order,
        "status": status,
        "found": len(found),
        "classes": classes,
        "counterexamples": classes[PARTIAL_CLASS] + classes[NON_MEMBER],
        "non_members": classes[NON_MEMBER],
        "dumped": dumped,
        "stats": {
            "nodes": nodes,
            "prunes": prunes,
            "elapsed": round(time.monotonic() - t0, 6),
            "symmetry": f"{symmetry}+blocks",
        },
        "examples": examples,
    }
