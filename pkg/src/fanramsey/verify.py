"""Checks of the structural claims about free colorings of ``K_6n``.

Each check returns a ``LemmaReport``.  A check is *applicable* only when its
hypotheses hold (the coloring avoids a red ``F_n`` and a blue ``K_4``, plus
whatever the claim assumes); otherwise ``holds`` is ``None``.  Every check
recomputes from the detectors; nothing is cached between calls.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

from .detectors import (
    STAR_KIND,
    Witness,
    clique_in,
    clique_partitions,
    clique_witness,
    find_clique,
    is_bipartite,
    is_free,
    max_clique,
    shortest_odd_cycle,
)
from .graph_model import BLUE, RED, Clique, ColoredGraph, Fan, StarColoredGraph, TargetPair, mask_of

log = logging.getLogger(__name__)

P1 = "p1"
K3_C5_C7 = "k3_c5_c7"
L2 = "l2"
L4 = "l4"
STAR_CASES = "star_cases"

_CYCLE_CLAIM = {3: "k3", 5: "c5", 7: "c7"}


@dataclass
class LemmaReport:
    lemma: str
    applicable: bool
    holds: bool | None = None
    counterexample: Witness | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "applicable": self.applicable,
            "holds": self.holds,
            "counterexample": None if self.counterexample is None else self.counterexample.to_dict(),
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def fan_k4(n: int) -> TargetPair:
    return TargetPair(Fan(n), Clique(4))


def _require_order(g: ColoredGraph, n: int) -> None:
    if n < 2:
        raise ValueError("fan parameter must be at least 2")
    if g.order != 6 * n:
        raise ValueError(f"expected a coloring of order 6n = {6 * n}, got {g.order}")


def _not_free(lemma: str, witness: Witness, **details) -> LemmaReport:
    details["free"] = False
    details["violation"] = witness.to_dict()
    return LemmaReport(lemma, applicable=False, details=details)


def check_p1(g: ColoredGraph, n: int) -> LemmaReport:
    """Every red degree lies in ``[2n-1, 2n+1]`` (so every blue degree in ``[4n-2, 4n]``)."""
    _require_order(g, n)
    free, witness = is_free(g, fan_k4(n))
    if not free:
        return _not_free(P1, witness)
    red = [g.degree(v, RED) for v in range(g.order)]
    blue = [g.degree(v, BLUE) for v in range(g.order)]
    red_bad = [v for v, d in enumerate(red) if not 2 * n - 1 <= d <= 2 * n + 1]
    blue_bad = [v for v, d in enumerate(blue) if not 4 * n - 2 <= d <= 4 * n]
    details = {
        "red_degree_range": [min(red), max(red)],
        "blue_degree_range": [min(blue), max(blue)],
        "violations": red_bad,
        "blue_bound_consistent": red_bad == blue_bad,
    }
    if not red_bad:
        return LemmaReport(P1, True, True, details=details)
    v = red_bad[0]
    nb = [u for u in range(g.order) if u != v and g.color(u, v) is RED]
    star = Witness(STAR_KIND, RED, (v, *nb), tuple((min(u, v), max(u, v)) for u in nb), center=v)
    return LemmaReport(P1, True, False, star, details)


def least_red_clique(g: ColoredGraph, size: int) -> list[int] | None:
    return clique_in(g.adjacency(RED), (1 << g.order) - 1, size)


def check_k3_c5_c7(
    g: ColoredGraph, n: int, K=None, *, require_free: bool = True
) -> LemmaReport:
    """Blue on ``V - K`` has no odd cycle, for a red ``K_2n`` called ``K``.

    With ``K=None`` the lexicographically least red ``K_2n`` is used.  With
    ``require_free=False`` the freeness hypothesis is not enforced, which
    lets the check run on deliberately broken colorings.
    """
    _require_order(g, n)
    if K is None:
        K = least_red_clique(g, 2 * n)
        if K is None:
            return LemmaReport(K3_C5_C7, False, details={"reason": "no red K_2n"})
    K = sorted(K)
    if len(K) != 2 * n or len(set(K)) != 2 * n:
        raise ValueError(f"K must have exactly {2 * n} distinct vertices")
    if not clique_witness(K, RED).validate(g):
        raise ValueError("K is not a red clique")
    if require_free:
        free, witness = is_free(g, fan_k4(n))
        if not free:
            return _not_free(K3_C5_C7, witness, K=K)
    rest = ((1 << g.order) - 1) & ~mask_of(K)
    bip = is_bipartite(g, BLUE, rest)
    triangle = find_clique(_Restricted(g, rest), BLUE, 3)
    details = {"K": K, "bipartite": bip.bipartite, "blue_triangle": triangle is not None}
    if bip.bipartite:
        details.update(shortest_odd_cycle=None, violates=None)
        return LemmaReport(K3_C5_C7, True, True, details=details)
    cycle = shortest_odd_cycle(g, BLUE, rest)
    t = len(cycle.vertices)
    details.update(shortest_odd_cycle=t, violates=_CYCLE_CLAIM.get(t, "c5c7"))
    return LemmaReport(K3_C5_C7, True, False, cycle, details)


class _Restricted:
    """Graph view keeping only the vertices in ``mask``."""

    def __init__(self, g, mask: int):
        self.num_vertices = g.num_vertices
        self._g = g
        self._mask = mask

    def adjacency(self, color):
        m = self._mask
        return tuple(a & m if (m >> v) & 1 else 0 for v, a in enumerate(self._g.adjacency(color)))


def red_block_partition(g: ColoredGraph, n: int) -> list[list[int]] | None:
    """First partition of the vertices into three red ``K_2n`` (lexicographic)."""
    return next(clique_partitions(g.adjacency(RED), 2 * n), None)


def check_l2(g: ColoredGraph, n: int) -> LemmaReport:
    """A red ``K_2n`` forces three vertex-disjoint red ``K_2n``."""
    _require_order(g, n)
    free, witness = is_free(g, fan_k4(n))
    if not free:
        return _not_free(L2, witness)
    K = least_red_clique(g, 2 * n)
    if K is None:
        # a free coloring of order 6n without a red K_2n contradicts the clique-number claim
        log.warning("free coloring of order %d has no red K_%d", g.order, 2 * n)
        return LemmaReport(L2, False, details={"reason": "no red K_2n", "contradicts_l4": True})
    parts = red_block_partition(g, n)
    if parts is not None:
        return LemmaReport(L2, True, True, details={"blocks": parts})
    return LemmaReport(L2, True, False, clique_witness(K, RED), {"blocks": None})


def check_l4(g: ColoredGraph, n: int) -> LemmaReport:
    """The red clique number is exactly ``2n``."""
    _require_order(g, n)
    free, witness = is_free(g, fan_k4(n))
    if not free:
        return _not_free(L4, witness)
    best = max_clique(g.adjacency(RED))
    omega = len(best)
    details = {"clique_number": omega, "expected": 2 * n}
    if omega == 2 * n:
        return LemmaReport(L4, True, True, details=details)
    return LemmaReport(L4, True, False, clique_witness(best, RED), details)


def check_star_cases(g: StarColoredGraph, n: int) -> LemmaReport:
    """Degree pattern of a free star vertex over a base with red ``3K_2n`` blocks.

    At most one red star edge per block; if every block receives a blue star
    edge then ``d(w) <= 2n + 4``, otherwise ``d(w) <= 4n + 1``.
    """
    _require_order(g.base, n)
    parts = red_block_partition(g.base, n)
    if parts is None:
        raise ValueError("base has no red 3K_2n block structure")
    free, witness = is_free(g, fan_k4(n))
    if not free:
        return _not_free(STAR_CASES, witness, blocks=parts)
    red_per = [sum(1 for v in p if g.star_edges.get(v) is RED) for p in parts]
    blue_per = [sum(1 for v in p if g.star_edges.get(v) is BLUE) for p in parts]
    degree = g.k
    case = 1 if all(b >= 1 for b in blue_per) else 2
    bound = 2 * n + 4 if case == 1 else 4 * n + 1
    details = {
        "blocks": parts,
        "red_per_block": red_per,
        "blue_per_block": blue_per,
        "degree": degree,
        "case": case,
        "bound": bound,
    }
    w = g.star_vertex
    for p, r in zip(parts, red_per):
        if r > 1:
            reds = [v for v in p if g.star_edges.get(v) is RED]
            star = Witness(STAR_KIND, RED, (w, *reds), tuple((v, w) for v in reds), center=w)
            return LemmaReport(STAR_CASES, True, False, star, details)
    if degree > bound:
        blues = [v for v, c in g.star_edges.items() if c is BLUE]
        star = Witness(STAR_KIND, BLUE, (w, *blues), tuple((v, w) for v in blues), center=w)
        return LemmaReport(STAR_CASES, True, False, star, details)
    return LemmaReport(STAR_CASES, True, True, details=details)


def verify_all(g: ColoredGraph | StarColoredGraph, n: int) -> list[LemmaReport]:
    """Run every check that makes sense for ``g``; the block check runs once per red block."""
    if isinstance(g, StarColoredGraph):
        return [check_star_cases(g, n)] + verify_all(g.base, n)
    reports = [check_p1(g, n)]
    parts = red_block_partition(g, n) if g.order == 6 * n else None
    if parts is not None:
        reports += [check_k3_c5_c7(g, n, K=p) for p in parts]
    else:
        reports.append(check_k3_c5_c7(g, n))
    reports += [check_l2(g, n), check_l4(g, n)]
    return reports
