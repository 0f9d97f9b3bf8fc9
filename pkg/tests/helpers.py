from __future__ import annotations

import oracles

from fanramsey import BLUE, RED, ColoredGraph, find_clique, find_fan, find_matching, shortest_odd_cycle
from fanramsey.detectors import is_bipartite

LETTER = {RED: "R", BLUE: "B"}


def to_graph(order: int, colors: dict[tuple[int, int], str]) -> ColoredGraph:
    return ColoredGraph.from_red_edges(order, [p for p, c in colors.items() if c == "R"])


def detector_disagreements(order: int, colors: dict[tuple[int, int], str]) -> list[str]:
    """Every way the detectors differ from the brute-force oracles on one coloring."""
    g = to_graph(order, colors)
    out: list[str] = []
    for color in (RED, BLUE):
        edges = oracles.edge_set(colors, LETTER[color])
        tag = f"N={order} {color.name}"

        omega = oracles.clique_number(order, edges)
        for r in range(1, order + 2):
            w = find_clique(g, color, r)
            expected = next(oracles.cliques(order, edges, r), None) if r <= omega else None
            got = None if w is None else w.vertices
            if got != expected:
                out.append(f"{tag} clique {r}: {got} != {expected}")
            elif w is not None and not w.validate(g):
                out.append(f"{tag} clique {r}: witness does not validate")

        nu = oracles.matching_number(tuple(range(order)), edges)
        for m in range(1, order // 2 + 2):
            w = find_matching(g, color, m)
            if (w is not None) != (nu >= m):
                out.append(f"{tag} matching {m}: found={w is not None}, oracle number {nu}")
            elif w is not None and not (w.validate(g) and w.size == m):
                out.append(f"{tag} matching {m}: bad witness {w}")

        for n in range(1, (order - 1) // 2 + 2):
            w = find_fan(g, color, n)
            expected = oracles.has_fan(order, edges, n)
            if (w is not None) != expected:
                out.append(f"{tag} fan {n}: found={w is not None}, oracle {expected}")
            elif w is not None and not (w.validate(g) and w.size == n):
                out.append(f"{tag} fan {n}: bad witness {w}")

        t = oracles.shortest_odd_cycle_length(order, edges)
        w = shortest_odd_cycle(g, color)
        got = None if w is None else len(w.vertices)
        if got != t:
            out.append(f"{tag} odd cycle: {got} != {t}")
        elif w is not None and not w.validate(g):
            out.append(f"{tag} odd cycle: witness does not validate")
        if is_bipartite(g, color).bipartite != (t is None):
            out.append(f"{tag} bipartite flag disagrees with odd girth {t}")
    return out
