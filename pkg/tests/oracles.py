"""Brute-force reference answers built from plain edge sets, sharing no code with the package."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache


def random_coloring(order: int, rng: random.Random, p_red: float = 0.5) -> dict[tuple[int, int], str]:
    return {(u, v): "R" if rng.random() < p_red else "B" for u, v in itertools.combinations(range(order), 2)}


def all_colorings(order: int):
    pairs = list(itertools.combinations(range(order), 2))
    for bits in range(1 << len(pairs)):
        yield {p: ("R" if (bits >> i) & 1 else "B") for i, p in enumerate(pairs)}


def edge_set(colors: dict[tuple[int, int], str], c: str) -> set[frozenset[int]]:
    return {frozenset(p) for p, col in colors.items() if col == c}


def cliques(order: int, edges: set[frozenset[int]], r: int):
    """All r-cliques in lexicographic order."""
    for sub in itertools.combinations(range(order), r):
        if all(frozenset(p) in edges for p in itertools.combinations(sub, 2)):
            yield sub


def clique_number(order: int, edges: set[frozenset[int]]) -> int:
    best = min(order, 1)
    for r in range(2, order + 1):
        if next(cliques(order, edges, r), None) is None:
            break
        best = r
    return best


def matching_number(vertices: tuple[int, ...], edges: set[frozenset[int]]) -> int:
    @lru_cache(maxsize=None)
    def best(rest: tuple[int, ...]) -> int:
        if len(rest) < 2:
            return 0
        v, tail = rest[0], rest[1:]
        out = best(tail)
        for i, u in enumerate(tail):
            if frozenset((u, v)) in edges:
                out = max(out, 1 + best(tail[:i] + tail[i + 1:]))
        return out

    return best(tuple(sorted(vertices)))


def has_fan(order: int, edges: set[frozenset[int]], n: int) -> bool:
    """A center joined to 2n vertices that split into n edges."""
    for c in range(order):
        nbrs = tuple(u for u in range(order) if frozenset((c, u)) in edges)
        if len(nbrs) >= 2 * n and matching_number(nbrs, edges) >= n:
            return True
    return False


def shortest_odd_cycle_length(order: int, edges: set[frozenset[int]]) -> int | None:
    """Least odd t with trace(A^t) > 0; a shortest odd closed walk is a cycle."""
    a = [[1 if frozenset((i, j)) in edges else 0 for j in range(order)] for i in range(order)]

    def mul(x, y):
        return [[sum(x[i][k] * y[k][j] for k in range(order)) for j in range(order)] for i in range(order)]

    sq = mul(a, a)
    power = a
    for t in range(1, order + 1, 2):
        if t > 1:
            power = mul(power, sq)
        if t >= 3 and any(power[i][i] for i in range(order)):
            return t
    return None


def is_bipartite(order: int, edges: set[frozenset[int]]) -> bool:
    """Try every 2-coloring of the vertices."""
    for mask in range(1 << max(order - 1, 0)):
        side = [(mask >> v) & 1 for v in range(order)]
        if all(side[u] != side[v] for u, v in (tuple(e) for e in edges)):
            return True
    return False
