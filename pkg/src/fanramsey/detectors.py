"""Exact detectors for monochromatic fans, cliques, matchings and odd cycles.

Every public detector takes a graph (``ColoredGraph`` or ``StarColoredGraph``)
and a color and works on the bitmask adjacency of that color class.  The
mask-level helpers (``max_matching``, ``clique_in``, ``fan_at`` ...) are
exported for the search code, which keeps its own partial adjacency.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .graph_model import (
    CLIQUE,
    FAN,
    MATCHING,
    Color,
    Graph,
    StarColoredGraph,
    Target,
    TargetPair,
    bits,
    mask_of,
)

FAN_KIND = "Fan"
CLIQUE_KIND = "Clique"
MATCHING_KIND = "Matching"
ODD_CYCLE_KIND = "OddCycle"
STAR_KIND = "Star"


@dataclass(frozen=True)
class Witness:
    """A monochromatic substructure found in a host graph."""

    kind: str
    color: Color
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    center: int | None = None

    def validate(self, g: Graph) -> bool:
        """Re-check the witness against ``g`` by direct edge-color lookups."""
        try:
            if any(g.color(u, v) is not self.color for u, v in self.edges):
                return False
        except ValueError:
            return False
        verts = set(self.vertices)
        if len(verts) != len(self.vertices):
            return False
        if any(u not in verts or v not in verts for u, v in self.edges):
            return False
        if self.kind == CLIQUE_KIND:
            want = {(min(a, b), max(a, b)) for i, a in enumerate(self.vertices) for b in self.vertices[i + 1:]}
            return want <= {(min(a, b), max(a, b)) for a, b in self.edges}
        if self.kind == MATCHING_KIND:
            ends = [x for e in self.edges for x in e]
            return len(ends) == len(set(ends)) == len(verts)
        if self.kind == FAN_KIND:
            c = self.center
            if c is None or c not in verts:
                return False
            blades = [e for e in self.edges if c not in e]
            ends = [x for e in blades for x in e]
            if len(ends) != len(set(ends)) or len(ends) != len(verts) - 1:
                return False
            spokes = {(min(c, x), max(c, x)) for x in ends}
            return spokes <= {(min(a, b), max(a, b)) for a, b in self.edges}
        if self.kind == ODD_CYCLE_KIND:
            t = len(self.vertices)
            if t < 3 or t % 2 == 0:
                return False
            ring = {
                (min(self.vertices[i], self.vertices[(i + 1) % t]), max(self.vertices[i], self.vertices[(i + 1) % t]))
                for i in range(t)
            }
            return ring <= {(min(a, b), max(a, b)) for a, b in self.edges}
        if self.kind == STAR_KIND:
            c = self.center
            return c is not None and all(c in e for e in self.edges) and len(self.edges) == len(verts) - 1
        return False

    @property
    def size(self) -> int:
        """Fan blades, clique order, matching edges or cycle length."""
        if self.kind == FAN_KIND:
            return (len(self.vertices) - 1) // 2
        if self.kind == MATCHING_KIND:
            return len(self.edges)
        return len(self.vertices)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "color": self.color.value,
            "center": self.center,
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Witness":
        return cls(
            kind=d["kind"],
            color=Color(d["color"]),
            vertices=tuple(d["vertices"]),
            edges=tuple((a, b) for a, b in d["edges"]),
            center=d.get("center"),
        )


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def clique_witness(vertices: Sequence[int], color: Color) -> Witness:
    vs = tuple(sorted(vertices))
    edges = tuple((a, b) for i, a in enumerate(vs) for b in vs[i + 1:])
    return Witness(CLIQUE_KIND, color, vs, edges)


def matching_witness(edges: Iterable[tuple[int, int]], color: Color) -> Witness:
    es = tuple(sorted(_edge(u, v) for u, v in edges))
    return Witness(MATCHING_KIND, color, tuple(x for e in es for x in e), es)


def fan_witness(center: int, blades: Iterable[tuple[int, int]], color: Color) -> Witness:
    bl = sorted(_edge(u, v) for u, v in blades)
    ends = [x for e in bl for x in e]
    edges = [_edge(center, x) for x in ends] + bl
    return Witness(FAN_KIND, color, (center, *ends), tuple(edges), center=center)


def cycle_witness(cycle: Sequence[int], color: Color) -> Witness:
    t = len(cycle)
    edges = tuple(_edge(cycle[i], cycle[(i + 1) % t]) for i in range(t))
    return Witness(ODD_CYCLE_KIND, color, tuple(cycle), edges)


# -- maximum matching (Edmonds) ----------------------------------------------------


def max_matching(adj: Sequence[int], within: int | None = None, limit: int | None = None) -> list[tuple[int, int]]:
    """Maximum matching of the graph induced on ``within`` (all vertices by default).

    Edmonds' blossom algorithm on general graphs.  With ``limit`` the search
    stops as soon as a matching of that many edges is found.
    """
    if within is None:
        within = (1 << len(adj)) - 1
    verts = list(bits(within))
    n = len(verts)
    if n < 2:
        return []
    index = {v: i for i, v in enumerate(verts)}
    nbrs = [[index[u] for u in bits(adj[v] & within)] for v in verts]
    if limit is None:
        limit = n // 2
    mate = _edmonds(nbrs, limit)
    return [(verts[i], verts[j]) for i, j in enumerate(mate) if j > i]


def matching_number(adj: Sequence[int], within: int | None = None) -> int:
    return len(max_matching(adj, within))


def _edmonds(nbrs: list[list[int]], limit: int) -> list[int]:
    n = len(nbrs)
    mate = [-1] * n
    size = 0
    for v in range(n):
        if mate[v] == -1:
            for u in nbrs[v]:
                if mate[u] == -1:
                    mate[v], mate[u] = u, v
                    size += 1
                    break
    if size >= limit:
        return mate
    # a free vertex without an augmenting path never gains one later,
    # so a single pass over the roots is exhaustive
    for root in range(n):
        if mate[root] == -1 and _augment_from(nbrs, mate, root):
            size += 1
            if size >= limit:
                break
    return mate


def _augment_from(nbrs: list[list[int]], mate: list[int], root: int) -> bool:
    n = len(nbrs)
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in nbrs[v]:
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    while to != -1:
                        pv = parent[to]
                        nxt = mate[pv]
                        mate[to], mate[pv] = pv, to
                        to = nxt
                    return True
                used[mate[to]] = True
                queue.append(mate[to])
    return False


def fan_at(adj: Sequence[int], center: int, n: int) -> list[tuple[int, int]] | None:
    """``n`` disjoint edges inside the neighborhood of ``center``, or ``None``."""
    nb = adj[center]
    if nb.bit_count() < 2 * n:
        return None
    m = max_matching(adj, nb, limit=n)
    return sorted(m)[:n] if len(m) >= n else None


# -- cliques ---------------------------------------------------------------------


def _color_bound(adj: Sequence[int], cand: int) -> int:
    """Number of classes in a greedy coloring of ``cand``; bounds the clique size."""
    k = 0
    while cand:
        k += 1
        q = cand
        while q:
            low = q & -q
            v = low.bit_length() - 1
            cand ^= low
            q &= ~adj[v] & ~low
    return k


def clique_in(adj: Sequence[int], cand: int, r: int) -> list[int] | None:
    """Lexicographically least ``r``-clique inside ``cand``, or ``None``."""
    if r <= 0:
        return []
    if cand.bit_count() < r:
        return None
    if r == 1:
        return [(cand & -cand).bit_length() - 1]
    if r == 2:
        for v in bits(cand):
            m = adj[v] & cand & ~((2 << v) - 1)
            if m:
                return [v, (m & -m).bit_length() - 1]
        return None
    return _clique_dfs(adj, cand, r, [])


def _clique_dfs(adj: Sequence[int], cand: int, r: int, chosen: list[int]) -> list[int] | None:
    if r == 0:
        return chosen
    if cand.bit_count() < r or _color_bound(adj, cand) < r:
        return None
    rest = cand
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        sub = adj[v] & rest
        if sub.bit_count() >= r - 1:
            found = _clique_dfs(adj, sub, r - 1, chosen + [v])
            if found is not None:
                return found
        if rest.bit_count() < r:
            break
    return None


def iter_cliques(adj: Sequence[int], cand: int, r: int) -> Iterator[list[int]]:
    """All ``r``-cliques inside ``cand``, in lexicographic order."""
    if r == 0:
        yield []
        return
    rest = cand
    while rest.bit_count() >= r:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        for tail in iter_cliques(adj, adj[v] & rest, r - 1):
            yield [v] + tail


def clique_partitions(adj: Sequence[int], size: int, within: int | None = None) -> Iterator[list[list[int]]]:
    """Partitions of ``within`` into cliques of ``size`` vertices each.

    The lowest uncovered vertex must lie in the next clique, so every
    partition is produced exactly once.
    """
    if within is None:
        within = (1 << len(adj)) - 1
    if not within:
        yield []
        return
    if size < 1 or within.bit_count() % size:
        return
    low = within & -within
    v = low.bit_length() - 1
    for tail in iter_cliques(adj, adj[v] & within & ~low, size - 1):
        part = [v] + tail
        rest = within & ~mask_of(part)
        for others in clique_partitions(adj, size, rest):
            yield [part] + others


def max_clique(adj: Sequence[int], cand: int | None = None) -> list[int]:
    """A maximum clique via branch and bound with a greedy-coloring bound.

    Vertices are ordered by descending degree inside ``cand``, ties by index.
    """
    if cand is None:
        cand = (1 << len(adj)) - 1
    if not cand:
        return []
    order = sorted(bits(cand), key=lambda v: (-(adj[v] & cand).bit_count(), v))
    pos = {v: i for i, v in enumerate(order)}
    local = [mask_of(pos[u] for u in bits(adj[v] & cand)) for v in order]
    best: list[int] = []

    def expand(chosen: list[int], p: int) -> None:
        nonlocal best
        classes: list[tuple[int, int]] = []
        u = p
        k = 0
        while u:
            k += 1
            q = u
            while q:
                low = q & -q
                v = low.bit_length() - 1
                u ^= low
                q &= ~local[v] & ~low
                classes.append((v, k))
        for v, col in reversed(classes):
            if len(chosen) + col <= len(best):
                return
            sub = p & local[v]
            if sub:
                expand(chosen + [v], sub)
            elif len(chosen) + 1 > len(best):
                best = chosen + [v]
            p &= ~(1 << v)

    expand([], (1 << len(order)) - 1)
    return sorted(order[i] for i in best)


# -- odd cycles ------------------------------------------------------------------


def _tree_cycle(parent: dict[int, int], u: int, x: int) -> list[int]:
    """Odd cycle through tree paths of two same-level vertices ``u`` and ``x``."""
    left, right = [u], [x]
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    return left + right[-2::-1]


def _bfs_levels(adj: Sequence[int], within: int, s: int, max_level: int | None = None):
    level = {s: 0}
    parent = {s: s}
    frontier = [s]
    while frontier:
        d = level[frontier[0]]
        if max_level is not None and d >= max_level:
            break
        nxt = []
        for v in frontier:
            for u in bits(adj[v] & within):
                if u not in level:
                    level[u] = d + 1
                    parent[u] = v
                    nxt.append(u)
        frontier = nxt
    return level, parent


def _restrict(g_n: int, restricted_to) -> int:
    if restricted_to is None:
        return (1 << g_n) - 1
    if isinstance(restricted_to, int):
        return restricted_to
    return mask_of(restricted_to)


class BipartiteResult(NamedTuple):
    bipartite: bool
    parts: tuple[tuple[int, ...], tuple[int, ...]] | None
    odd_cycle: Witness | None


def is_bipartite(g: Graph, color: Color, restricted_to=None) -> BipartiteResult:
    """2-color ``G^color`` on the restricted vertex set by BFS."""
    adj = g.adjacency(color)
    within = _restrict(g.num_vertices, restricted_to)
    side: dict[int, int] = {}
    parent: dict[int, int] = {}
    for s in bits(within):
        if s in side:
            continue
        side[s] = 0
        parent[s] = s
        level = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in bits(adj[v] & within):
                if u not in side:
                    side[u] = side[v] ^ 1
                    level[u] = level[v] + 1
                    parent[u] = v
                    queue.append(u)
                elif side[u] == side[v]:
                    # same parity in a BFS tree means same level
                    cyc = _tree_cycle(parent, v, u)
                    return BipartiteResult(False, None, cycle_witness(cyc, color))
    a = tuple(v for v in sorted(side) if side[v] == 0)
    b = tuple(v for v in sorted(side) if side[v] == 1)
    return BipartiteResult(True, (a, b), None)


def shortest_odd_cycle(g: Graph, color: Color, restricted_to=None) -> Witness | None:
    """A shortest odd cycle of ``G^color`` on the restricted set, or ``None``."""
    return shortest_odd_cycle_masks(g.adjacency(color), _restrict(g.num_vertices, restricted_to), color)


def shortest_odd_cycle_masks(adj: Sequence[int], within: int, color: Color) -> Witness | None:
    best: list[int] | None = None
    for s in bits(within):
        limit = None if best is None else (len(best) - 1) // 2
        level, parent = _bfs_levels(adj, within, s, limit)
        for v, d in level.items():
            if best is not None and 2 * d + 1 >= len(best):
                continue
            for u in bits(adj[v] & within):
                if u > v and level.get(u) == d:
                    cyc = _tree_cycle(parent, v, u)
                    if best is None or len(cyc) < len(best):
                        best = cyc
        if best is not None and len(best) == 3:
            break
    return None if best is None else cycle_witness(best, color)


# -- public detectors ----------------------------------------------------------------


def find_clique(g: Graph, color: Color, r: int) -> Witness | None:
    if r < 1:
        raise ValueError("clique size must be at least 1")
    adj = g.adjacency(color)
    found = clique_in(adj, (1 << g.num_vertices) - 1, r)
    return None if found is None else clique_witness(found, color)


def clique_number(g: Graph, color: Color) -> int:
    return len(max_clique(g.adjacency(color)))


def find_matching(g: Graph, color: Color, m: int) -> Witness | None:
    if m < 1:
        raise ValueError("matching size must be at least 1")
    edges = max_matching(g.adjacency(color), limit=m)
    if len(edges) < m:
        return None
    return matching_witness(sorted(edges)[:m], color)


def find_fan(g: Graph, color: Color, n: int) -> Witness | None:
    """Fan with ``n`` blades; centers are tried in ascending order."""
    if n < 1:
        raise ValueError("fan size must be at least 1")
    adj = g.adjacency(color)
    for c in range(g.num_vertices):
        blades = fan_at(adj, c, n)
        if blades is not None:
            return fan_witness(c, blades, color)
    return None


def find_target(g: Graph, color: Color, target: Target) -> Witness | None:
    if target.kind == FAN:
        return find_fan(g, color, target.size)
    if target.kind == MATCHING:
        return find_matching(g, color, target.size)
    if target.kind == CLIQUE:
        return find_clique(g, color, target.size)
    raise ValueError(target.kind)


class FreeResult(NamedTuple):
    free: bool
    witness: Witness | None

    def __bool__(self) -> bool:
        return self.free


def is_free(g: Graph, targets: TargetPair) -> FreeResult:
    """Whether ``g`` avoids a red ``targets.red`` and a blue ``targets.blue``.

    Absent star pairs count as non-adjacent in both colors.
    """
    for color in (Color.RED, Color.BLUE):
        w = find_target(g, color, targets.for_color(color))
        if w is not None:
            return FreeResult(False, w)
    return FreeResult(True, None)


__all__ = [
    "Witness",
    "FreeResult",
    "BipartiteResult",
    "find_clique",
    "find_matching",
    "find_fan",
    "find_target",
    "is_bipartite",
    "shortest_odd_cycle",
    "clique_number",
    "is_free",
    "max_matching",
    "matching_number",
    "max_clique",
    "clique_in",
    "fan_at",
    "StarColoredGraph",
]
