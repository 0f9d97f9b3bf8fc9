"""Explicit colorings: the two block families on ``K_6n``, the star lower-bound
graph, and critical colorings for ``(mK2, K_r)`` and ``(F_n, K_3)``.

Blocks are contiguous index ranges: ``A_1 = 0..2n-1``, ``A_2 = 2n..4n-1``,
``A_3 = 4n..6n-1``.
"""

from __future__ import annotations

import json
import random
import warnings
from dataclasses import dataclass, field

from .detectors import is_free
from .graph_model import BLUE, RED, Clique, ColoredGraph, Matching, StarColoredGraph, TargetPair


class ConstructionError(ValueError):
    pass


def blocks(n: int, count: int = 3) -> list[range]:
    return [range(i * 2 * n, (i + 1) * 2 * n) for i in range(count)]


def _disjoint_cliques(order: int, parts: list[range]) -> ColoredGraph:
    adj = [0] * order
    for part in parts:
        m = 0
        for v in part:
            m |= 1 << v
        for v in part:
            adj[v] = m & ~(1 << v)
    return ColoredGraph(order, adj)


def build_g1(n: int) -> ColoredGraph:
    """Red ``3K_2n`` on the blocks, blue ``K_{2n,2n,2n}`` across them."""
    if n < 2:
        raise ConstructionError("fan parameter must be at least 2")
    return _disjoint_cliques(6 * n, blocks(n))


def block_of(n: int, v: int) -> int:
    return v // (2 * n)


@dataclass
class G2Spec:
    """Red cross-block edges added to ``build_g1(n)``.

    ``I1`` joins ``A_1`` to ``A_2``, ``I2`` joins ``A_2`` to ``A_3`` and ``I3``
    joins ``A_3`` to ``A_1``; each pair is written (endpoint in ``A_i``,
    endpoint in ``A_{i+1}``).
    """

    n: int
    I1: list[tuple[int, int]] = field(default_factory=list)
    I2: list[tuple[int, int]] = field(default_factory=list)
    I3: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        self.I1 = [tuple(p) for p in self.I1]
        self.I2 = [tuple(p) for p in self.I2]
        self.I3 = [tuple(p) for p in self.I3]

    @property
    def sets(self) -> list[list[tuple[int, int]]]:
        return [self.I1, self.I2, self.I3]

    def red_edges(self) -> list[tuple[int, int]]:
        return [(min(a, b), max(a, b)) for s in self.sets for a, b in s]

    def validate(self) -> None:
        n = self.n
        if n < 2:
            raise ConstructionError("fan parameter must be at least 2")
        for i, pairs in enumerate(self.sets):
            name = f"I{i + 1}"
            if not 1 <= len(pairs) <= 2 * n:
                raise ConstructionError(f"{name} has {len(pairs)} edges, expected 1..{2 * n}")
            src, dst = i, (i + 1) % 3
            ends: set[int] = set()
            for a, b in pairs:
                if not (0 <= a < 6 * n and 0 <= b < 6 * n):
                    raise ConstructionError(f"{name} pair ({a}, {b}) out of range")
                if block_of(n, a) != src or block_of(n, b) != dst:
                    raise ConstructionError(
                        f"{name} pair ({a}, {b}) must join block A{src + 1} to A{dst + 1}"
                    )
                if a in ends or b in ends:
                    raise ConstructionError(f"{name} edges are not independent at ({a}, {b})")
                ends.update((a, b))
        tri = red_triangle(self)
        if tri is not None:
            raise ConstructionError(f"red triangle among cross edges: {list(tri)}")

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "I1": self.I1, "I2": self.I2, "I3": self.I3})

    @classmethod
    def from_json(cls, text: str) -> "G2Spec":
        try:
            d = json.loads(text)
            return cls(int(d["n"]), d.get("I1", []), d.get("I2", []), d.get("I3", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConstructionError(f"bad G2 spec: {exc}") from None


def red_triangle(spec: G2Spec) -> tuple[int, int, int] | None:
    """A triangle formed only by cross edges, if any.

    Such a triangle has one vertex per block and one edge from each ``I_i``.
    """
    nxt = [dict(s) for s in spec.sets]
    for a, b in spec.I1:
        c = nxt[1].get(b)
        if c is not None and nxt[2].get(c) == a:
            return (a, b, c)
    return None


def build_g2(spec: G2Spec) -> ColoredGraph:
    spec.validate()
    return build_g1(spec.n).recolored(spec.red_edges(), RED)


def random_g2_spec(n: int, rng: random.Random | int | None = None, max_tries: int = 10_000) -> G2Spec:
    """Rejection-sample a valid spec: ``k_i`` uniform in ``1..2n``, random endpoints."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    parts = blocks(n)
    for _ in range(max_tries):
        sets = []
        for i in range(3):
            k = rng.randint(1, 2 * n)
            src = rng.sample(list(parts[i]), k)
            dst = rng.sample(list(parts[(i + 1) % 3]), k)
            sets.append(list(zip(src, dst)))
        spec = G2Spec(n, *sets)
        if red_triangle(spec) is None:
            return spec
    raise ConstructionError("could not sample a valid spec")


def build_lower_bound(n: int) -> StarColoredGraph:
    """``G1(n)`` plus a vertex blue to ``A_1 ∪ A_2`` and red to the first vertex of ``A_3``."""
    if n < 2:
        raise ConstructionError("fan parameter must be at least 2")
    if n < 4:
        warnings.warn(f"n={n} is below the range n >= 4 of the star-critical value", stacklevel=2)
    base = build_g1(n)
    star = {v: BLUE for v in range(4 * n)}
    star[4 * n] = RED
    return StarColoredGraph(base, star)


def build_matching_critical(m: int, r: int) -> ColoredGraph:
    """Order ``r + 2m - 3``: red ``K_{2m-1}`` on the first vertices, blue elsewhere."""
    if m < 1 or r < 2:
        raise ConstructionError("need m >= 1 and r >= 2")
    order = r + 2 * m - 3
    g = _disjoint_cliques(order, [range(2 * m - 1)])
    free, witness = is_free(g, TargetPair(Matching(m), Clique(r)))
    if not free:
        raise AssertionError(f"matching-critical coloring contains {witness}")
    return g


def build_fan_k3_critical(n: int) -> ColoredGraph:
    """Order ``4n``: red ``2K_2n``, blue ``K_{2n,2n}``."""
    if n < 2:
        raise ConstructionError("fan parameter must be at least 2")
    return _disjoint_cliques(4 * n, blocks(n, 2))


def known_critical(targets, order: int) -> ColoredGraph | None:
    """A construction of the given order that is meant to avoid ``targets``."""
    red, blue = targets.red, targets.blue
    r = blue.size
    if red.kind == "matching" and order == r + 2 * red.size - 3:
        return build_matching_critical(red.size, r)
    if red.kind == "fan" and red.size >= 2:
        if r == 3 and order == 4 * red.size:
            return build_fan_k3_critical(red.size)
        if r == 4 and order == 6 * red.size:
            return build_g1(red.size)
    return None
