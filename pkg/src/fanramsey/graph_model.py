"""Red/blue colorings of complete graphs and star-augmented complete graphs.

Adjacency is kept as one bitmask per vertex and per color (bit ``u`` of
``red[v]`` is set when ``{u, v}`` is red).  Both classes are immutable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence


class Color(enum.Enum):
    RED = "R"
    BLUE = "B"

    @property
    def other(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED

    @classmethod
    def parse(cls, text: str) -> "Color":
        key = text.strip().upper()
        if key in ("R", "RED"):
            return cls.RED
        if key in ("B", "BLUE"):
            return cls.BLUE
        raise ValueError(f"unknown color {text!r}")


RED = Color.RED
BLUE = Color.BLUE


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class ColoredGraph:
    """A complete graph ``K_N`` whose every edge is red or blue."""

    __slots__ = ("order", "_red", "_blue")

    def __init__(self, order: int, red_adjacency: Sequence[int]):
        if order < 1:
            raise ValueError("order must be positive")
        if len(red_adjacency) != order:
            raise ValueError("adjacency length does not match order")
        full = (1 << order) - 1
        red = []
        for v, m in enumerate(red_adjacency):
            if m & ~full or (m >> v) & 1:
                raise ValueError(f"bad adjacency mask for vertex {v}")
            red.append(m)
        for v in range(order):
            for u in bits(red[v]):
                if not (red[u] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency at ({u}, {v})")
        self.order = order
        self._red = tuple(red)
        self._blue = tuple(full & ~m & ~(1 << v) for v, m in enumerate(red))

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_red_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> "ColoredGraph":
        adj = [0] * order
        for u, v in edges:
            _check_pair(order, u, v)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(order, adj)

    @classmethod
    def monochromatic(cls, order: int, color: Color) -> "ColoredGraph":
        full = (1 << order) - 1
        if color is RED:
            return cls(order, [full & ~(1 << v) for v in range(order)])
        return cls(order, [0] * order)

    @classmethod
    def from_colors(cls, order: int, colors: Mapping[tuple[int, int], Color]) -> "ColoredGraph":
        """Build from an explicit pair map, which must cover every pair once."""
        seen = set()
        adj = [0] * order
        for (u, v), c in colors.items():
            _check_pair(order, u, v)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate pair {key}")
            seen.add(key)
            if c is RED:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        expected = order * (order - 1) // 2
        if len(seen) != expected:
            missing = next(
                (u, v) for u in range(order) for v in range(u + 1, order) if (u, v) not in seen
            )
            raise ValueError(f"missing color for pair {missing}")
        return cls(order, adj)

    # -- accessors --------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return self.order

    def adjacency(self, color: Color) -> tuple[int, ...]:
        return self._red if color is RED else self._blue

    def neighbors(self, v: int, color: Color) -> int:
        return self.adjacency(color)[v]

    def color(self, u: int, v: int) -> Color:
        _check_pair(self.order, u, v)
        return RED if (self._red[u] >> v) & 1 else BLUE

    def degree(self, v: int, color: Color) -> int:
        return self.adjacency(color)[v].bit_count()

    def edges(self, color: Color | None = None) -> list[tuple[int, int]]:
        out = []
        for u in range(self.order):
            for v in range(u + 1, self.order):
                if color is None or self.color(u, v) is color:
                    out.append((u, v))
        return out

    def num_edges(self, color: Color) -> int:
        return sum(m.bit_count() for m in self.adjacency(color)) // 2

    def recolored(self, pairs: Iterable[tuple[int, int]], color: Color) -> "ColoredGraph":
        adj = list(self._red)
        for u, v in pairs:
            _check_pair(self.order, u, v)
            if color is RED:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            else:
                adj[u] &= ~(1 << v)
                adj[v] &= ~(1 << u)
        return ColoredGraph(self.order, adj)

    def induced(self, vertices: Sequence[int]) -> "ColoredGraph":
        """Sub-coloring on ``vertices``, relabelled 0..len-1 in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [
            (index[u], index[v])
            for i, u in enumerate(vertices)
            for v in vertices[i + 1:]
            if (self._red[u] >> v) & 1
        ]
        return ColoredGraph.from_red_edges(len(vertices), edges)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ColoredGraph)
            and self.order == other.order
            and self._red == other._red
        )

    def __hash__(self) -> int:
        return hash((self.order, self._red))

    def __repr__(self) -> str:
        return f"ColoredGraph(order={self.order}, red_edges={self.num_edges(RED)})"


class StarColoredGraph:
    """``K_N`` plus a star vertex ``w = N`` joined by colored edges to ``k`` base vertices."""

    __slots__ = ("base", "star_edges", "_red", "_blue")

    def __init__(self, base: ColoredGraph, star_edges: Mapping[int, Color]):
        for v, c in star_edges.items():
            if not 0 <= v < base.order:
                raise ValueError(f"star edge endpoint {v} outside base")
            if not isinstance(c, Color):
                raise TypeError("star edge colors must be Color values")
        self.base = base
        self.star_edges = dict(sorted(star_edges.items()))
        w = base.order
        wred = mask_of(v for v, c in self.star_edges.items() if c is RED)
        wblue = mask_of(v for v, c in self.star_edges.items() if c is BLUE)
        self._red = tuple(
            m | (((wred >> v) & 1) << w) for v, m in enumerate(base.adjacency(RED))
        ) + (wred,)
        self._blue = tuple(
            m | (((wblue >> v) & 1) << w) for v, m in enumerate(base.adjacency(BLUE))
        ) + (wblue,)

    @property
    def star_vertex(self) -> int:
        return self.base.order

    @property
    def k(self) -> int:
        return len(self.star_edges)

    @property
    def order(self) -> int:
        """Order of the base graph (the star vertex has index ``order``)."""
        return self.base.order

    @property
    def num_vertices(self) -> int:
        return self.base.order + 1

    def adjacency(self, color: Color) -> tuple[int, ...]:
        return self._red if color is RED else self._blue

    def neighbors(self, v: int, color: Color) -> int:
        return self.adjacency(color)[v]

    def color(self, u: int, v: int) -> Color | None:
        _check_pair(self.num_vertices, u, v)
        w = self.star_vertex
        if u == w or v == w:
            return self.star_edges.get(v if u == w else u)
        return self.base.color(u, v)

    def degree(self, v: int, color: Color) -> int:
        return self.adjacency(color)[v].bit_count()

    def star_degree(self, color: Color | None = None) -> int:
        if color is None:
            return self.k
        return sum(1 for c in self.star_edges.values() if c is color)

    def with_star(self, star_edges: Mapping[int, Color]) -> "StarColoredGraph":
        return StarColoredGraph(self.base, star_edges)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, StarColoredGraph)
            and self.base == other.base
            and self.star_edges == other.star_edges
        )

    def __hash__(self) -> int:
        return hash((self.base, tuple(self.star_edges.items())))

    def __repr__(self) -> str:
        return f"StarColoredGraph(order={self.base.order}, k={self.k})"


Graph = ColoredGraph | StarColoredGraph


def _check_pair(order: int, u: int, v: int) -> None:
    if u == v:
        raise ValueError(f"self-pair ({u}, {v})")
    if not (0 <= u < order and 0 <= v < order):
        raise ValueError(f"vertex out of range in ({u}, {v}) for {order} vertices")


def color_of(g: Graph, u: int, v: int) -> Color | None:
    """Color of ``{u, v}``; ``None`` only for a star-vertex non-edge."""
    return g.color(u, v)


def degree_profile(g: Graph, color: Color) -> list[int]:
    return [m.bit_count() for m in g.adjacency(color)]


# -- targets ------------------------------------------------------------------

FAN = "fan"
MATCHING = "matching"
CLIQUE = "clique"


@dataclass(frozen=True)
class Target:
    """A forbidden monochromatic structure: ``fan:n``, ``matching:m`` or ``clique:r``."""

    kind: str
    size: int

    def __post_init__(self):
        if self.kind not in (FAN, MATCHING, CLIQUE):
            raise ValueError(f"unknown target kind {self.kind!r}")
        if not isinstance(self.size, int) or self.size < 1:
            raise ValueError(f"target parameter must be a positive integer, got {self.size!r}")

    @classmethod
    def parse(cls, text: str) -> "Target":
        kind, sep, size = text.strip().partition(":")
        if not sep:
            raise ValueError(f"target spec {text!r} is not of the form kind:size")
        try:
            value = int(size)
        except ValueError:
            raise ValueError(f"target size in {text!r} is not an integer") from None
        return cls(kind.lower(), value)

    def __str__(self) -> str:
        return f"{self.kind}:{self.size}"


def Fan(n: int) -> Target:
    return Target(FAN, n)


def Matching(m: int) -> Target:
    return Target(MATCHING, m)


def Clique(r: int) -> Target:
    return Target(CLIQUE, r)


@dataclass(frozen=True)
class TargetPair:
    red: Target
    blue: Target

    def __post_init__(self):
        if self.red.kind not in (FAN, MATCHING):
            raise ValueError("red target must be a fan or a matching")
        if self.blue.kind != CLIQUE:
            raise ValueError("blue target must be a clique")
        if self.blue.size < 2:
            raise ValueError("blue clique size must be at least 2")

    def for_color(self, color: Color) -> Target:
        return self.red if color is RED else self.blue

    def __str__(self) -> str:
        return f"({self.red}, {self.blue})"


# -- text format ----------------------------------------------------------------


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def serialize(g: Graph) -> str:
    if isinstance(g, StarColoredGraph):
        base = g.base
        lines = [f"cg {base.order} star {g.k}"]
    else:
        base = g
        lines = [f"cg {base.order}"]
    red = base.adjacency(RED)
    for u in range(base.order):
        for v in range(u + 1, base.order):
            lines.append(f"{u} {v} {'R' if (red[u] >> v) & 1 else 'B'}")
    if isinstance(g, StarColoredGraph):
        w = g.star_vertex
        for v, c in g.star_edges.items():
            lines.append(f"{v} {w} {c.value}")
    return "\n".join(lines) + "\n"


def parse(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormatError(f"not UTF-8: {exc}") from None
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise FormatError("empty input", 1)
    head = lines[0].split()
    star_k = None
    if len(head) == 2 and head[0] == "cg":
        pass
    elif len(head) == 4 and head[0] == "cg" and head[2] == "star":
        star_k = _parse_int(head[3], 1)
    else:
        raise FormatError(f"bad header {lines[0]!r}", 1)
    order = _parse_int(head[1], 1)
    if order < 1:
        raise FormatError("order must be positive", 1)
    if star_k is not None and not 0 <= star_k <= order:
        raise FormatError(f"star size {star_k} outside 0..{order}", 1)

    base_colors: dict[tuple[int, int], Color] = {}
    star: dict[int, Color] = {}
    w = order
    for lineno, raw in enumerate(lines[1:], start=2):
        parts = raw.split()
        if len(parts) != 3:
            raise FormatError(f"malformed edge line {raw!r}", lineno)
        u, v = _parse_int(parts[0], lineno), _parse_int(parts[1], lineno)
        try:
            c = Color.parse(parts[2]) if parts[2] in ("R", "B") else None
        except ValueError:
            c = None
        if c is None:
            raise FormatError(f"color must be R or B, got {parts[2]!r}", lineno)
        if not u < v:
            raise FormatError(f"pair ({u}, {v}) must satisfy u < v", lineno)
        if v == w and star_k is not None:
            if u in star:
                raise FormatError(f"duplicate star pair ({u}, {v})", lineno)
            star[u] = c
            continue
        if v >= order:
            raise FormatError(f"vertex {v} out of range", lineno)
        if (u, v) in base_colors:
            raise FormatError(f"duplicate pair ({u}, {v})", lineno)
        base_colors[(u, v)] = c

    last = len(lines)
    for u in range(order):
        for v in range(u + 1, order):
            if (u, v) not in base_colors:
                raise FormatError(f"missing color for base pair ({u}, {v})", last)
    base = ColoredGraph.from_colors(order, base_colors)
    if star_k is None:
        return base
    if len(star) != star_k:
        raise FormatError(f"header declares {star_k} star edges, found {len(star)}", last)
    return StarColoredGraph(base, star)


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"expected integer, got {token!r}", lineno) from None


def read_graph(path) -> Graph:
    with open(path, "rb") as fh:
        return parse(fh.read())


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(g))
