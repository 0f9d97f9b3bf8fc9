"""Backtracking search for a red/blue coloring of ``K_N`` avoiding a target pair.

Edges are colored in lexicographic ``(u, v)`` order, red before blue.  After
each assignment the detector for the assigned color is run on the colored
prefix, restricted to structures through the new edge; targets are monotone
so a hit prunes the whole subtree.

Symmetry schemes (all sound: every coloring has an isomorphic copy that
satisfies the constraint):

``none``
    plain enumeration.
``vertex0``
    the row of vertex 0 is non-increasing: all red edges ``(0, v)`` precede
    the blue ones.
``cells``
    the same rule for every row ``u``, applied inside each cell of vertices
    ``> u`` that have identical colors towards ``0..u-1``.  Row 0 is the
    ``vertex0`` rule.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass

from ..detectors import clique_in, fan_at, max_matching
from ..graph_model import CLIQUE, FAN, MATCHING, ColoredGraph, Target, TargetPair
from .runtime import (
    ABORTED,
    EXHAUSTED,
    WITNESS_FOUND,
    Abort,
    Budget,
    Meter,
    SearchOutcome,
    TaskResult,
    run_tasks,
)

R, B = 1, 2
SCHEMES = ("none", "vertex0", "cells")
DEFAULT_SCHEME = "cells"


def closes_target(adj: list[int], u: int, v: int, target: Target) -> bool:
    """Whether ``adj`` (which already contains edge ``uv``) has ``target`` through ``uv``."""
    if target.kind == CLIQUE:
        r = target.size
        if r <= 2:
            return True
        return clique_in(adj, adj[u] & adj[v], r - 2) is not None
    if target.kind == FAN:
        n = target.size
        need = 2 * n
        if adj[u].bit_count() >= need and fan_at(adj, u, n) is not None:
            return True
        if adj[v].bit_count() >= need and fan_at(adj, v, n) is not None:
            return True
        common = adj[u] & adj[v]
        while common:
            low = common & -common
            c = low.bit_length() - 1
            common ^= low
            if adj[c].bit_count() >= need and fan_at(adj, c, n) is not None:
                return True
        return False
    if target.kind == MATCHING:
        return len(max_matching(adj, limit=target.size)) >= target.size
    raise ValueError(target.kind)


@dataclass(frozen=True)
class ColoringProblem:
    """Search instance.

    ``fixed`` pins edge colors (``{(u, v): 1 or 2}``); ``labels`` gives every
    vertex a class that symmetry breaking must preserve, so only vertices with
    equal labels are ever treated as interchangeable.  Fixed edges must be
    invariant under permutations inside a label class.  With ``collect`` the
    traversal records every free coloring instead of stopping at the first.
    """

    order: int
    targets: TargetPair
    symmetry: str = DEFAULT_SCHEME
    fixed: tuple[tuple[tuple[int, int], int], ...] = ()
    labels: tuple[int, ...] | None = None
    collect: bool = False

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        if self.symmetry not in SCHEMES:
            raise ValueError(f"unknown symmetry scheme {self.symmetry!r}")
        if self.labels is not None and len(self.labels) != self.order:
            raise ValueError("one label per vertex required")

    @property
    def edges(self) -> list[tuple[int, int]]:
        n = self.order
        return [(u, v) for u in range(n) for v in range(u + 1, n)]

    def __call__(self, prefix: tuple[int, ...], meter: Meter) -> TaskResult:
        return _Traversal(self, meter).run(prefix)

    def split(self, depth: int) -> list[tuple[int, ...]]:
        """Live prefixes of length ``depth`` (or complete leaves reached earlier)."""
        return _Traversal(self, Meter(Budget.unlimited())).frontier_at(depth)


class _Traversal:
    def __init__(self, problem: ColoringProblem, meter: Meter):
        self.p = problem
        self.meter = meter
        n = problem.order
        self.n = n
        self.edges = problem.edges
        self.index = {e: i for i, e in enumerate(self.edges)}
        self.adj = {R: [0] * n, B: [0] * n}
        self.colors = [0] * len(self.edges)
        self.targets = {R: problem.targets.red, B: problem.targets.blue}
        self.scheme = problem.symmetry
        self.fixed = {self.index[e]: c for e, c in problem.fixed}
        self.labels = problem.labels
        self.witness = None
        self.found: list[ColoredGraph] = []

    # -- primitives -----------------------------------------------------------

    def _choices(self, i: int) -> tuple[int, ...]:
        if i in self.fixed:
            return (self.fixed[i],)
        if self.scheme == "none":
            return (R, B)
        u, v = self.edges[i]
        if v < u + 2 or (self.scheme == "vertex0" and u != 0):
            return (R, B)
        prev = i - 1  # edge (u, v-1)
        if self.colors[prev] != B:
            return (R, B)
        if self.labels is not None and self.labels[v] != self.labels[v - 1]:
            return (R, B)
        if u > 0:
            red = self.adj[R]
            if (red[v] ^ red[v - 1]) & ((1 << u) - 1):
                return (R, B)
        return (B,)

    def _assign(self, i: int, c: int) -> bool:
        """Color edge ``i``; return False (and undo) if it closes a target."""
        u, v = self.edges[i]
        adj = self.adj[c]
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        self.colors[i] = c
        if closes_target(adj, u, v, self.targets[c]):
            self._undo(i)
            return False
        return True

    def _undo(self, i: int) -> None:
        u, v = self.edges[i]
        adj = self.adj[self.colors[i]]
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        self.colors[i] = 0

    def _replay(self, prefix: tuple[int, ...]) -> bool:
        for i, c in enumerate(prefix):
            if c not in self._choices(i) or not self._assign(i, c):
                return False
        return True

    # -- traversal ------------------------------------------------------------

    def run(self, prefix: tuple[int, ...]) -> TaskResult:
        meter = self.meter
        start_nodes = meter.nodes
        status = EXHAUSTED
        frontier: list[tuple[int, ...]] = []
        if not self._replay(prefix):
            meter.prunes += 1
        else:
            try:
                if self._dfs(len(prefix)):
                    status = WITNESS_FOUND
            except Abort as exc:
                status = ABORTED
                frontier = exc.frontier
        value = self.found if self.p.collect else None
        return TaskResult(status, self.witness, meter.nodes - start_nodes, meter.prunes, frontier, value)

    def _dfs(self, i: int) -> bool:
        if i == len(self.edges):
            g = ColoredGraph(self.n, list(self.adj[R]))
            if self.p.collect:
                self.found.append(g)
                return False
            self.witness = g
            return True
        meter = self.meter
        choices = self._choices(i)
        for k, c in enumerate(choices):
            meter.nodes += 1
            if meter.nodes >= meter.next_check:
                try:
                    meter.check()
                except Abort as exc:
                    exc.frontier.extend(tuple(self.colors[:i]) + (d,) for d in choices[k:])
                    raise
            if not self._assign(i, c):
                meter.prunes += 1
                continue
            try:
                found = self._dfs(i + 1)
            except Abort as exc:
                exc.frontier.extend(tuple(self.colors[:i]) + (d,) for d in choices[k + 1:])
                raise
            if found:
                return True
            self._undo(i)
        return False

    def frontier_at(self, depth: int) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = []
        depth = min(depth, len(self.edges))

        def walk(i: int) -> None:
            if i == depth:
                out.append(tuple(self.colors[:i]))
                return
            for c in self._choices(i):
                if self._assign(i, c):
                    walk(i + 1)
                    self._undo(i)

        walk(0)
        return out


def _split_depth(problem: ColoringProblem, workers: int) -> list[tuple[int, ...]]:
    total = len(problem.edges)
    want = 8 * workers
    depth = 1
    prefixes = problem.split(depth)
    while len(prefixes) < want and depth < total:
        depth += 1
        prefixes = problem.split(depth)
    return prefixes


def search_free_coloring(
    order: int,
    targets: TargetPair,
    budget: Budget | None = None,
    *,
    symmetry: str = DEFAULT_SCHEME,
    workers: int = 1,
    resume: list[tuple[int, ...]] | None = None,
) -> SearchOutcome:
    """Find a coloring of ``K_order`` with no red ``targets.red`` and no blue ``targets.blue``.

    ``Exhausted`` certifies that none exists (under the given symmetry scheme).
    ``resume`` restarts from a list of unexplored prefixes (see ``checkpoint``).
    """
    if budget is None:
        budget = Budget.from_env()
    problem = ColoringProblem(order, targets, symmetry)
    t0 = time.monotonic()
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, len(problem.edges) + 1000))
    try:
        if resume is not None:
            prefixes = sorted(resume)
        elif workers > 1:
            prefixes = _split_depth(problem, workers)
        else:
            prefixes = [()]
        status, witness, nodes, prunes, frontier, _ = run_tasks(problem, prefixes, workers, budget)
    finally:
        sys.setrecursionlimit(limit)
    return SearchOutcome(
        status=status,
        witness=witness,
        nodes=nodes,
        prunes=prunes,
        elapsed=time.monotonic() - t0,
        symmetry=symmetry,
        workers=workers,
        frontier=frontier,
    )
