"""Free star extensions of a fixed free base coloring.

A star extension adds a vertex ``w`` and colors its edges to a subset of the
base.  Base vertices are decided in index order, each blue, red or absent
(tried in that order).  Because the base is free, any target in an extension
must pass through ``w``, so only structures through the new edge are checked.

Bounding uses forward checking: for every undecided vertex we keep the set of
colors that can still be added on their own.  Undecided vertices that may be
blue count one each.  Vertices that may only be red are grouped into cliques
of a static conflict graph (two red star edges that already close a red
target together), and each group counts once.  On a base made of red
``K_2n`` blocks against a red fan ``F_n``, the groups are exactly the blocks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..detectors import is_free
from ..graph_model import BLUE, RED, ColoredGraph, StarColoredGraph, TargetPair, bits
from .coloring import closes_target
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
ABSENT = 0
CHOICES = (B, R, ABSENT)


@dataclass
class StarProblem:
    base: ColoredGraph
    targets: TargetPair
    k: int | None = None  # None: maximise
    floor: int = -1  # maximise: only report extensions larger than this
    conflicts: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.conflicts:
            self.conflicts = red_conflicts(self.base, self.targets)

    def __call__(self, prefix: tuple[int, ...], meter: Meter) -> TaskResult:
        return _StarTraversal(self, meter).run(prefix)

    def split(self, depth: int) -> list[tuple[int, ...]]:
        return _StarTraversal(self, Meter(Budget.unlimited())).frontier_at(depth)


def red_conflicts(base: ColoredGraph, targets: TargetPair) -> list[int]:
    """``out[v]`` = base vertices ``u`` such that red ``wu`` and ``wv`` alone close a red target."""
    n = base.order
    w = n
    red = list(base.adjacency(RED)) + [0]
    target = targets.red
    out = [0] * n
    for v in range(n):
        for u in range(v + 1, n):
            adj = list(red)
            adj[w] = (1 << u) | (1 << v)
            adj[u] |= 1 << w
            adj[v] |= 1 << w
            if closes_target(adj, w, u, target):
                out[u] |= 1 << v
                out[v] |= 1 << u
    return out


class _StarTraversal:
    def __init__(self, problem: StarProblem, meter: Meter):
        self.p = problem
        self.meter = meter
        base = problem.base
        self.n = base.order
        self.w = self.n
        self.adj = {
            R: list(base.adjacency(RED)) + [0],
            B: list(base.adjacency(BLUE)) + [0],
        }
        self.targets = {R: problem.targets.red, B: problem.targets.blue}
        self.choice = [ABSENT] * self.n
        self.degree = 0
        self.allowed = [R | B] * self.n
        self.best = problem.floor
        self.best_star: dict[int, int] | None = None
        self.witness = None

    # -- primitives -----------------------------------------------------------

    def _add(self, v: int, c: int) -> None:
        adj = self.adj[c]
        adj[v] |= 1 << self.w
        adj[self.w] |= 1 << v

    def _remove(self, v: int, c: int) -> None:
        adj = self.adj[c]
        adj[v] &= ~(1 << self.w)
        adj[self.w] &= ~(1 << v)

    def _closes(self, v: int, c: int) -> bool:
        self._add(v, c)
        hit = closes_target(self.adj[c], self.w, v, self.targets[c])
        self._remove(v, c)
        return hit

    def _assign(self, v: int, c: int) -> bool:
        if c == ABSENT:
            self.choice[v] = ABSENT
            return True
        if not self.allowed[v] & c:
            return False
        self._add(v, c)
        self.choice[v] = c
        self.degree += 1
        return True

    def _unassign(self, v: int) -> None:
        c = self.choice[v]
        if c != ABSENT:
            self._remove(v, c)
            self.degree -= 1
        self.choice[v] = ABSENT

    def _refresh(self, start: int, colors: int = R | B) -> list[int]:
        """Forward-check vertices ``start..n-1``; returns the previous allowed list.

        Adding a star edge of one color never changes which edges of the other
        color close a target, so callers pass only the color just assigned.
        """
        saved = self.allowed
        if not colors:
            return saved
        allowed = list(saved)
        for u in range(start, self.n):
            a = allowed[u]
            if a & colors & R and self._closes(u, R):
                a &= ~R
            if a & colors & B and self._closes(u, B):
                a &= ~B
            allowed[u] = a
        self.allowed = allowed
        return saved

    def _bound(self, start: int) -> int:
        extra = 0
        red_only = 0
        for u in range(start, self.n):
            a = self.allowed[u]
            if a & B:
                extra += 1
            elif a & R:
                red_only |= 1 << u
        conflicts = self.p.conflicts
        while red_only:
            low = red_only & -red_only
            v = low.bit_length() - 1
            red_only ^= low
            group = conflicts[v] & red_only
            while group:
                g = group & -group
                red_only &= ~g
                group &= conflicts[g.bit_length() - 1] & ~g
            extra += 1
        return self.degree + extra

    def _star(self) -> dict[int, int]:
        return {v: c for v, c in enumerate(self.choice) if c != ABSENT}

    def _make_witness(self, star: dict[int, int]) -> StarColoredGraph:
        return StarColoredGraph(self.p.base, {v: RED if c == R else BLUE for v, c in star.items()})

    def _replay(self, prefix: tuple[int, ...]) -> bool:
        self._refresh(0)
        for v, c in enumerate(prefix):
            if not self._assign(v, c):
                return False
            self._refresh(v + 1, c)
        return True

    # -- traversal ------------------------------------------------------------

    def run(self, prefix: tuple[int, ...]) -> TaskResult:
        meter = self.meter
        start_nodes = meter.nodes
        status = EXHAUSTED
        frontier: list[tuple[int, ...]] = []
        if self._replay(prefix):
            try:
                if self._dfs(len(prefix)):
                    status = WITNESS_FOUND
            except Abort as exc:
                status = ABORTED
                frontier = exc.frontier
        else:
            meter.prunes += 1
        value = None
        if self.best_star is not None:
            value = (self.best, self.best_star)
        witness = self.witness
        if witness is None and self.p.k is None and self.best_star is not None:
            witness = self._make_witness(self.best_star)
        return TaskResult(status, witness, meter.nodes - start_nodes, meter.prunes, frontier, value)

    def _dfs(self, i: int) -> bool:
        k = self.p.k
        if k is not None and self.degree >= k:
            self.witness = self._make_witness(self._star())
            return True
        if i == self.n:
            if k is None and self.degree > self.best:
                self.best = self.degree
                self.best_star = self._star()
            return False
        meter = self.meter
        bound = self._bound(i)
        if (k is not None and bound < k) or (k is None and bound <= self.best):
            meter.prunes += 1
            return False
        for j, c in enumerate(CHOICES):
            meter.nodes += 1
            if meter.nodes >= meter.next_check:
                try:
                    meter.check()
                except Abort as exc:
                    exc.frontier.extend(tuple(self.choice[:i]) + (d,) for d in CHOICES[j:])
                    raise
            if not self._assign(i, c):
                continue
            saved = self._refresh(i + 1, c)
            try:
                found = self._dfs(i + 1)
            except Abort as exc:
                exc.frontier.extend(tuple(self.choice[:i]) + (d,) for d in CHOICES[j + 1:])
                raise
            self.allowed = saved
            if found:
                return True
            self._unassign(i)
        return False

    def frontier_at(self, depth: int) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = []
        depth = min(depth, self.n)
        self._refresh(0)

        def walk(i: int) -> None:
            if i == depth:
                out.append(tuple(self.choice[:i]))
                return
            for c in CHOICES:
                if self._assign(i, c):
                    saved = self._refresh(i + 1, c)
                    walk(i + 1)
                    self.allowed = saved
                    self._unassign(i)

        walk(0)
        return out


def _check_base(base: ColoredGraph, targets: TargetPair) -> None:
    free, witness = is_free(base, targets)
    if not free:
        raise ValueError(f"base coloring is not free: {witness.kind} in {witness.color.name.lower()}")


def _prefixes(problem: StarProblem, workers: int) -> list[tuple[int, ...]]:
    if workers <= 1:
        return [()]
    depth = 1
    prefixes = problem.split(depth)
    while len(prefixes) < 8 * workers and depth < problem.base.order:
        depth += 1
        prefixes = problem.split(depth)
    return prefixes


def search_star_free(
    base: ColoredGraph,
    k: int,
    targets: TargetPair,
    budget: Budget | None = None,
    *,
    workers: int = 1,
) -> SearchOutcome:
    """Find a free extension of ``base`` by a star with exactly ``k`` colored edges."""
    if not 0 <= k <= base.order:
        raise ValueError(f"star size {k} outside 0..{base.order}")
    _check_base(base, targets)
    if budget is None:
        budget = Budget.from_env()
    t0 = time.monotonic()
    problem = StarProblem(base, targets, k=k)
    status, witness, nodes, prunes, frontier, _ = run_tasks(problem, _prefixes(problem, workers), workers, budget)
    return SearchOutcome(
        status=status,
        witness=witness,
        nodes=nodes,
        prunes=prunes,
        elapsed=time.monotonic() - t0,
        symmetry="none",
        workers=workers,
        frontier=frontier,
        extra={"k": k},
    )


def _best(values: list) -> tuple[int, dict] | None:
    found = [v for v in values if v is not None]
    if not found:
        return None
    # deterministic tie-break: largest degree, then lexicographically least star
    return max(found, key=lambda v: (v[0], [-x for x in sorted(v[1])]))


def max_star_extension(
    base: ColoredGraph,
    targets: TargetPair,
    budget: Budget | None = None,
    *,
    workers: int = 1,
) -> SearchOutcome:
    """Largest ``k`` for which ``base`` has a free star extension, with a witness.

    ``extra["max_k"]`` holds the value; ``extra["optimal"]`` is False when the
    budget ran out, in which case ``max_k`` is only a lower bound.
    """
    _check_base(base, targets)
    if budget is None:
        budget = Budget.from_env()
    t0 = time.monotonic()
    floor = -1
    seed_star: dict[int, int] = {}
    if workers > 1:
        # a first greedy dive gives every worker the same incumbent
        dive = StarProblem(base, targets)
        tr = _StarTraversal(dive, Meter(Budget.unlimited()))
        tr._refresh(0)
        for v in range(base.order):
            for c in CHOICES:
                if tr._assign(v, c):
                    tr._refresh(v + 1, c)
                    break
        floor, seed_star = tr.degree, tr._star()
    problem = StarProblem(base, targets, k=None, floor=floor, conflicts=red_conflicts(base, targets))
    status, _, nodes, prunes, frontier, value = run_tasks(
        problem, _prefixes(problem, workers), workers, budget, combine_value=_best
    )
    if value is None:
        value = (floor, seed_star) if floor >= 0 else (0, {})
    best_k, star = value
    witness = StarColoredGraph(base, {v: RED if c == R else BLUE for v, c in star.items()})
    return SearchOutcome(
        status=WITNESS_FOUND if status != ABORTED else ABORTED,
        witness=witness,
        nodes=nodes,
        prunes=prunes,
        elapsed=time.monotonic() - t0,
        symmetry="none",
        workers=workers,
        frontier=frontier,
        extra={"max_k": best_k, "optimal": status != ABORTED},
    )
