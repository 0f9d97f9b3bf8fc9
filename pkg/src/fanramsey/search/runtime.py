"""Budgets, outcomes and the process-pool runner shared by the searches.

A search is a depth-first traversal addressed by *prefixes*: tuples of
branch choices from the root.  Parallel runs split the tree into prefix
tasks and hand them to a process pool; idle workers pull the next
unclaimed subtree, and a shared flag stops everyone once a witness shows up.
"""

from __future__ import annotations

import multiprocessing as mp
import os
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

WITNESS_FOUND = "WitnessFound"
EXHAUSTED = "Exhausted"
ABORTED = "Aborted"

DEFAULT_MAX_NODES = 10**8
DEFAULT_MAX_SECONDS = 600.0


@dataclass(frozen=True)
class Budget:
    max_nodes: int | None = DEFAULT_MAX_NODES
    max_seconds: float | None = DEFAULT_MAX_SECONDS

    @classmethod
    def from_env(cls, max_nodes: int | None = DEFAULT_MAX_NODES, max_seconds: float | None = None) -> "Budget":
        if max_seconds is None:
            env = os.environ.get("RAMSEY_BUDGET_SECS")
            max_seconds = float(env) if env else DEFAULT_MAX_SECONDS
        return cls(max_nodes, max_seconds)

    @classmethod
    def unlimited(cls) -> "Budget":
        return cls(None, None)


@dataclass
class SearchOutcome:
    status: str
    witness: Any = None
    nodes: int = 0
    prunes: int = 0
    elapsed: float = 0.0
    symmetry: str = "none"
    workers: int = 1
    frontier: list[tuple[int, ...]] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def stats(self) -> dict:
        return {
            "nodes": self.nodes,
            "prunes": self.prunes,
            "elapsed": round(self.elapsed, 6),
            "symmetry": self.symmetry,
            "workers": self.workers,
        }

    def to_dict(self) -> dict:
        from ..graph_model import serialize

        d = {"status": self.status, "stats": self.stats}
        if self.witness is not None:
            d["witness"] = serialize(self.witness)
        d.update(self.extra)
        return d


class Abort(Exception):
    """Raised inside a traversal when the budget runs out or a peer found a witness."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason
        self.frontier: list[tuple[int, ...]] = []


class Meter:
    """Node/prune counters with budget checks every ``stride`` nodes."""

    stride = 1024

    def __init__(self, budget: Budget, deadline: float | None = None, shared=None, stop=None):
        self.nodes = 0
        self.prunes = 0
        self.max_nodes = budget.max_nodes
        if deadline is None and budget.max_seconds is not None:
            deadline = time.monotonic() + budget.max_seconds
        self.deadline = deadline
        self.shared = shared
        self.stop = stop
        self._reported = 0
        self.next_check = self._next()

    def _next(self) -> int:
        nxt = self.nodes + self.stride
        if self.max_nodes is not None and self.shared is None:
            nxt = min(nxt, self.max_nodes + 1)
        return nxt

    def check(self) -> None:
        if self.max_nodes is not None and self.shared is None and self.nodes > self.max_nodes:
            raise Abort("node budget")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise Abort("time budget")
        if self.stop is not None and self.stop.is_set():
            raise Abort("stopped")
        if self.shared is not None:
            with self.shared.get_lock():
                self.shared.value += self.nodes - self._reported
                total = self.shared.value
            self._reported = self.nodes
            if self.max_nodes is not None and total > self.max_nodes:
                raise Abort("node budget")
        self.next_check = self._next()


@dataclass
class TaskResult:
    status: str
    witness: Any
    nodes: int
    prunes: int
    frontier: list[tuple[int, ...]]
    value: Any = None


# -- process pool ------------------------------------------------------------------

_worker_state: dict = {}


def _init_worker(runner, budget, deadline, shared, stop):
    _worker_state.update(runner=runner, budget=budget, deadline=deadline, shared=shared, stop=stop)


def _run_one(prefix):
    st = _worker_state
    if st["stop"].is_set():
        return prefix, TaskResult(ABORTED, None, 0, 0, [prefix])
    meter = Meter(st["budget"], st["deadline"], st["shared"], st["stop"])
    res = st["runner"](prefix, meter)
    if res.status == WITNESS_FOUND:
        st["stop"].set()
    return prefix, res


def run_tasks(
    runner: Callable[[tuple[int, ...], Meter], TaskResult],
    prefixes: Sequence[tuple[int, ...]],
    workers: int,
    budget: Budget,
    combine_value: Callable[[list], Any] | None = None,
) -> tuple[str, Any, int, int, list[tuple[int, ...]], Any]:
    """Run ``runner`` on every prefix; return (status, witness, nodes, prunes, frontier, value).

    ``runner`` must be a picklable callable.  Status is ``WitnessFound`` as
    soon as any task finds one, ``Aborted`` if any task ran out of budget,
    ``Exhausted`` otherwise.
    """
    deadline = None if budget.max_seconds is None else time.monotonic() + budget.max_seconds
    results: list[TaskResult] = []
    pending = list(prefixes)
    if workers <= 1:
        meter = Meter(budget, deadline)
        for i, p in enumerate(pending):
            res = runner(p, meter)
            results.append(res)
            if res.status == WITNESS_FOUND:
                break
            if res.status == ABORTED:
                for q in pending[i + 1:]:
                    res.frontier.append(q)
                break
        nodes, prunes = meter.nodes, meter.prunes
    else:
        ctx = mp.get_context("fork")
        shared = ctx.Value("q", 0)
        stop = ctx.Event()
        done: set[tuple[int, ...]] = set()
        # drain rather than terminate: Pool.terminate can deadlock against a
        # task handler blocked on a full queue, and queued tasks return at once
        # after the stop flag is set
        with ctx.Pool(workers, _init_worker, (runner, budget, deadline, shared, stop)) as pool:
            for prefix, res in pool.imap_unordered(_run_one, pending, chunksize=1):
                done.add(prefix)
                results.append(res)
                if res.status == WITNESS_FOUND:
                    stop.set()
            pool.close()
            pool.join()
        if not any(r.status == WITNESS_FOUND for r in results):
            for p in pending:
                if p not in done:
                    results.append(TaskResult(ABORTED, None, 0, 0, [p]))
        nodes = sum(r.nodes for r in results)
        prunes = sum(r.prunes for r in results)

    value = combine_value([r.value for r in results]) if combine_value else None
    for r in results:
        if r.status == WITNESS_FOUND:
            return WITNESS_FOUND, r.witness, nodes, prunes, [], value
    if any(r.status == ABORTED for r in results):
        frontier = sorted(p for r in results for p in r.frontier)
        return ABORTED, None, nodes, prunes, frontier, value
    return EXHAUSTED, None, nodes, prunes, [], value
