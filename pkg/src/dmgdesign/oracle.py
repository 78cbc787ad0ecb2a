"""
Noiseless interventional oracle.

The oracle holds the true graph and answers two kinds of questions about
interventional distributions: conditional-independence queries, answered by
graphical separation in the intervened graph, and do-see queries, which
compare ``P(Y | X, do(I))`` with ``P(Y | do(I + {X}))``. Every intervention
set must be registered before it is queried; registrations are metered in an
``ExperimentLog`` grouped by pipeline stage.
"""
from __future__ import annotations

import json
import threading
from itertools import combinations
from typing import Iterable

from .graph import Dmg, intervene, scc_anc_partition
from .separation import Scenario, is_r_separated, observational_graph

STAGES = ("0", "1.1", "1.2", "2.1", "2.2")


class UnregisteredExperiment(KeyError):
    pass


class DoSeePreconditionError(ValueError):
    pass


class ExperimentLog:
    """Distinct intervention sets per stage, in registration order."""

    def __init__(self):
        self._sets = {}
        self._seen = {}
        self._queries = {}
        self._lock = threading.Lock()

    def register(self, targets: Iterable[int], stage: str) -> frozenset:
        t = frozenset(targets)
        with self._lock:
            seen = self._seen.setdefault(stage, set())
            if t not in seen:
                seen.add(t)
                self._sets.setdefault(stage, []).append(t)
            self._queries.setdefault(t, 0)
        return t

    def is_registered(self, t: frozenset) -> bool:
        return t in self._queries

    def record_query(self, t: frozenset):
        with self._lock:
            self._queries[t] += 1

    @property
    def stages(self) -> list:
        return [s for s in STAGES if s in self._sets] + sorted(
            s for s in self._sets if s not in STAGES)

    def experiments(self, stage: str | None = None) -> list:
        if stage is not None:
            return list(self._sets.get(stage, []))
        return [t for s in self.stages for t in self._sets[s]]

    def count(self, stage: str) -> int:
        return len(self._sets.get(stage, []))

    def max_size(self, stage: str | None = None) -> int:
        return max((len(t) for t in self.experiments(stage)), default=0)

    def queries(self, t: Iterable[int]) -> int:
        return self._queries.get(frozenset(t), 0)

    def to_dict(self) -> dict:
        return {
            s: {
                "experiments": [sorted(t) for t in self._sets[s]],
                "count": self.count(s),
                "max_size": self.max_size(s),
                "queries": sum(self._queries[t] for t in self._sets[s]),
            }
            for s in self.stages
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


class InterventionalOracle:
    """Answers queries about the hidden ``truth`` under a separation scenario."""

    def __init__(self, truth: Dmg, scenario=Scenario.SIGMA):
        self._truth = truth
        self.scenario = Scenario.coerce(scenario)
        self.log = ExperimentLog()
        self._intervened = {}

    @property
    def n(self) -> int:
        return self._truth.n

    def register_experiment(self, targets: Iterable[int], stage: str) -> frozenset:
        t = frozenset(targets)
        for x in t:
            if not 0 <= x < self._truth.n:
                raise ValueError(f"intervention target {x} not in graph")
        return self.log.register(t, stage)

    def _graph_under(self, t: frozenset) -> Dmg:
        if not self.log.is_registered(t):
            raise UnregisteredExperiment(f"experiment {sorted(t)} was never registered")
        h = self._intervened.get(t)
        if h is None:
            h = self._intervened[t] = intervene(self._truth, t)
        return h

    def ci_query(self, targets: Iterable[int], x: int, y: int, z: Iterable[int] = ()) -> bool:
        """True if ``x`` and ``y`` are dependent given ``z`` under ``do(targets)``."""
        t = frozenset(targets)
        h = self._graph_under(t)
        self.log.record_query(t)
        return not is_r_separated(h, x, y, z, self.scenario)

    def do_see_query(self, i1: Iterable[int], i2: Iterable[int], x: int, y: int) -> bool:
        """True if ``P(y | x, do(i1))`` differs from ``P(y | do(i2))``.

        Requires ``x -> y`` in the truth, ``Pa({x,y}) - {x,y}`` inside ``i1``
        with ``x, y`` outside, and ``Pa({x,y}) - {y}`` inside ``i2`` with ``x``
        inside and ``y`` outside.
        """
        a, b = frozenset(i1), frozenset(i2)
        for t in (a, b):
            self._graph_under(t)
        g = self._truth
        if not g.has_directed(x, y):
            raise DoSeePreconditionError(f"({x}, {y}) is not a directed edge")
        pa = g.parents_of((x, y))
        if not (pa - {x, y} <= a and x not in a and y not in a):
            raise DoSeePreconditionError(f"first set {sorted(a)} invalid for ({x}, {y})")
        if not (pa - {y} <= b and x in b and y not in b):
            raise DoSeePreconditionError(f"second set {sorted(b)} invalid for ({x}, {y})")
        self.log.record_query(a)
        self.log.record_query(b)
        if g.has_directed(y, x):
            return True
        return g.has_bidirected(x, y)

    def observational_graph(self):
        """Inseparable pairs of the unintervened truth, via inducing paths."""
        return observational_graph(self._truth, self.scenario)

    def bounded_floor(self) -> int:
        """Smallest experiment size bound under which recovery can be guaranteed.

        The larger of the biggest joint parent set of a node pair and
        ``|T_{l+1}| + zeta_{l+1} - 1`` for the last SCC layer.
        """
        g = self._truth
        pairs = max((len(g.parents_of(p)) for p in combinations(range(g.n), 2)), default=0)
        part = scc_anc_partition(g)
        if g.n == 0:
            return 0
        top = part.top
        return max(pairs, part.prefix_size(top) + part.zeta(top) - 1)

    def m_feasible(self, m: int) -> bool:
        return m >= max(1, self.bounded_floor())
