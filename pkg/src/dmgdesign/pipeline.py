"""
End-to-end structure discovery from interventional queries.

The procedure runs in stages, each with its own family of experiments.

0.   Observational graph: pairs no conditioning set can separate.
1.1  Descendant sets and SCCs, from marginal dependence of intervened nodes.
1.2  Directed edges, one SCC layer at a time.
2.1  Bidirected edges between nodes not joined by a directed edge.
2.2  Bidirected edges alongside a single directed edge, via do-see tests.

Bidirected edges between nodes joined in both directions cannot be
identified; such pairs are reported as undetermined.

In bounded mode every experiment has at most ``M`` targets, stage 0 is
skipped and stage 1.1 uses an (n, M) separating system.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from . import covers, sepsys
from .graph import (Dmg, UGraph, component_graph, directed_skeleton, double_directed_pairs,
                    graph_from_dict, graph_to_dict, scc_anc_partition, scc_decompose)
from .oracle import ExperimentLog, InterventionalOracle


class PipelineError(RuntimeError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    """Run options.

    Parameters
    ----------
    bound : int or None
        Maximum experiment size ``M``; None runs the unbounded procedure.
    cover : {"exact", "greedy", "randomized"}
        Edge clique cover used in stage 2.1.
    seed : int or None
        Seed for the randomized cover.
    strong_coloring : {"exact", "greedy"}
        Strong edge colouring used in stage 2.2.
    step0 : {"trusted", "faithful"}
        ``trusted`` asks the oracle for inseparable pairs directly;
        ``faithful`` derives them from CI queries over every conditioning set.
    """

    bound: int | None = None
    cover: str = "exact"
    seed: int | None = None
    strong_coloring: str = "exact"
    step0: str = "trusted"

    def __post_init__(self):
        if self.bound is not None and self.bound < 1:
            raise ValueError("bound must be at least 1")
        if self.cover not in ("exact", "greedy", "randomized"):
            raise ValueError(f"unknown cover strategy {self.cover!r}")
        if self.strong_coloring not in ("exact", "greedy"):
            raise ValueError(f"unknown strong colouring strategy {self.strong_coloring!r}")
        if self.step0 not in ("trusted", "faithful"):
            raise ValueError(f"unknown step-0 mode {self.step0!r}")

    @property
    def bounded(self) -> bool:
        return self.bound is not None


@dataclass
class StageReport:
    count: int
    bound: int
    max_size: int

    def to_dict(self) -> dict:
        return {"count": self.count, "bound": self.bound, "max_size": self.max_size}


@dataclass
class PipelineResult:
    recovered: Dmg
    undetermined: list
    stages: dict
    coverage_ok: bool = True
    log: ExperimentLog | None = field(default=None, compare=False)

    @property
    def total_experiments(self) -> int:
        return sum(r.count for s, r in self.stages.items() if s != "0")

    def to_dict(self) -> dict:
        return {
            "recovered": graph_to_dict(self.recovered),
            "undetermined": [list(p) for p in self.undetermined],
            "stages": {s: r.to_dict() for s, r in self.stages.items()},
            "coverage_ok": self.coverage_ok,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineResult":
        try:
            return cls(
                recovered=graph_from_dict(data["recovered"]),
                undetermined=[tuple(p) for p in data["undetermined"]],
                stages={s: StageReport(r["count"], r["bound"], r["max_size"])
                        for s, r in data["stages"].items()},
                coverage_ok=data.get("coverage_ok", True),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed result document: {exc}") from None

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _register_all(oracle, system, stage, config):
    for s in system:
        if config.bounded and len(s) > config.bound:
            raise PipelineError(f"stage {stage}: experiment of size {len(s)} exceeds M={config.bound}")
        oracle.register_experiment(s, stage)


# stage 0

def step0_observational(oracle: InterventionalOracle, mode: str = "trusted",
                        max_nodes: int = 10) -> UGraph:
    """Graph of pairs no conditioning set separates in the observational regime."""
    empty = oracle.register_experiment((), "0")
    if mode == "trusted":
        return oracle.observational_graph()
    n = oracle.n
    if n > max_nodes:
        raise PipelineError(f"faithful stage 0 limited to {max_nodes} nodes")
    edges = set()
    for x, y in combinations(range(n), 2):
        rest = [v for v in range(n) if v not in (x, y)]
        separable = any(not oracle.ci_query(empty, x, y, z)
                        for r in range(len(rest) + 1) for z in combinations(rest, r))
        if not separable:
            edges.add((x, y))
    return UGraph(n, frozenset(edges))


# stage 1.1

def step11_system(obs: UGraph | None, n: int, config: PipelineConfig):
    if config.bounded:
        return sepsys.nm_separating_system(n, config.bound), sepsys.nm_limit(n, config.bound)
    coloring = covers.greedy_vertex_coloring(obs)
    return (sepsys.colored_separating_system(coloring, n),
            sepsys.colored_limit(coloring.num_colors))


def step11_learn_ancestry(oracle: InterventionalOracle, obs: UGraph | None,
                          config: PipelineConfig):
    """Descendant sets and SCCs of the truth.

    Returns
    -------
    descendants : list of frozenset
        ``De(X)`` for every node, including ``X``.
    sccs : list of frozenset
    h : Dmg
        Directed graph ``X -> Y`` for every detected dependence; it has the
        same descendant sets as the truth.
    """
    n = oracle.n
    system, _ = step11_system(obs, n, config)
    _register_all(oracle, system, "1.1", config)
    found = [set() for _ in range(n)]
    for x in range(n):
        cand = [y for y in range(n) if y != x]
        if not config.bounded:
            cand = [y for y in cand if obs.has_edge(x, y)]
        for s in system:
            if x not in s:
                continue
            for y in cand:
                if y not in found[x] and oracle.ci_query(s, x, y):
                    found[x].add(y)
    h = Dmg(n, frozenset((x, y) for x in range(n) for y in found[x]))
    return [h.descendants(x) for x in range(n)], scc_decompose(h), h


# stage 1.2

def step12_learn_directed(oracle: InterventionalOracle, partition, config: PipelineConfig) -> Dmg:
    """Directed edges of the truth, using an SCC-Anc separating system."""
    n = partition.n
    if config.bounded:
        system = sepsys.scc_anc_separating_system_bounded(partition, config.bound, n)
    else:
        system = sepsys.scc_anc_separating_system(partition)
    _register_all(oracle, system, "1.2", config)
    edges = set()
    for k, scc in partition.sccs():
        allowed = partition.prefix(k) | frozenset(scc)
        for x in scc:
            cand = allowed - {x}
            s = system.find(cand, (x,))
            if s is None:
                raise PipelineError(f"no SCC-Anc experiment isolates node {x}")
            edges.update((y, x) for y in sorted(cand) if oracle.ci_query(s, x, y))
    return Dmg(n, frozenset(edges))


# stage 2.1

def _cover(dhat: Dmg, config: PipelineConfig):
    uc = component_graph(dhat)
    if config.cover == "exact":
        cover = covers.edge_clique_cover_exact(uc)
    elif config.cover == "greedy":
        cover = covers.edge_clique_cover_greedy(uc)
    else:
        cover = covers.edge_clique_cover_randomized(dhat, config.seed)
    return uc, cover


def step21_system(dhat: Dmg, config: PipelineConfig):
    uc, cover = _cover(dhat, config)
    if config.bounded:
        system = sepsys.nonadjacent_separating_system_bounded(dhat, cover, config.bound)
        limit = sepsys.nonadjacent_limit(dhat, cover, config.bound)
    else:
        system = sepsys.nonadjacent_separating_system(dhat, cover)
        if config.cover == "randomized":
            limit = cover.rounds
        else:
            limit = len(cover)
    return uc, cover, system, limit


def step21_learn_nonadjacent(oracle: InterventionalOracle, dhat: Dmg, config: PipelineConfig):
    """Bidirected edges between nodes with no directed edge between them.

    Returns
    -------
    edges : frozenset
    coverage_ok : bool
        False when the randomized cover missed some pair; those pairs are
        left out rather than guessed.
    """
    return _run21(oracle, dhat, config)[:2]


def _run21(oracle, dhat, config):
    uc, _, system, limit = step21_system(dhat, config)
    _register_all(oracle, system, "2.1", config)
    found, ok = set(), True
    for x, y in uc.sorted_edges():
        pa = dhat.parents_of((x, y))
        s = system.find(pa, (x, y))
        if s is None:
            ok = False
            continue
        if oracle.ci_query(s, x, y, pa):
            found.add((x, y))
    return frozenset(found), ok, limit


# stage 2.2

def step22_system(dhat: Dmg, config: PipelineConfig):
    u = directed_skeleton(dhat)
    if config.strong_coloring == "exact":
        sec = covers.strong_edge_coloring_exact(u)
    else:
        sec = covers.strong_edge_coloring_greedy(u)
    if config.bounded:
        system = sepsys.adjacent_separating_system_bounded(dhat, sec, config.bound)
        limit = sepsys.adjacent_limit(dhat, sec, config.bound)
    else:
        system = sepsys.adjacent_separating_system(dhat, sec)
        if config.strong_coloring == "exact":
            limit = 2 * len(sec)
        else:
            limit = 4 * u.max_degree ** 2
    return sec, system, limit


def step22_learn_adjacent(oracle: InterventionalOracle, dhat: Dmg, config: PipelineConfig):
    """Bidirected edges alongside exactly one directed edge.

    Returns
    -------
    edges : frozenset
        Detected bidirected edges, canonical pairs.
    undetermined : list
        Pairs joined in both directions, whose bidirected status is not
        identifiable.
    """
    return _run22(oracle, dhat, config)[:2]


def _run22(oracle, dhat, config):
    _, system, limit = step22_system(dhat, config)
    _register_all(oracle, system, "2.2", config)
    found = set()
    for x, y in sorted(dhat.directed):
        if dhat.has_directed(y, x):
            continue
        w = sepsys.adjacent_witness(system, dhat, x, y)
        if w is None:
            raise PipelineError(f"no do-see pair serves edge ({x}, {y})")
        if oracle.do_see_query(w[0], w[1], x, y):
            found.add((min(x, y), max(x, y)))
    return frozenset(found), sorted(double_directed_pairs(dhat)), limit


# driver

def discover(oracle: InterventionalOracle, config: PipelineConfig | None = None) -> PipelineResult:
    """Run every stage and return the recovered graph with per-stage accounting."""
    config = config or PipelineConfig()
    n = oracle.n
    stages = {}

    obs = None
    if not config.bounded:
        obs = step0_observational(oracle, config.step0)
    _, limit11 = step11_system(obs, n, config)
    _, _, h = step11_learn_ancestry(oracle, obs, config)

    partition = scc_anc_partition(h)
    limit12 = sepsys.scc_anc_limit(partition, config.bound)
    dhat = step12_learn_directed(oracle, partition, config)

    b_na, coverage_ok, limit21 = _run21(oracle, dhat, config)
    b_as, undetermined, limit22 = _run22(oracle, dhat, config)

    log = oracle.log
    if not config.bounded:
        stages["0"] = StageReport(log.count("0"), 1, log.max_size("0"))
    for s, lim in (("1.1", limit11), ("1.2", limit12), ("2.1", limit21), ("2.2", limit22)):
        stages[s] = StageReport(log.count(s), lim, log.max_size(s))
        if config.bounded and log.max_size(s) > config.bound:
            raise PipelineError(f"stage {s} used an experiment above M={config.bound}")

    recovered = Dmg(n, dhat.directed, b_na | b_as)
    return PipelineResult(recovered, undetermined, stages, coverage_ok, log)
