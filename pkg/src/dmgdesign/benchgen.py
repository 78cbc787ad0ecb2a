"""
Instance generators, an exhaustive equivalence checker and bound reports.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import covers
from .graph import (Dmg, classify_bidirected, component_graph, directed_skeleton,
                    intervene, scc_anc_partition)
from .separation import InstanceTooLarge, Scenario, is_r_separated, observational_graph


@dataclass(frozen=True)
class GenSpec:
    n: int
    p_directed: float = 0.3
    p_bidirected: float = 0.2
    force_cycles: int = 0
    seed: int | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        for p in (self.p_directed, self.p_bidirected):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability {p} outside [0, 1]")
        if self.force_cycles < 0:
            raise ValueError("force_cycles must be non-negative")


def random_dmg(spec: GenSpec) -> Dmg:
    """Independent directed and bidirected edges, plus optional injected cycles.

    Each injected cycle runs through 2 to ``min(n, 4)`` distinct random nodes.
    """
    n = spec.n
    rng = np.random.default_rng(spec.seed)
    draws = rng.random((n, n))
    directed = {(u, v) for u in range(n) for v in range(n)
                if u != v and draws[u, v] < spec.p_directed}
    bidirected = {(u, v) for u, v in combinations(range(n), 2)
                  if rng.random() < spec.p_bidirected}
    if n >= 2:
        for _ in range(spec.force_cycles):
            k = int(rng.integers(2, min(n, 4) + 1))
            cyc = [int(v) for v in rng.choice(n, size=k, replace=False)]
            directed.update((cyc[i], cyc[(i + 1) % k]) for i in range(k))
    return Dmg(n, frozenset(directed), frozenset(bidirected))


def worst_case_layered(layer_scc_sizes) -> Dmg:
    """Hard instance whose SCC layers have the given sizes.

    Every SCC is a complete digraph with all internal bidirected edges, and
    every node of a layer has a directed and a bidirected edge to every node
    of each later layer.
    """
    layers = [list(layer) for layer in layer_scc_sizes]
    if not layers or len(layers[0]) != 1:
        raise ValueError("the first layer must consist of exactly one SCC")
    if any(not layer for layer in layers) or any(s < 1 for layer in layers for s in layer):
        raise ValueError("layers must be non-empty with positive SCC sizes")
    node_layers, nxt = [], 0
    for layer in layers:
        sccs = []
        for size in layer:
            sccs.append(list(range(nxt, nxt + size)))
            nxt += size
        node_layers.append(sccs)
    directed, bidirected = set(), set()
    for li, sccs in enumerate(node_layers):
        for scc in sccs:
            for a in scc:
                for b in scc:
                    if a != b:
                        directed.add((a, b))
                        bidirected.add((min(a, b), max(a, b)))
        later = [x for sccs2 in node_layers[li + 1:] for scc in sccs2 for x in scc]
        for scc in sccs:
            for a in scc:
                for b in later:
                    directed.add((a, b))
                    bidirected.add((a, b))
    return Dmg(nxt, frozenset(directed), frozenset(bidirected))


def fully_confounded(g: Dmg) -> Dmg:
    return Dmg(g.n, g.directed, frozenset(combinations(range(g.n), 2)))


def equivalence_witness(g1: Dmg, g2: Dmg, experiments, scenario=Scenario.SIGMA,
                        max_nodes: int = 7):
    """First disagreement between two graphs' interventional independence models.

    Experiments are visited in the order given; within an experiment pairs are
    visited lexicographically and conditioning sets by ascending size, then
    lexicographically. Returns ``(I, X, Y, Z)`` or None when none is found.
    """
    if g1.n != g2.n:
        raise ValueError("graphs have different node counts")
    if g1.n > max_nodes:
        raise InstanceTooLarge(f"equivalence check limited to {max_nodes} nodes")
    n = g1.n
    for t in experiments:
        t = frozenset(t)
        h1, h2 = intervene(g1, t), intervene(g2, t)
        if h1 == h2:
            continue
        for x, y in combinations(range(n), 2):
            rest = [v for v in range(n) if v not in (x, y)]
            for r in range(len(rest) + 1):
                for z in combinations(rest, r):
                    if is_r_separated(h1, x, y, z, scenario) != is_r_separated(h2, x, y, z, scenario):
                        return tuple(sorted(t)), x, y, z
    return None


def markov_equivalent(g1: Dmg, g2: Dmg, experiments, scenario=Scenario.SIGMA,
                      max_nodes: int = 7) -> bool:
    """True if both graphs imply the same separations under every experiment."""
    return equivalence_witness(g1, g2, experiments, scenario, max_nodes) is None


# reports

def lower_bound_quantities(g: Dmg, scenario=Scenario.SIGMA, exact_limit: int = 10) -> dict:
    """Structural quantities behind the experiment-count and size lower bounds."""
    u = directed_skeleton(g)
    uc = component_graph(g)
    part = scc_anc_partition(g)
    obs = observational_graph(g, scenario)
    top = part.top
    cls = classify_bidirected(g)
    out = {
        "n": g.n,
        "d": u.max_degree,
        "chi_greedy": covers.greedy_vertex_coloring(obs).num_colors,
        "zeta": part.zetas,
        "sum_zeta": sum(part.zetas),
        "prefix_top": part.prefix_size(top),
        "size_floor_directed": part.prefix_size(top) + part.zeta(top) - 1,
        "size_floor_bidirected": max((len(g.parents_of(e)) for e in cls.non_adjacent), default=0),
        "cc": None,
        "chi_s": None,
    }
    if g.n <= exact_limit:
        out["cc"] = len(covers.edge_clique_cover_exact(uc))
        out["chi_s"] = len(covers.strong_edge_coloring_exact(u))
    return out


def bounds_report(g: Dmg, result=None, scenario=Scenario.SIGMA) -> dict:
    """Instance quantities plus, if a result is given, per-stage count vs. target."""
    report = {"instance": lower_bound_quantities(g, scenario), "stages": []}
    if result is not None:
        for stage, r in result.stages.items():
            report["stages"].append({
                "stage": stage, "count": r.count, "bound": r.bound,
                "max_size": r.max_size, "within": r.count <= r.bound,
            })
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def report_table(report: dict) -> str:
    inst = report["instance"]
    width = max(len(k) for k in inst)
    lines = [f"{k.ljust(width)}  {inst[k]}" for k in inst]
    if report["stages"]:
        rows = [("stage", "count", "bound", "max_size", "within")]
        rows += [(s["stage"], str(s["count"]), str(s["bound"]), str(s["max_size"]),
                  "yes" if s["within"] else "NO") for s in report["stages"]]
        cols = [max(len(r[i]) for r in rows) for i in range(5)]
        lines.append("")
        for r in rows:
            lines.append("  ".join(c.rjust(w) for c, w in zip(r, cols)).rstrip())
    return "\n".join(lines) + "\n"
