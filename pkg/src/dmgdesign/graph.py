"""
Directed mixed graphs (DMGs) and their structural queries.

A DMG on nodes ``0..n-1`` carries a set of directed edges ``(u, v)`` meaning
``u -> v`` and a set of bidirected edges ``[u, v]`` stored canonically with
``u < v``. Directed cycles are allowed; self-loops are not.

Besides the container this module provides strongly connected components,
ancestral closure, hard interventions, the three edge-removal operators
``rb``, ``ra`` and ``rd``, the directed skeleton and its complement, and the
layering of SCCs by their longest ancestor chain.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

import networkx as nx

DESCENDANTS = "descendants"
ANCESTORS = "ancestors"


def _canon(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Dmg:
    """Immutable directed mixed graph over dense integer nodes."""

    n: int
    directed: frozenset = frozenset()
    bidirected: frozenset = frozenset()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("node count must be non-negative")
        d = frozenset((int(u), int(v)) for u, v in self.directed)
        b = frozenset(_canon(int(u), int(v)) for u, v in self.bidirected)
        for u, v in d | b:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {self.n})")
        object.__setattr__(self, "directed", d)
        object.__setattr__(self, "bidirected", b)

    def __repr__(self):
        return (f"Dmg(n={self.n}, directed={sorted(self.directed)}, "
                f"bidirected={sorted(self.bidirected)})")

    @property
    def nodes(self) -> range:
        return range(self.n)

    @cached_property
    def _pa(self) -> tuple:
        pa = [[] for _ in range(self.n)]
        for u, v in sorted(self.directed):
            pa[v].append(u)
        return tuple(frozenset(p) for p in pa)

    @cached_property
    def _ch(self) -> tuple:
        ch = [[] for _ in range(self.n)]
        for u, v in sorted(self.directed):
            ch[u].append(v)
        return tuple(tuple(c) for c in ch)

    @cached_property
    def _sib(self) -> tuple:
        sib = [set() for _ in range(self.n)]
        for u, v in self.bidirected:
            sib[u].add(v)
            sib[v].add(u)
        return tuple(frozenset(s) for s in sib)

    def parents(self, x: int) -> frozenset:
        return self._pa[x]

    def children(self, x: int) -> frozenset:
        return frozenset(self._ch[x])

    def siblings(self, x: int) -> frozenset:
        """Nodes joined to ``x`` by a bidirected edge."""
        return self._sib[x]

    def parents_of(self, nodes: Iterable[int]) -> frozenset:
        """Union of the parent sets of ``nodes`` (may contain members of ``nodes``)."""
        out = set()
        for x in nodes:
            out |= self._pa[x]
        return frozenset(out)

    def has_directed(self, u: int, v: int) -> bool:
        return (u, v) in self.directed

    def has_bidirected(self, u: int, v: int) -> bool:
        return _canon(u, v) in self.bidirected

    def adjacent(self, u: int, v: int) -> bool:
        """True if ``u`` and ``v`` share a directed edge in either direction."""
        return (u, v) in self.directed or (v, u) in self.directed

    @cached_property
    def incidence(self) -> tuple:
        """Per node, a tuple of ``(neighbour, head_here, head_there)`` triples.

        One triple per edge end, so parallel edges (e.g. ``u -> v`` together
        with ``u <-> v``) appear separately.
        """
        inc = [[] for _ in range(self.n)]
        for u, v in sorted(self.directed):
            inc[u].append((v, False, True))
            inc[v].append((u, True, False))
        for u, v in sorted(self.bidirected):
            inc[u].append((v, True, True))
            inc[v].append((u, True, True))
        return tuple(tuple(e) for e in inc)

    @cached_property
    def scc_id(self) -> tuple:
        """Index of the strongly connected component of each node."""
        ids = [0] * self.n
        for k, comp in enumerate(scc_decompose(self)):
            for x in comp:
                ids[x] = k
        return tuple(ids)

    def scc_of(self, x: int) -> frozenset:
        k = self.scc_id[x]
        return frozenset(v for v in range(self.n) if self.scc_id[v] == k)

    def descendants(self, x: int) -> frozenset:
        return reachable(self, x, DESCENDANTS)

    def ancestors(self, x: int) -> frozenset:
        return reachable(self, x, ANCESTORS)

    def ancestors_of(self, nodes: Iterable[int]) -> frozenset:
        """Union of ``Anc(x)`` over ``nodes``."""
        seen = set(nodes)
        stack = list(seen)
        while stack:
            v = stack.pop()
            for p in self._pa[v]:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return frozenset(seen)

    def is_acyclic(self) -> bool:
        return all(len(c) == 1 for c in scc_decompose(self))


@dataclass(frozen=True)
class UGraph:
    """Immutable undirected simple graph over dense integer nodes."""

    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        e = frozenset(_canon(int(u), int(v)) for u, v in self.edges)
        for u, v in e:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {self.n})")
        object.__setattr__(self, "edges", e)

    def __repr__(self):
        return f"UGraph(n={self.n}, edges={sorted(self.edges)})"

    @cached_property
    def _nbrs(self) -> tuple:
        nb = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    def neighbors(self, x: int) -> frozenset:
        return self._nbrs[x]

    def has_edge(self, u: int, v: int) -> bool:
        return _canon(u, v) in self.edges

    def degree(self, x: int) -> int:
        return len(self._nbrs[x])

    @property
    def max_degree(self) -> int:
        return max((len(s) for s in self._nbrs), default=0)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self.edges)
        return h


@dataclass(frozen=True)
class BidirectedClasses:
    non_adjacent: frozenset
    single_adjacent: frozenset
    double_adjacent: frozenset


@dataclass(frozen=True)
class SccAncPartition:
    """SCCs grouped into layers by the length of their longest ancestor chain.

    ``layers[k-1]`` holds the SCCs of layer ``k`` as sorted tuples of nodes,
    ordered by their smallest node.
    """

    layers: tuple

    @property
    def n(self) -> int:
        return sum(len(s) for layer in self.layers for s in layer)

    @property
    def length(self) -> int:
        """Number of layers minus one (``l`` in the layer indexing ``1..l+1``)."""
        return len(self.layers) - 1

    def layer(self, k: int) -> tuple:
        return self.layers[k - 1]

    def zeta(self, k: int) -> int:
        """Size of the largest SCC in layer ``k``."""
        return max(len(s) for s in self.layers[k - 1])

    @property
    def zetas(self) -> list:
        return [self.zeta(k) for k in range(1, len(self.layers) + 1)]

    def prefix(self, k: int) -> frozenset:
        """Union of layers ``1..k-1``."""
        return frozenset(x for layer in self.layers[:k - 1] for s in layer for x in s)

    def prefix_size(self, k: int) -> int:
        return sum(len(s) for layer in self.layers[:k - 1] for s in layer)

    @property
    def top(self) -> int:
        """Index of the last layer (``l + 1``)."""
        return len(self.layers)

    def sccs(self):
        """Yield ``(k, scc)`` for every SCC, layer by layer."""
        for k, layer in enumerate(self.layers, start=1):
            for s in layer:
                yield k, s


def scc_decompose(g: Dmg) -> list:
    """Strongly connected components of the directed part of ``g``.

    Components are returned as frozensets ordered by their smallest node.
    """
    h = nx.DiGraph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.directed)
    comps = [frozenset(c) for c in nx.strongly_connected_components(h)]
    return sorted(comps, key=min)


def reachable(g: Dmg, x: int, direction: str = DESCENDANTS) -> frozenset:
    """Closure of ``{x}`` under directed edges; contains ``x`` itself."""
    if not 0 <= x < g.n:
        raise ValueError(f"node {x} not in graph")
    if direction == DESCENDANTS:
        step = g._ch
    elif direction == ANCESTORS:
        step = g._pa
    else:
        raise ValueError(f"unknown direction {direction!r}")
    seen = {x}
    stack = [x]
    while stack:
        v = stack.pop()
        for w in step[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def intervene(g: Dmg, targets: Iterable[int]) -> Dmg:
    """Hard intervention: drop every edge with an arrowhead at a target."""
    t = frozenset(targets)
    if not t:
        return g
    for x in t:
        if not 0 <= x < g.n:
            raise ValueError(f"intervention target {x} not in graph")
    d = frozenset(e for e in g.directed if e[1] not in t)
    b = frozenset(e for e in g.bidirected if e[0] not in t and e[1] not in t)
    return Dmg(g.n, d, b)


def classify_bidirected(g: Dmg) -> BidirectedClasses:
    na, sa, da = set(), set(), set()
    for u, v in g.bidirected:
        k = ((u, v) in g.directed) + ((v, u) in g.directed)
        (na, sa, da)[k].add((u, v))
    return BidirectedClasses(frozenset(na), frozenset(sa), frozenset(da))


def rb(g: Dmg) -> Dmg:
    """Drop all bidirected edges."""
    return Dmg(g.n, g.directed)


def ra(g: Dmg) -> Dmg:
    """Keep only bidirected edges between non-adjacent nodes."""
    return Dmg(g.n, g.directed, classify_bidirected(g).non_adjacent)


def rd(g: Dmg) -> Dmg:
    """Drop bidirected edges whose endpoints are joined in both directions."""
    c = classify_bidirected(g)
    return Dmg(g.n, g.directed, c.non_adjacent | c.single_adjacent)


def double_directed_pairs(g: Dmg) -> frozenset:
    """Canonical pairs ``(u, v)``, ``u < v``, with both ``u -> v`` and ``v -> u``."""
    return frozenset((u, v) for u, v in g.directed if u < v and (v, u) in g.directed)


def directed_skeleton(g: Dmg) -> UGraph:
    return UGraph(g.n, frozenset(_canon(u, v) for u, v in g.directed))


def component_graph(g: Dmg) -> UGraph:
    """Complement of the directed skeleton."""
    return UGraph(g.n, frozenset(
        (u, v) for u, v in combinations(range(g.n), 2) if not g.adjacent(u, v)))


def scc_anc_partition(g: Dmg) -> SccAncPartition:
    comps = scc_decompose(g)
    cid = {x: k for k, c in enumerate(comps) for x in c}
    dag = nx.DiGraph()
    dag.add_nodes_from(range(len(comps)))
    dag.add_edges_from({(cid[u], cid[v]) for u, v in g.directed if cid[u] != cid[v]})
    depth = {}
    for c in nx.lexicographical_topological_sort(dag):
        depth[c] = 1 + max((depth[p] for p in dag.predecessors(c)), default=0)
    layers = [[] for _ in range(max(depth.values(), default=0))]
    for k, c in enumerate(comps):
        layers[depth[k] - 1].append(tuple(sorted(c)))
    return SccAncPartition(tuple(tuple(sorted(layer)) for layer in layers))


# I/O

def graph_to_dict(g: Dmg) -> dict:
    return {
        "n": g.n,
        "directed": [list(e) for e in sorted(g.directed)],
        "bidirected": [list(e) for e in sorted(g.bidirected)],
    }


def graph_from_dict(data: dict) -> Dmg:
    try:
        n = data["n"]
        directed = data.get("directed", [])
        bidirected = data.get("bidirected", [])
    except (TypeError, AttributeError, KeyError) as exc:
        raise ValueError(f"malformed graph document: {exc}") from None
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError("'n' must be an integer")
    for e in list(directed) + list(bidirected):
        if len(e) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) for x in e):
            raise ValueError(f"malformed edge {e!r}")
    for u, v in bidirected:
        if u >= v:
            raise ValueError(f"bidirected edge {[u, v]} must be stored with u < v")
    return Dmg(n, frozenset(map(tuple, directed)), frozenset(map(tuple, bidirected)))


def dumps_graph(g: Dmg) -> str:
    return json.dumps(graph_to_dict(g), indent=2) + "\n"


def loads_graph(text: str) -> Dmg:
    return graph_from_dict(json.loads(text))


def to_dot(g: Dmg, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f"  {x};" for x in range(g.n)]
    lines += [f"  {u} -> {v};" for u, v in sorted(g.directed)]
    lines += [f"  {u} -> {v} [dir=both, style=dashed];" for u, v in sorted(g.bidirected)]
    lines.append("}")
    return "\n".join(lines) + "\n"
