"""
Vertex colourings, edge clique covers and strong edge colourings.

These are the combinatorial objects behind the separating-system
constructions. Exact solvers are branch and bound and only meant for small
graphs; each has a size guard.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import networkx as nx
import numpy as np

from .graph import Dmg, UGraph, directed_skeleton


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Coloring:
    colors: tuple

    @property
    def num_colors(self) -> int:
        return max(self.colors, default=-1) + 1

    def classes(self) -> list:
        out = [[] for _ in range(self.num_colors)]
        for x, c in enumerate(self.colors):
            out[c].append(x)
        return [frozenset(c) for c in out]

    def is_proper(self, u: UGraph) -> bool:
        return all(self.colors[a] != self.colors[b] for a, b in u.edges)


@dataclass(frozen=True)
class CliqueCover:
    cliques: tuple
    rounds: int | None = None

    def __len__(self):
        return len(self.cliques)

    def covers(self, a: int, b: int) -> bool:
        return any(a in c and b in c for c in self.cliques)

    def uncovered(self, u: UGraph) -> list:
        return [e for e in u.sorted_edges() if not self.covers(*e)]

    def is_valid(self, u: UGraph) -> bool:
        cliques_ok = all(u.has_edge(a, b) for c in self.cliques for a, b in combinations(sorted(c), 2))
        return cliques_ok and not self.uncovered(u)


@dataclass(frozen=True)
class StrongEdgeColoring:
    classes: tuple

    def __len__(self):
        return len(self.classes)

    def is_valid(self, u: UGraph) -> bool:
        seen = [e for cls in self.classes for e in cls]
        if sorted(seen) != u.sorted_edges():
            return False
        return all(not _edges_conflict(u, e, f)
                   for cls in self.classes for e, f in combinations(sorted(cls), 2))


def greedy_vertex_coloring(u: UGraph) -> Coloring:
    """Colour nodes in ascending order with the smallest colour not used by a neighbour."""
    colors = [-1] * u.n
    for x in range(u.n):
        used = {colors[y] for y in u.neighbors(x)}
        c = 0
        while c in used:
            c += 1
        colors[x] = c
    return Coloring(tuple(colors))


def _dsatur_exact(adj: list) -> list:
    """Minimum colouring of the graph given by neighbour bitmasks."""
    nv = len(adj)
    if nv == 0:
        return []
    deg = [bin(a).count("1") for a in adj]

    def dsatur(bound):
        colors = [-1] * nv
        nbr_colors = [0] * nv
        best = [None]
        ub = [bound]

        def pick():
            best_v, key = -1, None
            for v in range(nv):
                if colors[v] < 0:
                    k = (bin(nbr_colors[v]).count("1"), deg[v], -v)
                    if key is None or k > key:
                        best_v, key = v, k
            return best_v

        def rec(done, used):
            if used >= ub[0]:
                return
            if done == nv:
                ub[0] = used
                best[0] = list(colors)
                return
            v = pick()
            for c in range(min(used + 1, ub[0] - 1)):
                if nbr_colors[v] >> c & 1:
                    continue
                colors[v] = c
                saved = []
                m = adj[v]
                while m:
                    w = (m & -m).bit_length() - 1
                    m &= m - 1
                    saved.append((w, nbr_colors[w]))
                    nbr_colors[w] |= 1 << c
                rec(done + 1, max(used, c + 1))
                for w, old in saved:
                    nbr_colors[w] = old
                colors[v] = -1

        rec(0, 0)
        return best[0]

    greedy = _dsatur_greedy(adj)
    k = max(greedy) + 1
    better = dsatur(k)
    return better if better is not None else greedy


def _dsatur_greedy(adj: list) -> list:
    nv = len(adj)
    colors = [-1] * nv
    for _ in range(nv):
        v = max((w for w in range(nv) if colors[w] < 0),
                key=lambda w: (len({colors[t] for t in range(nv) if adj[w] >> t & 1 and colors[t] >= 0}),
                               bin(adj[w]).count("1"), -w))
        used = {colors[t] for t in range(nv) if adj[v] >> t & 1}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return colors


def exact_vertex_coloring(u: UGraph, max_nodes: int = 40) -> Coloring:
    """Minimum proper colouring by DSATUR branch and bound."""
    if u.n > max_nodes:
        raise InstanceTooLarge(f"exact colouring limited to {max_nodes} nodes")
    adj = [sum(1 << y for y in u.neighbors(x)) for x in range(u.n)]
    return Coloring(tuple(_dsatur_exact(adj)))


# edge clique covers

def _maximal_cliques(u: UGraph) -> list:
    h = u.to_networkx()
    h.remove_nodes_from([x for x in range(u.n) if u.degree(x) == 0])
    return sorted(tuple(sorted(c)) for c in nx.find_cliques(h))


def edge_clique_cover_exact(u: UGraph, max_nodes: int = 16) -> CliqueCover:
    """Minimum edge clique cover by branch and bound over maximal cliques."""
    if u.n > max_nodes:
        raise InstanceTooLarge(f"exact clique cover limited to {max_nodes} nodes")
    edges = u.sorted_edges()
    if not edges:
        return CliqueCover(())
    eid = {e: i for i, e in enumerate(edges)}
    cliques = _maximal_cliques(u)
    masks = [sum(1 << eid[e] for e in combinations(c, 2)) for c in cliques]
    containing = [[k for k, m in enumerate(masks) if m >> i & 1] for i in range(len(edges))]
    biggest = max(bin(m).count("1") for m in masks)

    best = _greedy_set_cover(masks, (1 << len(edges)) - 1)
    chosen = []

    def rec(todo):
        nonlocal best
        if not todo:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        lb = -(-bin(todo).count("1") // biggest)
        if len(chosen) + lb >= len(best):
            return
        # branch on the uncovered edge with the fewest candidate cliques
        m, pick = todo, None
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            if pick is None or len(containing[i]) < len(containing[pick]):
                pick = i
        options = sorted(containing[pick], key=lambda k: (-bin(masks[k] & todo).count("1"), k))
        for k in options:
            chosen.append(k)
            rec(todo & ~masks[k])
            chosen.pop()

    rec((1 << len(edges)) - 1)
    return CliqueCover(tuple(frozenset(cliques[k]) for k in sorted(best)))


def _greedy_set_cover(masks: list, todo: int) -> list:
    out = []
    while todo:
        k = max(range(len(masks)), key=lambda j: (bin(masks[j] & todo).count("1"), -j))
        out.append(k)
        todo &= ~masks[k]
    return out


def edge_clique_cover_greedy(u: UGraph) -> CliqueCover:
    """Grow a maximal clique around each still-uncovered edge."""
    uncovered = set(u.edges)
    out = []
    for a, b in u.sorted_edges():
        if (a, b) not in uncovered:
            continue
        clique = {a, b}
        cand = (u.neighbors(a) & u.neighbors(b)) - clique
        while cand:
            def gain(v):
                return sum((min(v, w), max(v, w)) in uncovered for w in clique)
            v = max(sorted(cand), key=gain)
            clique.add(v)
            cand = (cand & u.neighbors(v)) - {v}
        for e in combinations(sorted(clique), 2):
            uncovered.discard(e)
        out.append(frozenset(clique))
    return CliqueCover(tuple(out))


def randomized_cover_rounds(n: int, d: int) -> int:
    if n <= 1:
        return 0
    return math.floor(4 * math.e ** 2 * (d + 1) ** 2 * math.log(n))


def edge_clique_cover_randomized(g: Dmg, seed=None) -> CliqueCover:
    """Random cover of the component graph of ``g``.

    Each round samples ``W`` with inclusion probability ``1/(d+1)`` and keeps the
    nodes of ``W`` with no skeleton neighbour in ``W``. The kept set is
    independent in the skeleton, hence a clique of the component graph. A fixed
    non-adjacent pair survives a round with probability at least
    ``1/(e^2 (d+1)^2)``. The cover lists the distinct kept sets of size two or
    more; ``rounds`` records how many rounds were drawn.
    """
    u = directed_skeleton(g)
    d = u.max_degree
    rounds = randomized_cover_rounds(g.n, d)
    rng = np.random.default_rng(seed)
    w = rng.random((rounds, g.n)) < 1.0 / (d + 1)
    adj = np.zeros((g.n, g.n), dtype=np.int64)
    for a, b in u.edges:
        adj[a, b] = adj[b, a] = 1
    kept = w & ((w.astype(np.int64) @ adj) == 0)
    out, seen = [], set()
    for row in kept:
        c = frozenset(np.flatnonzero(row).tolist())
        if len(c) >= 2 and c not in seen:
            seen.add(c)
            out.append(c)
    return CliqueCover(tuple(out), rounds=rounds)


# strong edge colourings

def _edges_conflict(u: UGraph, e, f) -> bool:
    if set(e) & set(f):
        return True
    return any(u.has_edge(a, b) for a in e for b in f)


def _conflict_masks(u: UGraph, edges: list) -> list:
    return [sum(1 << j for j, f in enumerate(edges) if j != i and _edges_conflict(u, e, f))
            for i, e in enumerate(edges)]


def strong_edge_coloring_greedy(u: UGraph) -> StrongEdgeColoring:
    """Colour edges in sorted order with the smallest colour free within distance one."""
    edges = u.sorted_edges()
    conflicts = _conflict_masks(u, edges)
    colors = []
    for i in range(len(edges)):
        used = {colors[j] for j in range(i) if conflicts[i] >> j & 1}
        c = 0
        while c in used:
            c += 1
        colors.append(c)
    d = u.max_degree
    k = max(colors, default=-1) + 1
    assert k <= 2 * d * d, "greedy strong edge colouring exceeded 2d^2 classes"
    return _classes_from(edges, colors)


def strong_edge_coloring_exact(u: UGraph, max_edges: int = 60) -> StrongEdgeColoring:
    """Minimum strong edge colouring by DSATUR branch and bound on the conflict graph."""
    edges = u.sorted_edges()
    if len(edges) > max_edges:
        raise InstanceTooLarge(f"exact strong edge colouring limited to {max_edges} edges")
    return _classes_from(edges, _dsatur_exact(_conflict_masks(u, edges)))


def _classes_from(edges: list, colors: list) -> StrongEdgeColoring:
    k = max(colors, default=-1) + 1
    classes = [[] for _ in range(k)]
    for e, c in zip(edges, colors):
        classes[c].append(e)
    # order classes by their first edge so the result is canonical
    classes.sort()
    return StrongEdgeColoring(tuple(tuple(c) for c in classes))
