"""
d-separation and sigma-separation in directed mixed graphs.

Both criteria are decided by reachability over walk states. A state is a
node together with the mark of the edge we arrived on. Three marks are
needed: an arrowhead, a tail whose other end lies in the node's SCC, and a
tail leaving the SCC. The last distinction only matters for sigma-separation,
where a conditioned non-collider does not block when all of its tail edges on
the walk stay inside its own strongly connected component.

A collider is open iff it is an ancestor of ``Z | {X, Y}``. That set does not
depend on the walk, so it is computed once per query and the search is a
plain graph traversal.

``brute_force_separated`` enumerates simple paths and applies the blocking
clauses literally. It shares no code with the fast search and is meant as a
reference for tests.
"""
from __future__ import annotations

import enum
from itertools import combinations
from typing import Iterable

from .graph import Dmg, UGraph


class Scenario(enum.Enum):
    DSEP = "d"
    SIGMA = "sigma"

    @classmethod
    def coerce(cls, value) -> "Scenario":
        if isinstance(value, cls):
            return value
        return cls(value)


_HEAD, _TAIL_IN, _TAIL_OUT = 0, 1, 2


def _arrival(g: Dmg, w: int, v: int, head_w: bool) -> int:
    # mark at w of an edge between v and w
    if head_w:
        return _HEAD
    return _TAIL_IN if g.scc_id[w] == g.scc_id[v] else _TAIL_OUT


def _check_query(g: Dmg, x: int, y: int, z: frozenset):
    if x == y:
        raise ValueError("X and Y must differ")
    for v in (x, y, *z):
        if not 0 <= v < g.n:
            raise ValueError(f"node {v} not in graph")
    if x in z or y in z:
        raise ValueError("X and Y must not be in the conditioning set")


def is_r_separated(g: Dmg, x: int, y: int, z: Iterable[int] = (),
                   scenario=Scenario.SIGMA) -> bool:
    """Return True if every path between ``x`` and ``y`` is blocked by ``z``.

    Parameters
    ----------
    g : Dmg
        Graph in which separation is evaluated.
    x, y : int
        Distinct endpoint nodes.
    z : iterable of int
        Conditioning set, disjoint from ``{x, y}``.
    scenario : Scenario or str
        ``"d"`` for d-separation, ``"sigma"`` for sigma-separation.

    Returns
    -------
    bool
    """
    z = frozenset(z)
    _check_query(g, x, y, z)
    sigma = Scenario.coerce(scenario) is Scenario.SIGMA
    anc = g.ancestors_of(z | {x, y})
    scc = g.scc_id
    inc = g.incidence

    seen = set()
    stack = []
    for w, _, head_w in inc[x]:
        if w == y:
            return False
        s = (w, _arrival(g, w, x, head_w))
        if s not in seen:
            seen.add(s)
            stack.append(s)
    while stack:
        v, mark = stack.pop()
        in_z = v in z
        for w, head_v, head_w in inc[v]:
            if w == x:
                continue
            if mark == _HEAD and head_v:
                ok = v in anc
            elif not in_z:
                ok = True
            elif sigma:
                ok = mark != _TAIL_OUT and (head_v or scc[w] == scc[v])
            else:
                ok = False
            if not ok:
                continue
            if w == y:
                return False
            s = (w, _arrival(g, w, v, head_w))
            if s not in seen:
                seen.add(s)
                stack.append(s)
    return True


def has_inducing_path(g: Dmg, x: int, y: int, scenario=Scenario.SIGMA) -> bool:
    """Return True if an inducing path joins ``x`` and ``y``.

    Under d-separation every interior vertex must be a collider in
    ``Anc({x, y})``. Under sigma-separation colliders must lie in
    ``Anc({x, y})`` and non-colliders may only leave along tail edges that stay
    inside their SCC. In both cases such a path is open given any conditioning
    set, and its existence is equivalent to ``x`` and ``y`` being inseparable.
    """
    if x == y:
        raise ValueError("X and Y must differ")
    sigma = Scenario.coerce(scenario) is Scenario.SIGMA
    anc = g.ancestors_of((x, y))
    scc = g.scc_id
    inc = g.incidence

    seen = set()
    stack = []
    for w, _, head_w in inc[x]:
        if w == y:
            return True
        s = (w, _arrival(g, w, x, head_w))
        if s not in seen:
            seen.add(s)
            stack.append(s)
    while stack:
        v, mark = stack.pop()
        for w, head_v, head_w in inc[v]:
            if w == x:
                continue
            if mark == _HEAD and head_v:
                ok = v in anc
            elif sigma:
                ok = mark != _TAIL_OUT and (head_v or scc[w] == scc[v])
            else:
                ok = False
            if not ok:
                continue
            if w == y:
                return True
            s = (w, _arrival(g, w, v, head_w))
            if s not in seen:
                seen.add(s)
                stack.append(s)
    return False


def observational_graph(g: Dmg, scenario=Scenario.SIGMA) -> UGraph:
    """Undirected graph joining every pair that no set separates."""
    return UGraph(g.n, frozenset(
        (u, v) for u, v in combinations(range(g.n), 2)
        if has_inducing_path(g, u, v, scenario)))


# reference oracle

class InstanceTooLarge(ValueError):
    pass


def _closure_ancestors(g: Dmg, nodes) -> set:
    # fixpoint over the edge list, independent of the cached adjacency
    anc = set(nodes)
    changed = True
    while changed:
        changed = False
        for u, v in g.directed:
            if v in anc and u not in anc:
                anc.add(u)
                changed = True
    return anc


def _mutual_scc(g: Dmg):
    reach = [[i == j for j in range(g.n)] for i in range(g.n)]
    for u, v in g.directed:
        reach[u][v] = True
    for k in range(g.n):
        for i in range(g.n):
            if reach[i][k]:
                for j in range(g.n):
                    if reach[k][j]:
                        reach[i][j] = True
    return [frozenset(j for j in range(g.n) if reach[i][j] and reach[j][i])
            for i in range(g.n)]


def brute_force_separated(g: Dmg, x: int, y: int, z: Iterable[int] = (),
                          scenario=Scenario.SIGMA, max_nodes: int = 7) -> bool:
    """Separation by enumeration of simple paths.

    Edges are labelled ``("d", a, b)`` for ``a -> b`` and ``("b", a, b)`` for a
    bidirected edge. Prefixes whose last interior vertex is already blocked are
    pruned, which does not change the answer.
    """
    if g.n > max_nodes:
        raise InstanceTooLarge(f"brute force limited to {max_nodes} nodes, got {g.n}")
    z = frozenset(z)
    _check_query(g, x, y, z)
    sigma = Scenario.coerce(scenario) is Scenario.SIGMA
    anc = _closure_ancestors(g, z | {x, y})
    scc = _mutual_scc(g)

    edges_at = {v: [] for v in range(g.n)}
    for a, b in g.directed:
        edges_at[a].append((b, ("d", a, b)))
        edges_at[b].append((a, ("d", a, b)))
    for a, b in g.bidirected:
        edges_at[a].append((b, ("b", a, b)))
        edges_at[b].append((a, ("b", a, b)))

    def head_at(edge, v):
        return edge[0] == "b" or edge[2] == v

    def blocked(prev, e_prev, v, e_next, nxt):
        collider = head_at(e_prev, v) and head_at(e_next, v)
        if collider:
            return v not in anc
        if v not in z:
            return False
        if not sigma:
            return True
        out_next = e_next == ("d", v, nxt) and nxt not in scc[v]
        out_prev = e_prev == ("d", v, prev) and prev not in scc[v]
        return out_next or out_prev

    def extend(path, edges, visited):
        v = path[-1]
        for w, e in edges_at[v]:
            if w in visited:
                continue
            if len(path) >= 2 and blocked(path[-2], edges[-1], v, e, w):
                continue
            if w == y:
                return True
            visited.add(w)
            path.append(w)
            edges.append(e)
            found = extend(path, edges, visited)
            path.pop()
            edges.pop()
            visited.discard(w)
            if found:
                return True
        return False

    return not extend([x], [], {x})


def brute_force_inseparable(g: Dmg, x: int, y: int, scenario=Scenario.SIGMA,
                            max_nodes: int = 7) -> bool:
    """True if no subset of the remaining nodes separates ``x`` and ``y``."""
    rest = [v for v in range(g.n) if v not in (x, y)]
    for r in range(len(rest) + 1):
        for z in combinations(rest, r):
            if brute_force_separated(g, x, y, z, scenario, max_nodes):
                return False
    return True
