"""Independent reference computations and instance corpora for the tests."""
from itertools import combinations

from hypothesis import strategies as st

from dmgdesign.benchgen import GenSpec, random_dmg
from dmgdesign.graph import Dmg


def closure_matrix(g):
    """Reflexive transitive closure of the directed part, Floyd-Warshall style."""
    r = [[i == j for j in range(g.n)] for i in range(g.n)]
    for u, v in g.directed:
        r[u][v] = True
    for k in range(g.n):
        for i in range(g.n):
            for j in range(g.n):
                r[i][j] = r[i][j] or (r[i][k] and r[k][j])
    return r


def brute_sccs(g):
    r = closure_matrix(g)
    comps = {frozenset(j for j in range(g.n) if r[i][j] and r[j][i]) for i in range(g.n)}
    return sorted(comps, key=min)


def brute_clique_cover_number(u):
    """Smallest number of cliques covering all edges, by increasing-size search."""
    edges = u.sorted_edges()
    if not edges:
        return 0
    cliques = [c for r in range(2, u.n + 1) for c in combinations(range(u.n), r)
               if all(u.has_edge(a, b) for a, b in combinations(c, 2))]
    for k in range(1, len(edges) + 1):
        for choice in combinations(cliques, k):
            if all(any(a in c and b in c for c in choice) for a, b in edges):
                return k
    raise AssertionError("unreachable")


def _conflict(u, e, f):
    return bool(set(e) & set(f)) or any(u.has_edge(a, b) for a in e for b in f)


def _min_colors(items, clash):
    """Fewest colours for ``items`` with ``clash(i, j)`` pairs apart, by plain backtracking."""
    m = len(items)
    if m == 0:
        return 0
    for k in range(1, m + 1):
        colors = [-1] * m

        def place(i):
            if i == m:
                return True
            # symmetry: item i may only open the next unused colour
            top = max(colors[:i], default=-1) + 1
            for c in range(min(k, top + 1)):
                if all(colors[j] != c for j in range(i) if clash(i, j)):
                    colors[i] = c
                    if place(i + 1):
                        return True
            colors[i] = -1
            return False

        if place(0):
            return k
    raise AssertionError("unreachable")


def brute_strong_chromatic_index(u):
    edges = u.sorted_edges()
    return _min_colors(edges, lambda i, j: _conflict(u, edges[i], edges[j]))


def brute_chromatic_number(u):
    return _min_colors(list(range(u.n)), lambda i, j: u.has_edge(i, j))


def corpus(count, n_range, seed0=0, p_dir=(0.15, 0.3, 0.45), p_bi=(0.1, 0.3), cycles=(0, 1)):
    """Deterministic mixed bag of random DMGs."""
    lo, hi = n_range
    out = []
    for i in range(count):
        n = lo + i % (hi - lo + 1)
        out.append(random_dmg(GenSpec(n, p_dir[i % len(p_dir)], p_bi[(i // 2) % len(p_bi)],
                                      cycles[(i // 3) % len(cycles)], seed=seed0 + i)))
    return out


def acyclic_corpus(count, n_range, seed0=0):
    """Random DMGs whose directed part only points from lower to higher ids."""
    out = []
    for g in corpus(count, n_range, seed0, cycles=(0,)):
        out.append(Dmg(g.n, frozenset((min(e), max(e)) for e in g.directed), g.bidirected))
    return out


@st.composite
def dmgs(draw, min_n=1, max_n=6, p_edge=None):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    directed = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    upairs = list(combinations(range(n), 2))
    bidirected = draw(st.sets(st.sampled_from(upairs), max_size=len(upairs))) if upairs else set()
    return Dmg(n, frozenset(directed), frozenset(bidirected))


def path_blocked(g, nodes, edges, z, scenario):
    """Blocking clauses applied to one explicit path.

    ``edges[i]`` joins ``nodes[i]`` and ``nodes[i+1]`` and is ``("d", a, b)`` for
    ``a -> b`` or ``("b", a, b)`` for a bidirected edge.
    """
    z = set(z)
    anc = {a for v in z | {nodes[0], nodes[-1]} for a in g.ancestors(v)}
    scc = {x: set(c) for c in brute_sccs(g) for x in c}

    def head_at(e, v):
        return e[0] == "b" or e[2] == v

    for i in range(1, len(nodes) - 1):
        v, before, after = nodes[i], edges[i - 1], edges[i]
        if head_at(before, v) and head_at(after, v):
            if v not in anc:
                return True
        elif v in z:
            if scenario == "d":
                return True
            leaves = (after == ("d", v, nodes[i + 1]) and nodes[i + 1] not in scc[v]) or \
                     (before == ("d", v, nodes[i - 1]) and nodes[i - 1] not in scc[v])
            if leaves:
                return True
    return False
