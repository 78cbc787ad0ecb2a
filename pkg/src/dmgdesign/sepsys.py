"""
Separating systems: families of intervention sets with a covering property.

Five kinds are built here.

colored
    For every ordered pair of differently coloured nodes some set holds the
    first and not the second.
nm
    The same for every ordered pair of nodes, with every set of size at most M.
scc_anc
    For every node X of an SCC S in layer k, some set contains every earlier
    layer and ``S - {X}`` but not X.
non_adjacent
    For every pair X, Y joined by no directed edge, some set contains
    ``Pa({X, Y})`` and neither X nor Y.
adjacent
    For every edge ``X -> Y`` without ``Y -> X``, one set contains
    ``Pa({X, Y}) - {X, Y}`` and avoids X and Y, and another contains
    ``Pa({X, Y}) - {Y}`` and X but not Y.

Each kind has an unbounded construction and, where it applies, a variant
that keeps every set within a size bound ``M``. The ``*_limit`` functions give
the guaranteed counts for the bounded variants, and the ``is_*`` predicates
check the defining properties by enumeration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, permutations

from .covers import CliqueCover, Coloring, StrongEdgeColoring
from .graph import Dmg, SccAncPartition, directed_skeleton


class InfeasibleBound(ValueError):
    pass


@dataclass(frozen=True)
class SeparatingSystem:
    kind: str
    sets: tuple
    pairs: tuple = ()
    bound: int | None = None

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    @property
    def max_size(self) -> int:
        return max((len(s) for s in self.sets), default=0)

    def find(self, include, exclude=()):
        """First member containing ``include`` and disjoint from ``exclude``."""
        inc, exc = frozenset(include), frozenset(exclude)
        for s in self.sets:
            if inc <= s and not (exc & s):
                return s
        return None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "M": self.bound,
            "sets": [sorted(s) for s in self.sets],
            "pairs": [[sorted(a), sorted(b)] for a, b in self.pairs],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SeparatingSystem":
        return cls(
            kind=data["kind"],
            sets=tuple(frozenset(s) for s in data["sets"]),
            pairs=tuple((frozenset(a), frozenset(b)) for a, b in data.get("pairs", [])),
            bound=data.get("M"),
        )


def _check_bound(sets, m):
    for s in sets:
        if len(s) > m:
            raise InfeasibleBound(f"set of size {len(s)} exceeds bound {m}")


# colored and (n, M)

def colored_separating_system(coloring: Coloring, n: int) -> SeparatingSystem:
    """Two sets per bit of a binary code over the colours."""
    if len(coloring.colors) != n:
        raise ValueError("colouring does not match node count")
    chi = coloring.num_colors
    bits = (chi - 1).bit_length() if chi > 0 else 0
    sets = []
    for b in range(bits):
        zeros = frozenset(x for x in range(n) if not coloring.colors[x] >> b & 1)
        ones = frozenset(x for x in range(n) if coloring.colors[x] >> b & 1)
        sets += [s for s in (zeros, ones) if s]
    return SeparatingSystem("colored", tuple(sets))


def colored_limit(chi: int) -> int:
    return 2 * math.ceil(math.log2(chi)) if chi > 1 else 0


def _nm_base(n: int, m: int):
    a = max(2, -(-n // m))
    digits = 0
    while a ** digits < n:
        digits += 1
    return a, digits


def nm_separating_system(n: int, m: int) -> SeparatingSystem:
    """Separating system on ``n`` nodes whose sets have at most ``m`` nodes.

    Nodes get distinct base-``a`` codewords with ``a = ceil(n/m)``; there is one
    set per (digit position, digit value). Node ``j`` is written in base ``a``;
    a digit position other than the last is shifted by the last digit whenever
    the plain digits would put more than ``ceil(n/a)`` nodes on one value. The
    shift keeps codewords distinct and spreads each value evenly.
    """
    if n < 1 or m < 1:
        raise ValueError(f"need n >= 1 and M >= 1, got n={n}, M={m}")
    a, digits = _nm_base(n, m)
    cap = -(-n // a)
    sets = []
    for i in reversed(range(digits)):
        plain = [(j // a ** i) % a for j in range(n)]
        if i > 0 and max(plain.count(v) for v in range(a)) > cap:
            plain = [(plain[j] + j % a) % a for j in range(n)]
        for v in reversed(range(a)):
            s = frozenset(j for j in range(n) if plain[j] == v)
            if s:
                sets.append(s)
    _check_bound(sets, m)
    return SeparatingSystem("nm", tuple(sets), bound=m)


def nm_limit(n: int, m: int) -> int:
    a, digits = _nm_base(n, m)
    return a * digits


# SCC-Anc

def _per_index_sets(prefix: frozenset, sccs) -> list:
    width = max((len(s) for s in sccs), default=1)
    out = []
    for i in range(width):
        s = set(prefix)
        for scc in sccs:
            if len(scc) > i:
                s.update(scc)
                s.discard(scc[i])
        out.append(frozenset(s))
    return out


def scc_anc_separating_system(p: SccAncPartition) -> SeparatingSystem:
    """One set per layer ``k`` and index ``i <= zeta_k``.

    ``I_{k,i}`` is every node of the earlier layers together with each SCC of
    layer ``k`` that has at least ``i`` nodes, minus its ``i``-th node
    (ascending ids).
    """
    sets = []
    for k in range(1, p.top + 1):
        sets += _per_index_sets(p.prefix(k), p.layer(k))
    return SeparatingSystem("scc_anc", tuple(sets))


def scc_anc_floor(p: SccAncPartition) -> int:
    return p.prefix_size(p.top) + p.zeta(p.top) - 1


def scc_anc_separating_system_bounded(p: SccAncPartition, m: int, n: int | None = None) -> SeparatingSystem:
    """SCC-Anc system with every set of size at most ``m``.

    Layers below the top are built as in the unbounded case. The SCCs of the
    top layer are split into groups by first-fit decreasing, where an SCC of
    size ``s`` weighs ``s - 1`` (the nodes it adds to a set) and a group may
    weigh at most ``m - |T|``, ``T`` being the union of the lower layers. Each
    group gets its own per-index sets on top of ``T``.
    """
    if n is not None and n != p.n:
        raise ValueError("partition does not match node count")
    if m < scc_anc_floor(p):
        raise InfeasibleBound(f"M={m} below the SCC-Anc floor {scc_anc_floor(p)}")
    sets = []
    for k in range(1, p.top):
        sets += _per_index_sets(p.prefix(k), p.layer(k))
    prefix = p.prefix(p.top)
    cap = m - len(prefix)
    heavy = sorted((s for s in p.layer(p.top) if len(s) > 1), key=lambda s: (-len(s), s))
    groups, loads = [], []
    for s in heavy:
        for g, load in enumerate(loads):
            if load + len(s) - 1 <= cap:
                groups[g].append(s)
                loads[g] += len(s) - 1
                break
        else:
            groups.append([s])
            loads.append(len(s) - 1)
    for group in groups or [[]]:
        sets += _per_index_sets(prefix, sorted(group))
    _check_bound(sets, m)
    return SeparatingSystem("scc_anc", tuple(sets), bound=m)


def scc_anc_limit(p: SccAncPartition, m: int | None = None) -> int:
    """Guaranteed size of the SCC-Anc system, with or without a bound ``m``.

    The bounded term's numerator is clamped at zero: when the top layer is a
    single SCC it would otherwise go negative.
    """
    total = sum(p.zetas)
    if m is None:
        return total
    t, z = p.prefix_size(p.top), p.zeta(p.top)
    num = max(0, p.n - t - z - 1)
    return total + z * (num // (m - t - z + 2))


# non-adjacent

def _check_independent(g: Dmg, clique):
    for a, b in combinations(sorted(clique), 2):
        if g.adjacent(a, b):
            raise ValueError(f"clique member pair ({a}, {b}) is joined by a directed edge")


def nonadjacent_separating_system(g: Dmg, cover: CliqueCover) -> SeparatingSystem:
    """One set per clique: the parents of its members."""
    sets = []
    for c in cover.cliques:
        _check_independent(g, c)
        sets.append(g.parents_of(c))
    return SeparatingSystem("non_adjacent", tuple(sets))


def nonadjacent_floor(g: Dmg) -> int:
    return max((len(g.parents_of(p)) for p in combinations(range(g.n), 2)
                if not g.adjacent(*p)), default=0)


def nonadjacent_separating_system_bounded(g: Dmg, cover: CliqueCover, m: int) -> SeparatingSystem:
    """Split each clique's pairs into bins whose joint parent set fits in ``m``."""
    sets = []
    for c in cover.cliques:
        _check_independent(g, c)
        bins = []
        for pair in combinations(sorted(c), 2):
            pa = g.parents_of(pair)
            if len(pa) > m:
                raise InfeasibleBound(f"Pa({set(pair)}) has {len(pa)} nodes, above M={m}")
            for k, b in enumerate(bins):
                if len(b | pa) <= m:
                    bins[k] = b | pa
                    break
            else:
                bins.append(pa)
        sets += bins
    return SeparatingSystem("non_adjacent", tuple(sets), bound=m)


def nonadjacent_limit(g: Dmg, cover: CliqueCover, m: int | None = None) -> int:
    if m is None:
        return len(cover)
    total = 0
    for c in cover.cliques:
        k = len(c)
        if k < 2:
            continue
        worst = max(len(g.parents_of(p)) for p in combinations(c, 2))
        total += 1 + ((k * (k - 1) // 2 - 1) * (g.n - k)) // (m + 1 - worst)
    return total


# adjacent

def edge_tail(g: Dmg, edge) -> int:
    """Source of a skeleton edge; the smaller id when both directions exist."""
    a, b = sorted(edge)
    return a if g.has_directed(a, b) else b


def _pair_for(g: Dmg, edges) -> tuple:
    ends = frozenset(x for e in edges for x in e)
    tails = frozenset(edge_tail(g, e) for e in edges)
    base = g.parents_of(ends) - ends
    return base, base | tails


def adjacent_separating_system(g: Dmg, sec: StrongEdgeColoring) -> SeparatingSystem:
    """One ``(I, I')`` pair per colour class of a strong edge colouring."""
    if not sec.is_valid(directed_skeleton(g)):
        raise ValueError("not a strong edge colouring of the directed skeleton")
    pairs = tuple(_pair_for(g, cls) for cls in sec.classes)
    return SeparatingSystem("adjacent", tuple(s for p in pairs for s in p), pairs)


def adjacent_floor(g: Dmg) -> int:
    return max((len(g.parents_of(e)) for e in directed_skeleton(g).edges), default=0)


def adjacent_separating_system_bounded(g: Dmg, sec: StrongEdgeColoring, m: int) -> SeparatingSystem:
    """First-fit each class's edges into bins whose second set fits in ``m``."""
    if not sec.is_valid(directed_skeleton(g)):
        raise ValueError("not a strong edge colouring of the directed skeleton")
    pairs = []
    for cls in sec.classes:
        bins = []
        for e in cls:
            if len(_pair_for(g, [e])[1]) > m:
                raise InfeasibleBound(f"edge {e} needs a set larger than M={m}")
            for b in bins:
                if len(_pair_for(g, b + [e])[1]) <= m:
                    b.append(e)
                    break
            else:
                bins.append([e])
        pairs += [_pair_for(g, b) for b in bins]
    sets = tuple(s for p in pairs for s in p)
    _check_bound(sets, m)
    return SeparatingSystem("adjacent", sets, tuple(pairs), bound=m)


def adjacent_limit(g: Dmg, sec: StrongEdgeColoring, m: int | None = None) -> int:
    if m is None:
        return 2 * len(sec)
    total = 0
    for cls in sec.classes:
        k = len(cls)
        worst = max(len(g.parents_of(e)) for e in cls)
        total += 1 + ((k - 1) * (g.n - 2 * k)) // (m + 1 - worst)
    return 2 * total


# defining properties, checked by enumeration

def separates(system, x: int, y: int) -> bool:
    return any(x in s and y not in s for s in system)


def is_colored_separating(system, coloring: Coloring) -> bool:
    n = len(coloring.colors)
    return all(separates(system, x, y) for x, y in permutations(range(n), 2)
               if coloring.colors[x] != coloring.colors[y])


def is_nm_separating(system, n: int, m: int | None = None) -> bool:
    if m is not None and any(len(s) > m for s in system):
        return False
    return all(separates(system, x, y) for x, y in permutations(range(n), 2))


def is_scc_anc_separating(system, p: SccAncPartition) -> bool:
    for k, scc in p.sccs():
        t = p.prefix(k)
        for x in scc:
            need = t | (frozenset(scc) - {x})
            if not any(need <= s and x not in s for s in system):
                return False
    return True


def is_nonadjacent_separating(system, g: Dmg, pairs=None) -> bool:
    if pairs is None:
        pairs = [p for p in combinations(range(g.n), 2) if not g.adjacent(*p)]
    for x, y in pairs:
        pa = g.parents_of((x, y))
        if not any(pa <= s and x not in s and y not in s for s in system):
            return False
    return True


def adjacent_witness(system, g: Dmg, x: int, y: int):
    """Sets ``(I, I')`` serving the edge ``x -> y``, or None."""
    pa = g.parents_of((x, y))
    first = [s for s in system if pa - {x, y} <= s and x not in s and y not in s]
    second = [s for s in system if pa - {y} <= s and x in s and y not in s]
    if first and second:
        return first[0], second[0]
    return None


def is_adjacent_separating(system, g: Dmg) -> bool:
    return all(adjacent_witness(system, g, x, y) is not None
               for x, y in sorted(g.directed) if not g.has_directed(y, x))
