"""Small hand-built graphs reused across test modules (0-indexed, X1 is node 0)."""
from dmgdesign.graph import Dmg

# X1 -> X2 <-> X3, X3 -> X4 -> X3 as a two-cycle, X4 -> X5
CHAIN_CYCLE = Dmg(5, frozenset({(0, 1), (2, 3), (3, 2), (3, 4)}), frozenset({(1, 2)}))

# X1 -> X3 <-> X2 with X3 -> X2, so X3 is an ancestor of X2
INDUCING3 = Dmg(3, frozenset({(0, 2), (2, 1)}), frozenset({(1, 2)}))

# cycle X3 <-> X4, X5 -> X4, X2 -> X4, X3 -> X2, confounder X1 <-> X3
INDUCING5 = Dmg(5, frozenset({(3, 2), (2, 3), (4, 3), (1, 3), (2, 1)}), frozenset({(0, 2)}))

# root SCC {X1,X2}; X3 below it; X4 and the 3-cycle {X5,X6,X7} below X3
LAYERED7 = Dmg(7, frozenset({(0, 1), (1, 0), (0, 2), (2, 3), (2, 4),
                        (4, 5), (5, 6), (6, 4)}))

# directed part consistent with the component-graph cliques
# {X1,X6}, {X1,X5}, {X2,X5}, {X2,X3,X4,X6}
CLIQUES6 = Dmg(6, frozenset({(0, 1), (0, 2), (0, 3), (2, 4), (3, 4), (4, 3), (4, 5)}))
