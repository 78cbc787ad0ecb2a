"""How often one draw of the randomized clique cover is complete.

Each draw runs ``floor(4 e^2 (d+1)^2 ln n)`` rounds; the chance of missing a
pair is at most ``1/n^2``.
"""
import numpy as np

from dmgdesign.benchgen import GenSpec, random_dmg
from dmgdesign.covers import edge_clique_cover_randomized
from dmgdesign.graph import component_graph, directed_skeleton

trials = 300
for n in (4, 6, 8, 10):
    g = random_dmg(GenSpec(n, 0.3, 0.0, seed=n))
    uc = component_graph(g)
    hits = [not edge_clique_cover_randomized(g, seed=s).uncovered(uc) for s in range(trials)]
    d = directed_skeleton(g).max_degree
    rounds = edge_clique_cover_randomized(g, seed=0).rounds
    print(f"n={n:2} d={d} rounds={rounds:5}  complete in {np.mean(hits):.3f} of draws "
          f"(guarantee {1 - 1 / n ** 2:.3f})")
