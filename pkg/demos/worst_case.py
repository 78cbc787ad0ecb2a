"""Layered graphs on which the SCC-Anc stage cannot do better.

Every SCC is complete and fully confounded, and each layer points into all
later layers. The directed stage then needs one experiment per unit of
``sum(zeta)``, the sum over layers of the largest SCC size.
"""
from dmgdesign.benchgen import lower_bound_quantities, worst_case_layered
from dmgdesign.oracle import InterventionalOracle
from dmgdesign.pipeline import PipelineConfig, discover

for layers in ([[1], [2]], [[1], [3, 2]], [[2], [1, 1], [3]], [[1], [2], [2], [4]]):
    g = worst_case_layered(layers)
    q = lower_bound_quantities(g)
    oracle = InterventionalOracle(g)
    floor = oracle.bounded_floor()
    free = discover(InterventionalOracle(g)).stages["1.2"].count
    capped = discover(InterventionalOracle(g), PipelineConfig(bound=floor)).stages["1.2"]
    print(f"{str(layers):28} n={g.n:2}  sum_zeta={q['sum_zeta']:2}  unbounded={free:2}  "
          f"M={floor:2} -> {capped.count:2} (limit {capped.bound})")
