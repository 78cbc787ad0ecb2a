import json
import threading

import pytest

from dmgdesign.benchgen import worst_case_layered
from dmgdesign.graph import Dmg
from dmgdesign.oracle import (STAGES, DoSeePreconditionError, ExperimentLog,
                              InterventionalOracle, UnregisteredExperiment)
from dmgdesign.pipeline import discover

from fixtures import INDUCING3, LAYERED7


class TestExperimentLog:
    def test_empty_set_registered_twice(self):
        log = ExperimentLog()
        log.register((), "0")
        log.register([], "0")
        assert log.count("0") == 1

    def test_set_semantics(self):
        log = ExperimentLog()
        log.register([0, 1], "1.1")
        log.register([1, 0], "1.1")
        assert log.experiments("1.1") == [frozenset({0, 1})]

    def test_counts_are_per_stage(self):
        log = ExperimentLog()
        log.register([0], "1.1")
        log.register([0], "1.2")
        log.register([1, 2], "1.2")
        assert (log.count("1.1"), log.count("1.2"), log.count("2.1")) == (1, 2, 0)
        assert log.max_size("1.2") == 2 and log.max_size() == 2
        assert log.stages == ["1.1", "1.2"]

    def test_json(self):
        log = ExperimentLog()
        log.register([2, 0], "2.1")
        log.record_query(frozenset({0, 2}))
        doc = json.loads(log.to_json())
        assert doc == {"2.1": {"experiments": [[0, 2]], "count": 1, "max_size": 2, "queries": 1}}

    def test_concurrent_registration(self):
        log = ExperimentLog()

        def worker():
            for i in range(200):
                log.register([i % 10], "1.1")

        threads = [threading.Thread(target=worker) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert log.count("1.1") == 10


class TestCiQuery:
    def test_isolated_node_independent(self):
        o = InterventionalOracle(Dmg(3, frozenset({(1, 2)})))
        o.register_experiment((), "0")
        assert o.ci_query((), 0, 1) is False

    def test_intervened_parent_dependent(self):
        o = InterventionalOracle(Dmg(2, frozenset({(0, 1)})))
        o.register_experiment({0}, "1.1")
        assert o.ci_query({0}, 0, 1) is True

    def test_intervention_cuts_confounding(self):
        g = Dmg(2, frozenset(), frozenset({(0, 1)}))
        o = InterventionalOracle(g, "d")
        o.register_experiment((), "0")
        o.register_experiment({1}, "2.1")
        assert o.ci_query((), 0, 1)
        assert not o.ci_query({1}, 0, 1)
        assert o.log.queries({1}) == 1

    def test_unregistered(self):
        o = InterventionalOracle(Dmg(2))
        with pytest.raises(UnregisteredExperiment):
            o.ci_query({0}, 0, 1)

    def test_bad_target(self):
        o = InterventionalOracle(Dmg(2))
        with pytest.raises(ValueError):
            o.register_experiment({5}, "1.1")


class TestDoSee:
    def _oracle(self, g):
        o = InterventionalOracle(g)
        o.register_experiment((), "2.2")
        o.register_experiment({0}, "2.2")
        return o

    def test_plain_edge(self):
        assert self._oracle(Dmg(2, frozenset({(0, 1)}))).do_see_query((), {0}, 0, 1) is False

    def test_confounded_edge(self):
        g = Dmg(2, frozenset({(0, 1)}), frozenset({(0, 1)}))
        assert self._oracle(g).do_see_query((), {0}, 0, 1) is True

    @pytest.mark.parametrize("bidirected", [frozenset(), frozenset({(0, 1)})])
    def test_two_cycle_always_differs(self, bidirected):
        g = Dmg(2, frozenset({(0, 1), (1, 0)}), bidirected)
        o = InterventionalOracle(g)
        o.register_experiment((), "2.2")
        o.register_experiment({0}, "2.2")
        # Pa({0,1}) = {0,1}, so the two sets are {} and {0}
        assert o.do_see_query((), {0}, 0, 1) is True

    def test_preconditions(self):
        g = Dmg(3, frozenset({(0, 1), (2, 1)}))
        o = InterventionalOracle(g)
        for t in [(), {2}, {0}, {0, 2}, {0, 1, 2}]:
            o.register_experiment(t, "2.2")
        assert o.do_see_query({2}, {0, 2}, 0, 1) is False
        with pytest.raises(DoSeePreconditionError):
            o.do_see_query((), {0, 2}, 0, 1)       # parent 2 missing from the first set
        with pytest.raises(DoSeePreconditionError):
            o.do_see_query({2}, {2}, 0, 1)         # x missing from the second set
        with pytest.raises(DoSeePreconditionError):
            o.do_see_query({2}, {0, 1, 2}, 0, 1)   # y inside the second set
        with pytest.raises(DoSeePreconditionError):
            o.do_see_query({2}, {0, 2}, 1, 0)      # not an edge in that direction
        with pytest.raises(UnregisteredExperiment):
            o.do_see_query({1}, {0, 2}, 0, 1)


class TestObservationalAndFloor:
    def test_edgeless(self):
        o = InterventionalOracle(Dmg(4))
        assert o.observational_graph().edges == frozenset()
        assert o.bounded_floor() == 0
        assert not o.m_feasible(0) and o.m_feasible(1)

    def test_inducing_edge_outside_skeleton(self):
        assert InterventionalOracle(INDUCING3).observational_graph().has_edge(0, 1)

    def test_floor_layered7(self):
        o = InterventionalOracle(LAYERED7)
        # |T_3| + zeta_3 - 1 = 3 + 3 - 1 dominates every joint parent set here
        assert o.bounded_floor() == 5
        assert o.m_feasible(5) and not o.m_feasible(4)

    def test_floor_counts_joint_parents(self):
        g = Dmg(5, frozenset({(0, 3), (1, 3), (2, 4)}))
        assert InterventionalOracle(g).bounded_floor() == 3

    def test_worst_case_floor(self):
        g = worst_case_layered([[1], [2, 1]])
        # the top 2-cycle {1,2} has joint parents {0,1,2}, above |T| + zeta - 1 = 2
        assert InterventionalOracle(g).bounded_floor() == 3


def test_full_run_partitions_log_by_stage():
    g = Dmg(5, frozenset({(0, 1), (1, 2), (2, 1), (3, 4)}), frozenset({(0, 3), (2, 4)}))
    o = InterventionalOracle(g)
    discover(o)
    assert o.log.stages == list(STAGES)
    assert o.log.experiments("0") == [frozenset()]
    for s in STAGES:
        assert len(set(o.log.experiments(s))) == o.log.count(s)
