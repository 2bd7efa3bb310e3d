"""Cut-generation lower bound: separation, certificates, bound values."""

from fractions import Fraction

import pytest

from hopnet.errors import InfeasibleInstanceError
from hopnet.exact import exact_optimum
from hopnet.greedy import check_feasibility, smart_select
from hopnet.lpbound import (
    augment,
    certificate_to_dict,
    is_node_cut,
    lp_lower_bound,
    min_vertex_cut,
    separate,
)
from hopnet.rng import SplitMix64

from helpers import chain4, mk, random_tiny
from oracles import vertex_cut_minimum


def t1():
    return mk("qb", [(0, 1)], h_max=1)


class TestAugment:
    def test_virtual_sink_wiring(self):
        aug = augment(t1())
        assert aug.virtual_sink == 2
        assert aug.edges == {(0, 1), (1, 2)}
        assert aug.pool == (1,)
        assert aug.costs == {1: Fraction(10)}
        assert aug.edge_budget == 2

    def test_chain(self):
        aug = augment(chain4())
        assert aug.virtual_sink == 4
        assert (3, 4) in aug.edges
        assert aug.pool == (1, 2, 3)
        assert aug.costs[1] == 1 and aug.costs[3] == 10


class TestSeparation:
    def test_zero_weights_cut_first_layer(self):
        aug = augment(chain4())
        found = separate(aug, 0, {})
        assert found is not None and found.cut == {1}

    def test_cut_moves_past_paid_node(self):
        aug = augment(chain4())
        found = separate(aug, 0, {1: 1.0})
        assert found is not None and found.cut == {2}

    def test_saturated_weights_have_no_violation(self):
        aug = augment(chain4())
        assert separate(aug, 0, {1: 1.0, 2: 1.0, 3: 1.0}) is None

    def test_cut_weight_matches_enumeration(self):
        rng = SplitMix64(2024)
        checked = 0
        for seed in range(25):
            inst = random_tiny(seed)
            aug = augment(inst)
            weights = {j: rng.random() for j in range(inst.n)}
            for k in inst.sources:
                got_w, got_cut = min_vertex_cut(aug, k, weights)
                ref_w, _ = vertex_cut_minimum(
                    aug.graph.n, aug.edges, k, aug.virtual_sink, weights
                )
                assert got_w == pytest.approx(ref_w, abs=1e-9)
                assert is_node_cut(aug, k, got_cut)
                assert sum(weights.get(j, 0.0) for j in got_cut) == pytest.approx(
                    got_w, abs=1e-9
                )
                checked += 1
        assert checked >= 20


class TestLowerBound:
    def test_single_edge_instance(self):
        cert = lp_lower_bound(t1())
        assert cert.bound == pytest.approx(10.0, abs=1e-6)

    def test_chain_counts_forced_relays(self):
        cert = lp_lower_bound(chain4())
        assert cert.bound == pytest.approx(12.0, abs=1e-6)
        assert not cert.early_stopped

    def test_infeasible_is_rejected(self):
        with pytest.raises(InfeasibleInstanceError) as err:
            lp_lower_bound(mk("qb", [], h_max=1))
        assert err.value.witness == 0

    def test_round_cap_flags_early_stop(self):
        cert = lp_lower_bound(chain4(), max_rounds=1)
        assert cert.early_stopped and cert.rounds == 1
        assert cert.bound == pytest.approx(10.0, abs=1e-6)  # seed cuts only

    def test_certificate_invariants(self):
        solved = 0
        for seed in range(30):
            inst = random_tiny(seed)
            if not check_feasibility(inst).feasible:
                continue
            cert = lp_lower_bound(inst)
            aug = augment(inst)
            assert not cert.early_stopped
            for lo, hi in zip(cert.bound_history, cert.bound_history[1:]):
                assert hi >= lo - 1e-9
            for con in cert.constraints:
                assert is_node_cut(aug, con.source, con.cut)
                mass = sum(cert.y_assignments[(con.source, j)] for j in con.cut)
                assert mass >= 1.0 - 1e-6
            for (k, j), val in cert.y_assignments.items():
                if j in cert.y_nodes:
                    assert val <= cert.y_nodes[j] + 1e-9
            for k in inst.sources:
                used = sum(v for (kk, _), v in cert.y_assignments.items() if kk == k)
                assert used <= inst.h_max + 1e-9
                weights = {j: cert.y_assignments[(k, j)] for j in range(inst.n) if j != k}
                assert separate(aug, k, weights) is None
            assert cert.bound <= float(exact_optimum(inst).cost) + 1e-6
            solved += 1
            if solved >= 8:
                break
        assert solved >= 8

    def test_integral_designs_hit_every_cut(self):
        for seed in range(20):
            inst = random_tiny(seed)
            if not check_feasibility(inst).feasible:
                continue
            design = smart_select(inst).design
            cert = lp_lower_bound(inst)
            for con in cert.constraints:
                used = set(design.routes[con.source].path[1:])
                assert used & con.cut, (seed, con)

    def test_certificate_dict_shape(self):
        cert = lp_lower_bound(chain4())
        doc = certificate_to_dict(cert)
        assert set(doc) == {"bound", "rounds", "constraints", "early_stopped"}
        assert doc["bound"] == pytest.approx(12.0, abs=1e-6)
        assert all(con["cut"] == sorted(con["cut"]) for con in doc["constraints"])
        assert doc["early_stopped"] is False
