from fractions import Fraction

import pytest

from hopnet.errors import InfeasibleInstanceError
from hopnet.greedy import (
    check_feasibility,
    compute_covers,
    minimize_relays,
    single_sink_no_relay,
    smart_select,
)
from hopnet.model import validate
from hopnet.scenarios import generate_setcover_reduction

from helpers import chain4, mk, random_tiny, star5
from oracles import bfs_dist, greedy_set_cover, min_relay_count, serves


class TestSingleSink:
    def test_star_covered_by_one_sink(self):
        design = single_sink_no_relay(star5())
        assert design is not None
        assert design.sinks == {4} and design.relays == frozenset()
        assert design.cost == 10

    def test_lowest_qualifying_sink_wins(self):
        inst = mk("qbb", [(0, 1), (0, 2)], h_max=1)
        design = single_sink_no_relay(inst)
        assert design.sinks == {1}

    def test_relays_do_not_count(self):
        assert single_sink_no_relay(chain4()) is None

    def test_none_when_each_sink_covers_half(self):
        inst = mk("qqqqbb", [(0, 4), (1, 4), (2, 5), (3, 5)], h_max=1)
        # reference check: no single sink reaches all sources without relays
        for b in inst.sinks:
            allowed = set(inst.sources) | {b}
            dist = bfs_dist(inst.n, inst.edges, [b], allowed)
            assert any(dist.get(q, 10**9) > inst.h_max for q in inst.sources)
        assert single_sink_no_relay(inst) is None

    def test_restricted_pool(self):
        inst = mk("qbb", [(0, 1), (0, 2)], h_max=1)
        assert single_sink_no_relay(inst, sink_pool=[2]).sinks == {2}


class TestFeasibility:
    def test_chain_feasible_at_three_hops(self):
        report = check_feasibility(chain4(h_max=3))
        assert report.feasible and report.witness is None
        assert report.best_hops == {0: 3}

    def test_chain_infeasible_at_two_hops(self):
        report = check_feasibility(chain4(h_max=2))
        assert not report.feasible and report.witness == 0

    def test_isolated_source_witnessed(self):
        inst = mk("qqb", [(0, 2)], h_max=2)
        report = check_feasibility(inst)
        assert not report.feasible and report.witness == 1

    def test_smart_select_raises_with_witness(self):
        inst = mk("qqb", [(0, 2)], h_max=2)
        with pytest.raises(InfeasibleInstanceError) as err:
            smart_select(inst)
        assert err.value.witness == 1


class TestComputeCovers:
    def test_chain_cover_sets(self):
        src, rel = compute_covers(chain4(h_max=3))
        assert src[3] == {0}
        assert rel[3] == {1, 2}

    def test_relay_cover_uses_tighter_bound(self):
        # sink 4 sees relays at hops 1..3; only those within h_max - 1 count
        inst = mk("qrrrbb", [(4, 3), (3, 2), (2, 1), (1, 0), (5, 0)], h_max=3)
        src, rel = compute_covers(inst)
        assert src[4] == frozenset()  # the source sits 4 hops out
        assert rel[4] == {2, 3}  # relay 1 is exactly h_max hops away
        assert src[5] == {0}

    def test_infeasible_raises(self):
        with pytest.raises(InfeasibleInstanceError):
            compute_covers(mk("qqb", [(0, 2)], h_max=2))

    def test_reduction_covers_equal_subsets(self):
        family = [frozenset({0, 1}), frozenset({1, 2}), frozenset({3})]
        inst = generate_setcover_reduction(family, num_elements=4)
        src, _ = compute_covers(inst)
        for k, subset in enumerate(family):
            assert src[4 + k] == subset


class TestMinimizeRelays:
    def test_chain_needs_both_relays(self):
        inst = chain4()
        ev = minimize_relays(inst, 3, {0}, {1, 2})
        assert ev.relays == {1, 2}
        assert ev.covered == {0}
        assert ev.per_source_cost == Fraction(12)
        assert ev.routes[0].path == (0, 1, 2, 3)

    def test_prunes_redundant_tree_relay(self):
        # b(4) - r1(2), r2(3); q1(0) on r1 and r2, q2(1) on r2 only
        inst = mk("qqrrb", [(4, 2), (4, 3), (2, 0), (3, 1), (3, 0)], h_max=2)
        ev = minimize_relays(inst, 4, {0, 1}, {2, 3})
        assert ev.relays == {3}
        assert ev.per_source_cost == Fraction(11, 2)
        assert min_relay_count(inst, 4, [0, 1], [2, 3]) == 1

    def test_unreachable_targets_excluded(self):
        inst = mk("qqrb", [(0, 2), (2, 3)], h_max=2)
        ev = minimize_relays(inst, 3, {0, 1}, {2})
        assert ev.covered == {0}
        assert ev.excluded == {1}

    def test_none_when_nothing_reachable(self):
        inst = mk("qqrb", [(0, 2), (2, 3)], h_max=2)
        assert minimize_relays(inst, 3, {1}, {2}) is None

    def test_empty_targets_rejected(self):
        with pytest.raises(ValueError, match="empty target set"):
            minimize_relays(chain4(), 3, set(), {1, 2})

    def test_zero_cost_relays_not_charged(self):
        inst = chain4()
        assert minimize_relays(inst, 3, {0}, {1, 2}).per_source_cost == 12
        assert minimize_relays(inst, 3, {0}, {1, 2}, frozenset({1})).per_source_cost == 11
        assert minimize_relays(inst, 3, {0}, {1, 2}, frozenset({1, 2})).per_source_cost == 10

    def test_shared_tree_cost_split(self):
        # three sources behind a two-relay stem
        inst = mk(
            "qqqrrb",
            [(5, 3), (3, 4), (4, 0), (4, 1), (4, 2)],
            h_max=3,
        )
        ev = minimize_relays(inst, 5, {0, 1, 2}, {3, 4})
        assert ev.relays == {3, 4}
        assert ev.per_source_cost == Fraction(12, 3)

    def test_returned_set_serves_targets(self):
        checked = 0
        for seed in range(60):
            inst = random_tiny(seed)
            if not inst.relays or not check_feasibility(inst).feasible:
                continue
            src, rel = compute_covers(inst)
            b = inst.sinks[0]
            if not src[b]:
                continue
            ev = minimize_relays(inst, b, src[b], rel[b])
            assert ev is not None and ev.covered == src[b]
            assert serves(inst, [b], ev.relays, sources=ev.covered)
            assert len(ev.relays) <= len(ev.covered) * (inst.h_max - 1)
            checked += 1
        assert checked >= 10


class TestSmartSelect:
    def test_star_shortcut(self):
        res = smart_select(star5())
        assert res.state.via_single_sink
        assert res.design.cost == 10
        assert res.state.picked == []

    def test_chain_selects_relays(self):
        res = smart_select(chain4())
        assert res.design.sinks == {3}
        assert res.design.relays == {1, 2}
        assert res.design.cost == 12

    def test_tie_prefers_more_coverage(self):
        # sink 5 serves q0 directly at cost 10; sink 6 serves q1, q2 through
        # one relay each, also 10 per source. Equal cost, more coverage wins.
        edges = [(5, 0), (6, 3), (3, 1), (6, 4), (4, 2)]
        inst = mk("qqqrrbb", edges, h_max=2, c_s=10, c_r=5)
        res = smart_select(inst)
        first = res.state.picked[0]
        assert first.sink == 6 and first.covered == {1, 2}
        assert first.per_source_cost == Fraction(10)

    def test_equal_evaluations_take_lower_sink_id(self):
        inst = mk("qqbb", [(0, 2), (1, 2), (0, 3), (1, 3)], h_max=1)
        res = smart_select(inst)
        assert res.design.sinks == {2}

    def test_two_clusters_matches_exact(self):
        from hopnet.exact import exact_optimum

        inst = mk("qqqqrbb", [(5, 0), (5, 1), (5, 4), (4, 2), (6, 3)], h_max=2)
        res = smart_select(inst)
        best = exact_optimum(inst)
        assert res.design.cost == best.cost == 21
        assert res.design.sinks == best.sinks == {5, 6}

    def test_reduction_matches_set_cover_greedy(self):
        family = [frozenset({0, 1, 2}), frozenset({2, 3}), frozenset({3, 4}), frozenset({0, 4})]
        inst = generate_setcover_reduction(family, num_elements=5)
        res = smart_select(inst)
        picked = [rec.sink - 5 for rec in res.state.picked]
        assert picked == greedy_set_cover(family, 5)

    def test_random_designs_validate(self):
        checked = 0
        for seed in range(80):
            inst = random_tiny(seed)
            if not check_feasibility(inst).feasible:
                continue
            res = smart_select(inst)
            report = validate(inst, res.design)
            assert report.ok, (seed, report.violations)
            for route in res.design.routes.values():
                assert route.hops <= inst.h_max
            checked += 1
        assert checked >= 30

    def test_trace_progress_invariants(self):
        for seed in range(40):
            inst = random_tiny(seed)
            if not check_feasibility(inst).feasible:
                continue
            res = smart_select(inst)
            if res.state.via_single_sink:
                continue
            covered = set()
            seen_relays = set()
            for rec in res.state.picked:
                assert rec.covered and not (rec.covered & covered)
                assert rec.relays <= set(inst.relays)
                covered |= rec.covered
                seen_relays |= rec.relays
            assert covered == set(inst.sources)
            assert res.state.zero_cost_relays == seen_relays
            assert res.design.relays == frozenset(seen_relays)

    def test_cost_scale_invariance(self):
        from hopnet.model import Instance

        for seed in range(30):
            inst = random_tiny(seed)
            if not check_feasibility(inst).feasible:
                continue
            scaled = Instance(
                nodes=inst.nodes,
                edges=inst.edges,
                c_s=inst.c_s * 7,
                c_r=inst.c_r * 7,
                h_max=inst.h_max,
                r_max=inst.r_max,
            )
            a = smart_select(inst).design
            b = smart_select(scaled).design
            assert a.sinks == b.sinks and a.relays == b.relays
            assert b.cost == a.cost * 7

    def test_sink_pool_restriction(self):
        inst = mk("qbb", [(0, 1), (0, 2)], h_max=1)
        res = smart_select(inst, sink_pool=[2])
        assert res.design.sinks == {2}
        with pytest.raises(ValueError, match="not a potential sink"):
            smart_select(inst, sink_pool=[0])

    def test_empty_pool_is_infeasible(self):
        with pytest.raises(InfeasibleInstanceError):
            smart_select(chain4(), sink_pool=[])
