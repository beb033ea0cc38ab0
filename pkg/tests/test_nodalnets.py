import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rspin.arith import divisors
from rspin.localroot import Order, order_of_root
from rspin.nodalnets import (
    DualGraph,
    Leg,
    bridges,
    count_nets,
    deformation_profile,
    degree_identity_check,
    enumerate_strata,
    genus,
    one_loop_graph,
    swap_edge,
    validate,
    vertex_omega_degree,
)

LOOP1 = DualGraph((1,), ((0, 0),))
TWO_ELLIPTIC = DualGraph((1, 1), ((0, 1),))


def graph_family():
    """Small stable graphs with loops, multi-edges, bridges and legs."""
    return [
        LOOP1,
        TWO_ELLIPTIC,
        DualGraph((0,), ((0, 0),), (Leg(0),)),
        DualGraph((0, 0), ((0, 1),), (Leg(0), Leg(0), Leg(1), Leg(1))),
        DualGraph((0, 0), ((0, 1), (0, 1)), (Leg(0), Leg(1))),
        DualGraph((0, 0), ((0, 1), (0, 1), (0, 1))),
        DualGraph((1, 0), ((0, 1), (1, 1))),
        DualGraph((0,), ((0, 0), (0, 0))),
        DualGraph((1, 0, 1), ((0, 1), (1, 2), (1, 1))),
        DualGraph((0, 0, 0), ((0, 1), (1, 2), (2, 0)), (Leg(0), Leg(1), Leg(2))),
        DualGraph((2,), ((0, 0),), (Leg(0),)),
    ]


class TestValidate:
    def test_examples(self):
        assert validate(LOOP1) == (True, [])
        ok, diag = validate(DualGraph((0,), ((0, 0),)))
        assert not ok and "vertex 0" in diag[0]
        assert validate(DualGraph((0, 0), ((0, 1),), (Leg(0), Leg(0), Leg(1), Leg(1))))[0]

    @pytest.mark.parametrize(
        "graph,fragment",
        [
            (DualGraph((1, 1)), "disconnected"),
            (DualGraph(()), "no vertices"),
            (DualGraph((1,), ((0, 3),)), "out of range"),
            (DualGraph((1,), (), (Leg(2),)), "out of range"),
            (DualGraph((1,)), "genus 1"),
            (DualGraph((-1,), ((0, 0),)), "negative"),
        ],
    )
    def test_diagnostics(self, graph, fragment):
        ok, diag = validate(graph)
        assert not ok and any(fragment in d for d in diag)

    def test_json_round_trip(self):
        g = DualGraph((0, 2), ((0, 1), (0, 0)), (Leg(0, 3),))
        data = g.to_json()
        assert data == {"vertices": [{"genus": 0}, {"genus": 2}], "edges": [[0, 1], [0, 0]], "legs": [{"vertex": 0, "m": 3}]}
        assert DualGraph.from_json(json.dumps(data)) == g

    @pytest.mark.parametrize("bad", ['[1, 2]', '{"vertices": [{"g": 1}]}', '{"vertices": [{"genus": 1}], "edges": [[0]]}'])
    def test_json_malformed(self, bad):
        with pytest.raises(ValueError):
            DualGraph.from_json(bad)


class TestGenusDegrees:
    def test_genus_examples(self):
        assert genus(LOOP1) == 2
        assert genus(TWO_ELLIPTIC) == 2
        assert genus(DualGraph((0,), ((0, 0),), (Leg(0),))) == 1

    def test_genus_invalid(self):
        with pytest.raises(ValueError):
            genus(DualGraph((0,), ((0, 0),)))

    def test_omega_examples(self):
        assert vertex_omega_degree(LOOP1, 0, []) == 2
        assert vertex_omega_degree(DualGraph((1,), ((0, 0),), (Leg(0, 2),)), 0) == 0

    @pytest.mark.parametrize("graph", graph_family())
    def test_omega_sum(self, graph):
        m = [i + 1 for i in range(len(graph.legs))]
        total = sum(vertex_omega_degree(graph, v, m) for v in range(len(graph.vertices)))
        assert total == 2 * genus(graph) - 2 - sum(m)

    def test_bridges(self):
        assert bridges(TWO_ELLIPTIC) == {0}
        assert bridges(DualGraph((0, 0), ((0, 1), (0, 1)), (Leg(0), Leg(1)))) == set()
        assert bridges(DualGraph((1, 0, 1), ((0, 1), (1, 2), (1, 1)))) == {0, 1}


class TestEnumerate:
    def test_loop_mod_two(self):
        strata = enumerate_strata(LOOP1, 2, [])
        assert [s.orders for s in strata] == [(None,), ((1, 1),)]
        assert [s.degrees for s in strata] == [(1,), (0,)]
        assert [count_nets(s) for s in strata] == [8, 4]

    def test_separating_mod_two(self):
        strata = enumerate_strata(TWO_ELLIPTIC, 2, [])
        assert [s.orders for s in strata] == [((1, 1),)]
        assert count_nets(strata[0]) == 16
        assert strata[0].gluing == [1]

    def test_obstructed_is_empty(self):
        assert enumerate_strata(LOOP1, 3, []) == []
        assert enumerate_strata(DualGraph((2,), ((0, 0),), (Leg(0),)), 4, [1]) == []

    def test_invalid_graph(self):
        with pytest.raises(ValueError):
            enumerate_strata(DualGraph((0,), ((0, 0),)), 2, [])

    def test_twist_length(self):
        with pytest.raises(ValueError):
            enumerate_strata(LOOP1, 2, [1])

    @pytest.mark.parametrize("g", [0, 1, 2, 3])
    @pytest.mark.parametrize("r", [1, 2, 3, 4])
    def test_smooth_case(self, g, r):
        legs = (Leg(0),) * (3 if g == 0 else 1)
        m = [0] * len(legs)
        m[0] = (2 * g - 2) % r
        strata = enumerate_strata(DualGraph((g,), (), legs), r, m)
        assert len(strata) == 1 and count_nets(strata[0]) == r ** (2 * g)

    @pytest.mark.parametrize("graph", graph_family())
    @pytest.mark.parametrize("r", range(1, 7))
    def test_vertex_conditions_and_root_orders(self, graph, r):
        m = [0] * len(graph.legs)
        for s in enumerate_strata(graph, r, m):
            for v, deg in enumerate(s.degrees):
                alloc = sum(s.orders[e][side] for e, side in graph.half_edges_at(v) if s.orders[e] is not None)
                assert r * deg == vertex_omega_degree(graph, v, m) - alloc
            assert sum(r * d for d in s.degrees) + sum(r for o in s.orders if o is not None) == 2 * genus(graph) - 2
            for o in s.orders:
                if o is None:
                    continue
                for d in divisors(r):
                    assert order_of_root(Order(*o), r, d).locally_free == (o[0] % d == 0)
            assert s.codimension == len(graph.edges)

    def test_deterministic(self):
        a = enumerate_strata(graph_family()[8], 4, [])
        b = enumerate_strata(graph_family()[8], 4, [])
        assert [s.orders for s in a] == [s.orders for s in b]


class TestProfiles:
    def test_examples(self):
        g = DualGraph((0, 0), ((0, 1), (0, 1)), (Leg(0), Leg(1)))
        from rspin.nodalnets import Stratum

        s = Stratum(g, 6, ((2, 4), (3, 3)), (0, 0))
        assert deformation_profile(s) == [3, 2]
        s = Stratum(g, 6, (None, None), (0, 0))
        assert deformation_profile(s) == [1, 1]
        s = Stratum(LOOP1, 6, ((1, 5),), (0,))
        assert deformation_profile(s) == [6]

    @pytest.mark.parametrize("graph", graph_family())
    @pytest.mark.parametrize("r", range(2, 7))
    def test_swap_symmetry(self, graph, r):
        for s in enumerate_strata(graph, r, [0] * len(graph.legs)):
            for e in range(len(graph.edges)):
                t = swap_edge(s, e)
                assert count_nets(t) == count_nets(s)
                assert deformation_profile(t) == deformation_profile(s)


class TestDegreeIdentity:
    def test_examples(self):
        assert degree_identity_check(2, 2)
        assert degree_identity_check(3, 4)
        with pytest.raises(ValueError):
            degree_identity_check(2, 3)
        with pytest.raises(ValueError):
            degree_identity_check(0, 2)

    def test_one_loop_graph_shape(self):
        assert one_loop_graph(3) == DualGraph((2,), ((0, 0),))
        assert validate(one_loop_graph(1))[0]

    @given(st.integers(1, 6), st.integers(2, 12))
    @settings(max_examples=40)
    def test_holds_when_defined(self, g, r):
        if (2 * g - 2) % r == 0:
            assert degree_identity_check(g, r)
