import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from termcut import intervals as iv
from termcut.certificate import (
    EdgeLengths,
    accumulate_lengths,
    build_length_decomposition,
    certificate_json,
    edge_region_intervals,
    shortest_distances,
    verify_decomposition,
    verify_theorem1,
)
from termcut.errors import InvalidInputError
from termcut.generators import Rng, dominating_beta, random_graph, random_laminar_gamma
from termcut.graph import Graph, cut_vector
from termcut.typevec import TypeVector

from .conftest import complete_graph

F = Fraction


def single_edge():
    return Graph(["a", "b"], [("a", "b", 1)])


def path():
    return Graph(["a", "b"], [("a", "v", 1), ("v", "b", 1)], ["v"])


def random_instance(seed, k_range=(3, 6), steiner=(0, 4)):
    rng = Rng(seed)
    k = rng.between(*k_range)
    g = random_graph(rng, k, rng.between(*steiner))
    gamma = random_laminar_gamma(rng, g.terminals)
    beta = dominating_beta(rng, gamma)
    return g, beta, gamma


class TestAccumulate:
    def test_single_edge(self):
        ell = accumulate_lengths(single_edge(), TypeVector(["a", "b"], [(["a"], 1)]))
        assert ell == {("a", "b"): 1}

    def test_path_uses_canonical_side(self):
        ell = accumulate_lengths(path(), TypeVector(["a", "b"], [(["a"], 1)]))
        assert ell == {("a", "v"): 1, ("b", "v"): 0}

    def test_k4_singleton(self):
        g = complete_graph([1, 2, 3, 4])
        ell = accumulate_lengths(g, TypeVector(g.terminals, [(["1"], 1)]))
        assert {e for e, x in ell.items() if x} == {("1", "2"), ("1", "3"), ("1", "4")}
        assert ell.weighted_sum(g) == 3

    def test_empty_beta(self):
        with pytest.raises(InvalidInputError):
            accumulate_lengths(single_edge(), TypeVector(["a", "b"]))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32))
    def test_weighted_sum_is_cut_of_beta(self, seed):
        g, beta, _ = random_instance(seed)
        pi = cut_vector(g)
        assert accumulate_lengths(g, beta).weighted_sum(g) == sum(w * pi[m] for m, w in beta.items())


class TestDistances:
    def test_single_edge(self):
        assert shortest_distances(single_edge(), {("a", "b"): F(1)})["a"]["b"] == 1

    def test_path(self):
        d = shortest_distances(path(), {("a", "v"): F(1), ("b", "v"): F(0)})
        assert d["a"]["b"] == 1 and d["b"]["v"] == 0

    def test_triangle_two_hop(self):
        g = Graph(["x", "y", "z"], [("x", "y", 1), ("y", "z", 1), ("x", "z", 1)])
        d = shortest_distances(g, {("x", "y"): F(1), ("y", "z"): F(1), ("x", "z"): F(3)})
        assert d["x"]["z"] == 2

    def test_lengths_must_cover_edges(self):
        with pytest.raises(InvalidInputError):
            shortest_distances(single_edge(), {})

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32))
    def test_distance_dominates_beta_metric(self, seed):
        # every terminal path crosses the canonical cut of each set separating its ends
        from termcut.typevec import induced_metric

        g, beta, _ = random_instance(seed)
        d = shortest_distances(g, accumulate_lengths(g, beta), g.terminals)
        db = induced_metric(beta)
        for (i, j), val in db.items():
            assert d[g.terminals[i]][g.terminals[j]] >= val


def point_in_region(x, length, du, dv, old, new, members):
    def covered(radii):
        return any(min(du[t] + x, dv[t] + length - x) < radii[t] for t in members)

    return covered(new) and not covered(old)


class TestRegions:
    def test_whole_edge(self):
        dist = {"a": {"a": F(0), "b": F(1)}}
        assert edge_region_intervals(("a", "b"), 1, dist, {"a": F(0)}, F(1), ["a"]) == ((0, 1),)

    def test_suffix(self):
        dist = {"b": {"a": F(1), "v": F(0)}}
        segs = edge_region_intervals(("a", "v"), 1, dist, {"b": F(0)}, F(1, 2), ["b"])
        assert segs == ((F(1, 2), F(1)),)
        assert iv.total_length(segs) == F(1, 2)

    def test_already_covered(self):
        dist = {"a": {"a": F(0), "b": F(1)}}
        assert edge_region_intervals(("a", "b"), 1, dist, {"a": F(2)}, F(1), ["a"]) == ()

    def test_zero_length_edge(self):
        dist = {"a": {"a": F(0), "b": F(0)}}
        assert edge_region_intervals(("a", "b"), 0, dist, {"a": F(0)}, F(1), ["a"]) == ()

    @settings(max_examples=200, deadline=None)
    @given(
        st.fractions(0, 4, max_denominator=6).filter(lambda x: x > 0),
        st.lists(st.tuples(st.fractions(0, 5, max_denominator=6), st.fractions(0, 5, max_denominator=6),
                           st.fractions(0, 3, max_denominator=6)), min_size=1, max_size=3),
        st.fractions(0, 3, max_denominator=6).filter(lambda x: x > 0),
    )
    def test_matches_point_sampling(self, length, balls, grow):
        members = [f"t{i}" for i in range(len(balls))]
        dist = {t: {"u": du, "v": dv} for t, (du, dv, _) in zip(members, balls)}
        old = {t: r for t, (_, _, r) in zip(members, balls)}
        new = {t: old[t] + grow for t in members}
        segs = edge_region_intervals(("u", "v"), length, dist, old, grow, members)
        assert len(segs) <= 2
        du = {t: dist[t]["u"] for t in members}
        dv = {t: dist[t]["v"] for t in members}
        # open and half-open ends differ only at ball boundaries, so skip those points
        breaks = {r - du[t] for radii in (old, new) for t, r in radii.items()}
        breaks |= {length - (r - dv[t]) for radii in (old, new) for t, r in radii.items()}
        steps = 97
        for n in range(steps):
            x = length * F(2 * n + 1, 2 * steps)
            if x in breaks:
                continue
            inside = any(a <= x < b for a, b in segs)
            assert inside == point_in_region(x, length, du, dv, old, new, members)


class TestDecomposition:
    def test_single_edge(self):
        g = single_edge()
        gamma = TypeVector(g.terminals, [(["a"], 1)])
        dec = build_length_decomposition(g, EdgeLengths({("a", "b"): F(1)}), gamma)
        assert dec.parts[0b01] == {("a", "b"): 1}
        rep = verify_decomposition(g, dec, gamma, cut_vector(g))
        assert rep.passed

    def test_path_halves(self):
        g = path()
        gamma = TypeVector(g.terminals, [(["a"], F(1, 2)), (["b"], F(1, 2))])
        ell = EdgeLengths({("a", "v"): F(1), ("b", "v"): F(0)})
        dec = build_length_decomposition(g, ell, gamma)
        assert dec.parts[0b01] == {("a", "v"): F(1, 2), ("b", "v"): 0}
        assert dec.parts[0b10] == {("a", "v"): F(1, 2), ("b", "v"): 0}
        assert dec.regions[0b01][("a", "v")] == ((0, F(1, 2)),)
        assert dec.regions[0b10][("a", "v")] == ((F(1, 2), 1),)
        rep = verify_decomposition(g, dec, gamma, cut_vector(g))
        assert rep.passed, rep.failures()

    def test_nested_sets_processed_inner_first(self):
        g = Graph(["1", "2", "3"], [("1", "2", 1), ("2", "3", 1), ("1", "3", 1)])
        gamma = TypeVector(g.terminals, [(["1", "2"], 1), (["1"], 1)])
        beta = TypeVector(g.terminals, [(["1"], 2), (["2"], 1), (["3"], 1)])
        ell = accumulate_lengths(g, beta)
        dec = build_length_decomposition(g, ell, gamma)
        assert dec.order == [0b001, 0b011]
        assert dec.radii_trace[1]["before"] == {"1": 1, "2": 0, "3": 0}
        assert dec.radii_trace[1]["after"] == {"1": 2, "2": 1, "3": 0}
        assert verify_decomposition(g, dec, gamma, cut_vector(g)).passed

    def test_non_laminar_rejected(self):
        g = complete_graph([1, 2, 3, 4])
        gamma = TypeVector(g.terminals, [(["1", "2"], 1), (["2", "3"], 1)])
        with pytest.raises(InvalidInputError):
            build_length_decomposition(g, EdgeLengths.zeros(g), gamma)

    def test_detects_broken_certificate(self):
        g = single_edge()
        gamma = TypeVector(g.terminals, [(["a"], 1)])
        dec = build_length_decomposition(g, EdgeLengths({("a", "b"): F(1)}), gamma)
        dec.parts[0b01][("a", "b")] = F(1, 2)
        rep = verify_decomposition(g, dec, gamma, cut_vector(g))
        assert [c.name for c in rep.failures()] == ["P2_cut_size", "separation_distance"]


class TestVerifyLaminarInequality:
    def test_k4_four_terminal_inequality(self):
        g = complete_graph([1, 2, 3, 4])
        beta = TypeVector.indicator(g.terminals, [["1", "2"], ["1", "3"], ["1", "4"]])
        gamma = TypeVector.indicator(g.terminals, [["1"], ["2"], ["3"], ["4"]])
        res = verify_theorem1(g, beta, gamma)
        assert res.holds and res.equality
        assert (res.lhs, res.rhs) == (12, 12)
        assert res.report.passed

    def test_beta_equals_gamma(self):
        g = complete_graph([1, 2, 3, 4])
        v = TypeVector(g.terminals, [(["1"], 2), (["1", "2"], F(1, 3))])
        res = verify_theorem1(g, v, v)
        assert res.equality and res.report.passed

    def test_not_laminar(self):
        g = complete_graph([1, 2, 3, 4])
        gamma = TypeVector.indicator(g.terminals, [["1", "2"], ["2", "3"]])
        res = verify_theorem1(g, gamma, gamma)
        assert res.status == "not laminar" and not res.holds
        assert res.witness == (("1", "2"), ("2", "3"))

    def test_dominance_failure(self):
        g = complete_graph([1, 2, 3])
        beta = TypeVector(g.terminals, [(["1"], F(1, 10))])
        gamma = TypeVector(g.terminals, [(["1"], 10)])
        res = verify_theorem1(g, beta, gamma)
        assert res.status == "dominance"
        assert res.witness == (("1", "2"), F(1, 10), 10)

    def test_empty_gamma(self):
        g = single_edge()
        res = verify_theorem1(g, TypeVector(g.terminals, [(["a"], 1)]), TypeVector(g.terminals))
        assert res.holds and res.rhs == 0

    def test_mismatched_terminals(self):
        g = single_edge()
        with pytest.raises(InvalidInputError):
            verify_theorem1(g, TypeVector(["x", "y"]), TypeVector(["x", "y"]))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32))
    def test_random_instances_certified(self, seed):
        g, beta, gamma = random_instance(seed)
        res = verify_theorem1(g, beta, gamma)
        assert res.holds, (res.status, res.report and res.report.failures())
        assert all(c.passed for c in res.report.checks)

    def test_tight_dominance_certified(self):
        # dominating_beta is tight on some pair, the hardest admissible case
        for seed in range(20):
            g, beta, gamma = random_instance(seed)
            res = verify_theorem1(g, beta, gamma)
            assert res.report.passed

    def test_certificate_json_stable(self):
        g, beta, gamma = random_instance(7)
        a = certificate_json(g, verify_theorem1(g, beta, gamma))
        b = certificate_json(g, verify_theorem1(g, beta, gamma))
        assert a == b
        data = json.loads(a)
        assert data["status"] == "holds"
        assert data["report"]["passed"] is True
        assert all(len(item["segments"]) <= 2 for s in data["certificate"]["sets"] for item in s["intervals"])
