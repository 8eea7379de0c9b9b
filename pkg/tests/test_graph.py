import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from .conftest import complete_graph, cycle_graph, naive_terminal_cut, star_graph
from termcut.errors import InvalidInputError, ResourceLimitError
from termcut.generators import Rng, random_graph
from termcut.graph import (
    Graph,
    brute_force_cut,
    brute_force_cut_table,
    combine_realizations,
    cut_vector,
    format_graph,
    max_flow_min_cut,
    min_terminal_cut,
    parse_graph,
    terminal_cut,
)
from termcut.subsets import full_mask, proper_masks

seeds = st.integers(min_value=0, max_value=2**64 - 1)


def small_graph(seed, max_vertices=10):
    rng = Rng(seed)
    k = rng.between(2, 5)
    steiner = rng.between(0, max_vertices - k)
    return random_graph(rng, k, steiner, density=(rng.between(1, 3), 4), connected=rng.chance(3, 4))


class TestMaxFlow:
    def test_single_edge(self):
        g = Graph(["a", "b"], [("a", "b", 1)])
        res = max_flow_min_cut(g, ["a"], ["b"])
        assert res.value == 1
        assert res.cut_edges == (("a", "b"),)
        assert res.source_side == {"a"}

    def test_path_picks_minimal_source_side(self):
        g = Graph(["a", "b"], [("a", "v", 1), ("v", "b", 1)])
        res = max_flow_min_cut(g, ["a"], ["b"])
        # brute force over the 4 bipartitions: {a}, {a,v} both cost 1
        assert res.value == 1
        assert res.source_side == {"a"}
        assert res.cut_edges == (("a", "v"),)

    def test_disconnected(self):
        g = Graph(["a", "b"], [("a", "x", 2), ("b", "y", 3)])
        res = max_flow_min_cut(g, ["a"], ["b"])
        assert res.value == 0
        assert res.cut_edges == ()

    def test_overlap_rejected(self):
        g = Graph(["a", "b"], [("a", "b", 1)])
        with pytest.raises(InvalidInputError):
            max_flow_min_cut(g, ["a"], ["a", "b"])

    def test_rational_capacities_exact(self):
        g = Graph(["a", "b"], [("a", "v", "1/3"), ("v", "b", "1/2"), ("a", "b", "1/7")])
        assert max_flow_min_cut(g, ["a"], ["b"]).value == Fraction(1, 3) + Fraction(1, 7)

    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_cut_result_invariants(self, seed):
        g = small_graph(seed)
        for mask in proper_masks(g.k):
            res = terminal_cut(g, mask)
            inside = set(g.subset_ids(mask))
            assert inside <= res.source_side
            assert not (set(g.terminals) - inside) & res.source_side
            crossing = tuple(e for e in g.edges if (e[0] in res.source_side) != (e[1] in res.source_side))
            assert res.cut_edges == crossing
            assert res.value == sum(g.edges[e] for e in res.cut_edges)


class TestTerminalCut:
    def test_star(self):
        g = star_graph(4)
        assert terminal_cut(g, ["t1", "t2"]).value == 2
        for s in range(1, 4):
            for sub in itertools.combinations(g.terminals, s):
                assert terminal_cut(g, sub).value == min(s, 4 - s)

    def test_k4_singleton(self, k4):
        assert terminal_cut(k4, ["1"]).value == 3

    def test_improper_subsets(self, k4):
        with pytest.raises(InvalidInputError):
            terminal_cut(k4, [])
        with pytest.raises(InvalidInputError):
            terminal_cut(k4, ["1", "2", "3", "4"])
        with pytest.raises(InvalidInputError):
            terminal_cut(k4, ["9"])

    @settings(max_examples=60, deadline=None)
    @given(seeds)
    def test_complement_symmetry(self, seed):
        g = small_graph(seed)
        full = full_mask(g.k)
        for mask in proper_masks(g.k):
            assert terminal_cut(g, mask).value == terminal_cut(g, full & ~mask).value

    @settings(max_examples=80, deadline=None)
    @given(seeds)
    def test_matches_independent_oracle(self, seed):
        g = small_graph(seed)
        for mask in proper_masks(g.k):
            assert terminal_cut(g, mask).value == naive_terminal_cut(g, g.subset_ids(mask))

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_deterministic(self, seed):
        g = small_graph(seed)
        again = parse_graph(format_graph(g))
        for mask in proper_masks(g.k):
            assert terminal_cut(g, mask) == terminal_cut(g, mask) == terminal_cut(again, mask)


class TestCutVector:
    def test_k4(self, k4):
        pi = cut_vector(k4)
        assert len(pi) == 14
        for m, v in pi.items():
            assert v == {1: 3, 2: 4, 3: 3}[bin(m).count("1")]

    def test_single_edge(self):
        pi = cut_vector(Graph(["a", "b"], [("a", "b", "5/2")]))
        assert pi[["a"]] == pi[["b"]] == Fraction(5, 2)

    def test_edgeless(self):
        g = Graph([1, 2, 3], [])
        pi = cut_vector(g)
        assert len(pi) == 0
        assert all(pi[m] == 0 for m in proper_masks(3))

    def test_limit(self):
        g = Graph(range(13), [])
        with pytest.raises(ResourceLimitError):
            cut_vector(g)

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_submodular(self, seed):
        g = small_graph(seed)
        pi = cut_vector(g)
        full = full_mask(g.k)
        for a in proper_masks(g.k):
            for b in proper_masks(g.k):
                if a & b and (a | b) != full:
                    assert pi[a] + pi[b] >= pi[a & b] + pi[a | b]


class TestMinTerminalCut:
    def test_cycle(self):
        value, witness = min_terminal_cut(cycle_graph(6))
        assert value == 2
        assert witness == ("0",)

    def test_k4(self, k4):
        assert min_terminal_cut(k4) == (3, ("1",))

    def test_edgeless(self):
        assert min_terminal_cut(Graph([1, 2, 3], []))[0] == 0

    def test_lexicographic_witness(self):
        # {0,1} is cheaper than every singleton; it is the only minimiser besides its complement
        g = Graph(range(4), [(0, 1, 5), (2, 3, 5), (1, 2, 1), (0, 3, 1)])
        assert min_terminal_cut(g) == (2, ("0", "1"))


class TestBruteForce:
    def test_path(self):
        g = Graph(["a", "b"], [("a", "v", 2), ("v", "b", 3)])
        assert brute_force_cut(g, ["a"]) == 2

    def test_single_edge(self):
        assert brute_force_cut(Graph(["a", "b"], [("a", "b", 1)]), ["a"]) == 1

    def test_k4_doubleton(self, k4):
        assert brute_force_cut(k4, ["1", "2"]) == 4

    def test_vertex_limit(self):
        g = Graph(["a", "b"], [(f"v{i}", f"v{i + 1}", 1) for i in range(14)] + [("a", "v0", 1)])
        with pytest.raises(ResourceLimitError):
            brute_force_cut(g, ["a"])

    @settings(max_examples=80, deadline=None)
    @given(seeds)
    def test_agrees_with_max_flow(self, seed):
        g = small_graph(seed, max_vertices=12)
        table = brute_force_cut_table(g)
        for mask in proper_masks(g.k):
            assert table[mask] == terminal_cut(g, mask).value

    def test_huge_capacities_use_exact_path(self):
        big = 2**70
        g = Graph(["a", "b"], [("a", "v", big), ("v", "b", big + 1), ("a", "b", Fraction(1, 3))])
        assert brute_force_cut(g, ["a"]) == big + Fraction(1, 3)
        assert terminal_cut(g, ["a"]).value == big + Fraction(1, 3)


class TestCombine:
    def test_parallel_merge(self):
        g = Graph(["t1", "t2"], [("t1", "t2", 1)])
        h = combine_realizations(g, g, 1, 1)
        assert h.edges == {("t1", "t2"): 2}
        assert cut_vector(h)[["t1"]] == 2

    def test_nonpositive_factor(self):
        g = Graph(["t1", "t2"], [("t1", "t2", 1)])
        with pytest.raises(InvalidInputError):
            combine_realizations(g, g, 2, 0)

    def test_mismatched_terminals(self):
        with pytest.raises(InvalidInputError):
            combine_realizations(Graph(["a", "b"], []), Graph(["a", "c"], []), 1, 1)

    def test_k4_plus_star(self, k4):
        star = Graph(["1", "2", "3", "4"], [("c", t, 1) for t in "1234"])
        h = combine_realizations(k4, star, 1, 1)
        assert len(h.vertices) == 5
        pi_h = cut_vector(h)
        expected = cut_vector(k4) + cut_vector(star)
        assert pi_h == expected
        for m in proper_masks(4):
            assert pi_h[m] == naive_terminal_cut(h, h.subset_ids(m))

    def test_steiner_collision_renamed(self):
        g = Graph(["a", "b"], [("a", "x", 1), ("x", "b", 1)])
        h = combine_realizations(g, g, 1, 2)
        assert set(h.vertices) == {"a", "b", "x", "x'"}
        assert cut_vector(h)[["a"]] == 3

    @settings(max_examples=30, deadline=None)
    @given(seeds, st.integers(1, 5), st.integers(1, 5), st.integers(1, 4))
    def test_cone_property(self, seed, p, q, r):
        rng = Rng(seed)
        k = rng.between(2, 5)
        g1 = random_graph(rng, k, rng.between(0, 3))
        g2 = random_graph(rng, k, rng.between(0, 3))
        a, b = Fraction(p, r), Fraction(q, 1)
        h = combine_realizations(g1, g2, a, b)
        assert cut_vector(h) == cut_vector(g1).scale(a) + cut_vector(g2).scale(b)


class TestParsing:
    def test_round_trip(self):
        text = "# demo\nterminals a b c\nedge a x 3/2\nedge x b 2  # trailing\nedge b c 1\nedge c a 1\n"
        g = parse_graph(text)
        assert g.terminals == ("a", "b", "c")
        assert g.edges[("a", "x")] == Fraction(3, 2)
        assert parse_graph(format_graph(g)) == g

    def test_parallel_edges_merge(self):
        g = parse_graph("terminals a b\nedge a b 1\nedge b a 1/2\n")
        assert g.edges == {("a", "b"): Fraction(3, 2)}

    @pytest.mark.parametrize(
        "text",
        [
            "edge a b 1\nterminals a b\n",
            "terminals a b\nterminals a b\n",
            "terminals a b\nedge a b 0\n",
            "terminals a b\nedge a b -1\n",
            "terminals a b\nedge a b 1.5\n",
            "terminals a b\nedge a b 1/0\n",
            "terminals a b\nedge a a 1\n",
            "terminals a b\nedge a b\n",
            "terminals a\n",
            "terminals a a\n",
            "terminals a b\nnode c\n",
            "# nothing\n",
        ],
    )
    def test_rejects(self, text):
        with pytest.raises(InvalidInputError):
            parse_graph(text)

    def test_float_capacity_rejected(self):
        with pytest.raises(InvalidInputError):
            Graph(["a", "b"], [("a", "b", 0.5)])

    def test_isolated_terminal_kept(self):
        g = Graph(["a", "b", "c"], [("a", "b", 1)])
        assert "c" in g.vertices
        assert terminal_cut(g, ["c"]).value == 0
