import itertools
from fractions import Fraction

import pytest

from termcut.graph import Graph


def complete_graph(labels, cap=1):
    labels = list(labels)
    return Graph(labels, [(a, b, cap) for a, b in itertools.combinations(labels, 2)])


def cycle_graph(n, cap=1):
    return Graph(range(n), [(i, (i + 1) % n, cap) for i in range(n)])


def star_graph(k, cap=1):
    return Graph([f"t{i}" for i in range(1, k + 1)], [("c", f"t{i}", cap) for i in range(1, k + 1)])


def two_cliques():
    left = [f"a{i}" for i in range(4)]
    right = [f"b{i}" for i in range(4)]
    edges = [(x, y, 1) for side in (left, right) for x, y in itertools.combinations(side, 2)]
    edges.append(("a0", "b0", 1))
    return Graph(left + right, edges)


def naive_terminal_cut(g, inside):
    """Independent oracle: min crossing capacity over all steiner placements (itertools)."""
    inside = set(inside)
    outside = set(g.terminals) - inside
    steiner = [x for x in g.vertices if x not in g.terminals]
    best = None
    for bits in itertools.product((0, 1), repeat=len(steiner)):
        side = inside | {x for x, b in zip(steiner, bits) if b}
        val = sum((c for (u, v), c in g.edges.items() if (u in side) != (v in side)), Fraction(0))
        if best is None or val < best:
            best = val
    return best


@pytest.fixture
def k4():
    return complete_graph([1, 2, 3, 4])


@pytest.fixture
def c6():
    return cycle_graph(6)


@pytest.fixture
def k6():
    return complete_graph(range(6))
