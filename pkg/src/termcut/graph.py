"""Capacitated graphs with terminals and exact terminal min-cuts.

Capacities are kept as ``Fraction`` and scaled to a common denominator
internally, so max-flow runs on Python ints and never rounds.
"""
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from . import _kernels
from .errors import InvalidInputError, ResourceLimitError
from .subsets import ENUMERATION_LIMIT, full_mask, indices, is_proper, lex_key
from .typevec import TypeVector

BRUTE_FORCE_VERTEX_LIMIT = 14

_CAPACITY_RE = re.compile(r"^[0-9]+(/[0-9]+)?$")


def as_rational(value):
    """Exact rational from int, Fraction, or a ``p/q`` / integer string."""
    if isinstance(value, bool):
        raise InvalidInputError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not re.fullmatch(r"-?[0-9]+(/[0-9]+)?", text):
            raise InvalidInputError(f"not a rational string: {value!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise InvalidInputError(f"zero denominator: {value!r}") from None
    raise InvalidInputError(f"floats and {type(value).__name__} are not exact rationals: {value!r}")


def edge_key(u, v):
    return (u, v) if u < v else (v, u)


class Graph:
    """Undirected graph with positive rational capacities and a terminal list.

    Parallel edges are merged by adding capacities; self-loops are rejected.
    Vertex identifiers are strings (other tokens are converted with ``str``).
    Instances are immutable after construction.
    """

    __slots__ = ("terminals", "vertices", "edges", "_index", "_scale", "_int_caps", "_adj")

    def __init__(self, terminals, edges, vertices=()):
        terms = tuple(str(t) for t in terminals)
        if len(terms) < 2:
            raise InvalidInputError("need at least two terminals")
        if len(set(terms)) != len(terms):
            raise InvalidInputError("duplicate terminal identifiers")
        order = list(terms)
        seen = set(terms)

        def add_vertex(x):
            if x not in seen:
                seen.add(x)
                order.append(x)

        for x in vertices:
            add_vertex(str(x))
        merged = {}
        for u, v, cap in edges:
            u, v = str(u), str(v)
            if u == v:
                raise InvalidInputError(f"self-loop at {u}")
            c = as_rational(cap)
            if c <= 0:
                raise InvalidInputError(f"capacity of ({u},{v}) must be positive, got {c}")
            add_vertex(u)
            add_vertex(v)
            key = edge_key(u, v)
            merged[key] = merged.get(key, Fraction(0)) + c
        self.terminals = terms
        self.vertices = tuple(order)
        self.edges = dict(sorted(merged.items()))
        self._index = {x: i for i, x in enumerate(self.vertices)}
        self._scale = lcm(*(c.denominator for c in self.edges.values())) if self.edges else 1
        self._int_caps = {key: int(c * self._scale) for key, c in self.edges.items()}
        adj = {x: [] for x in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for x in adj:
            adj[x].sort(key=self._index.__getitem__)
        self._adj = adj

    @property
    def k(self):
        return len(self.terminals)

    def __repr__(self):
        return f"Graph(k={self.k}, n={len(self.vertices)}, m={len(self.edges)})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.terminals, set(self.vertices), self.edges) == (
            other.terminals,
            set(other.vertices),
            other.edges,
        )

    def __hash__(self):
        return hash((self.terminals, tuple(self.edges.items())))

    def neighbors(self, x):
        return self._adj[x]

    def subset_mask(self, s):
        """Bitmask over ``terminals`` for an int mask or an iterable of ids."""
        if isinstance(s, int) and not isinstance(s, bool):
            if not 0 <= s <= full_mask(self.k):
                raise InvalidInputError(f"mask {s} out of range for k={self.k}")
            return s
        pos = {t: i for i, t in enumerate(self.terminals)}
        mask = 0
        for t in s:
            t = str(t)
            if t not in pos:
                raise InvalidInputError(f"{t} is not a terminal")
            mask |= 1 << pos[t]
        return mask

    def subset_ids(self, mask):
        return tuple(self.terminals[i] for i in indices(mask))


@dataclass(frozen=True)
class CutResult:
    value: Fraction
    cut_edges: tuple
    source_side: frozenset


def _check_vertex_set(g, xs, what):
    out = set()
    for x in xs:
        x = str(x)
        if x not in g._index:
            raise InvalidInputError(f"{what} vertex {x} not in graph")
        out.add(x)
    if not out:
        raise InvalidInputError(f"{what} must be nonempty")
    return out


def max_flow_min_cut(g, sources, sinks):
    """Exact max-flow between two vertex sets, with the minimal source side.

    Sources and sinks are each contracted into one node (parallel edges add
    up).  Edmonds-Karp on the integer-scaled capacities; the returned source
    side is the set reachable from the sources in the final residual graph.
    """
    src = _check_vertex_set(g, sources, "source")
    snk = _check_vertex_set(g, sinks, "sink")
    if src & snk:
        raise InvalidInputError(f"sources and sinks overlap: {sorted(src & snk)}")

    # node 0 = contracted sources, node 1 = contracted sinks, then the rest
    node = {}
    rest = [x for x in g.vertices if x not in src and x not in snk]
    for x in src:
        node[x] = 0
    for x in snk:
        node[x] = 1
    for i, x in enumerate(rest):
        node[x] = i + 2
    n = len(rest) + 2
    residual = [dict() for _ in range(n)]
    for (u, v), c in g._int_caps.items():
        a, b = node[u], node[v]
        if a == b:
            continue
        residual[a][b] = residual[a].get(b, 0) + c
        residual[b][a] = residual[b].get(a, 0) + c
    nbrs = [sorted(r) for r in residual]

    flow = 0
    while True:
        parent = [-1] * n
        parent[0] = 0
        queue = deque([0])
        while queue and parent[1] < 0:
            a = queue.popleft()
            for b in nbrs[a]:
                if parent[b] < 0 and residual[a][b] > 0:
                    parent[b] = a
                    queue.append(b)
        if parent[1] < 0:
            break
        bottleneck = None
        b = 1
        while b != 0:
            a = parent[b]
            r = residual[a][b]
            bottleneck = r if bottleneck is None else min(bottleneck, r)
            b = a
        b = 1
        while b != 0:
            a = parent[b]
            residual[a][b] -= bottleneck
            residual[b][a] += bottleneck
            b = a
        flow += bottleneck

    reach = [False] * n
    reach[0] = True
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for b in nbrs[a]:
            if not reach[b] and residual[a][b] > 0:
                reach[b] = True
                queue.append(b)
    side = frozenset(x for x in g.vertices if reach[node[x]])
    cut = tuple(key for key in g.edges if (key[0] in side) != (key[1] in side))
    value = Fraction(sum(g._int_caps[key] for key in cut), g._scale)
    assert value == Fraction(flow, g._scale), "max-flow/min-cut mismatch"
    return CutResult(value, cut, side)


def terminal_cut(g, s):
    """Min cut separating terminal subset ``s`` from the other terminals."""
    mask = g.subset_mask(s)
    if not is_proper(mask, g.k):
        raise InvalidInputError("terminal subset must be proper and nonempty")
    inside = g.subset_ids(mask)
    outside = g.subset_ids(full_mask(g.k) & ~mask)
    return max_flow_min_cut(g, inside, outside)


def cut_vector(g, limit=ENUMERATION_LIMIT):
    """The terminal cut function as a type vector over all proper subsets."""
    if g.k > limit:
        raise ResourceLimitError(f"{g.k} terminals exceeds enumeration limit {limit}")
    entries = {}
    full = full_mask(g.k)
    for mask in range(1, full):
        comp = full & ~mask
        if comp in entries:
            entries[mask] = entries[comp]
        else:
            entries[mask] = terminal_cut(g, mask).value
    return TypeVector(g.terminals, entries)


def min_terminal_cut(g, limit=ENUMERATION_LIMIT):
    """(minimum terminal cut value, lexicographically-first minimising subset)."""
    pi = cut_vector(g, limit)
    best = None
    for mask in sorted(range(1, full_mask(g.k)), key=lex_key):
        val = pi[mask]
        if best is None or val < best[0]:
            best = (val, mask)
    return best[0], g.subset_ids(best[1])


def _scaled_arrays(g):
    eu = np.array([g._index[u] for u, _ in g.edges], dtype=np.int64)
    ev = np.array([g._index[v] for _, v in g.edges], dtype=np.int64)
    caps = list(g._int_caps.values())
    if sum(caps) < _kernels.INT64_SAFE:
        w = np.array(caps, dtype=np.int64)
    else:
        w = np.array(caps, dtype=object)
    return eu, ev, w


def brute_force_cut_table(g):
    """Brute-force terminal cut values for every terminal mask (index = mask).

    Enumerates all vertex bipartitions; entry ``mask`` is the cheapest one
    whose terminal trace is ``mask``.  Entries 0 and full are 0.
    """
    n = len(g.vertices)
    if n > BRUTE_FORCE_VERTEX_LIMIT:
        raise ResourceLimitError(f"{n} vertices exceeds brute-force limit {BRUTE_FORCE_VERTEX_LIMIT}")
    eu, ev, w = _scaled_arrays(g)
    values = _kernels.all_cut_values(n, eu, ev, w)
    positions = np.arange(g.k, dtype=np.int64)  # terminals occupy the first k vertex slots
    table = _kernels.restrict_min(values, positions, 1 << g.k)
    return [Fraction(int(x), g._scale) for x in table.tolist()]


def brute_force_cut(g, s):
    mask = g.subset_mask(s)
    if not is_proper(mask, g.k):
        raise InvalidInputError("terminal subset must be proper and nonempty")
    return brute_force_cut_table(g)[mask]


def combine_realizations(g1, g2, a, b):
    """Graph realizing ``a*cut(g1) + b*cut(g2)``: scale, then glue at terminals.

    Steiner vertices of ``g2`` that collide with vertex names of ``g1`` get a
    prime suffix until unique.
    """
    a, b = as_rational(a), as_rational(b)
    if a <= 0 or b <= 0:
        raise InvalidInputError("scaling factors must be positive")
    if set(g1.terminals) != set(g2.terminals):
        raise InvalidInputError("graphs have different terminal sets")
    taken = set(g1.vertices)
    rename = {t: t for t in g2.terminals}
    for x in g2.vertices:
        if x in rename:
            continue
        y = x
        while y in taken:
            y += "'"
        taken.add(y)
        rename[x] = y
    edges = [(u, v, a * c) for (u, v), c in g1.edges.items()]
    edges += [(rename[u], rename[v], b * c) for (u, v), c in g2.edges.items()]
    vertices = list(g1.vertices) + [rename[x] for x in g2.vertices]
    return Graph(g1.terminals, edges, vertices)


def parse_graph(text):
    """Parse the line-oriented graph format (``terminals ...`` / ``edge u v c``)."""
    terminals = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head == "terminals":
            if terminals is not None:
                raise InvalidInputError(f"line {lineno}: duplicate terminals statement")
            terminals = parts[1:]
        elif head == "edge":
            if terminals is None:
                raise InvalidInputError(f"line {lineno}: terminals statement must come first")
            if len(parts) != 4:
                raise InvalidInputError(f"line {lineno}: expected 'edge <u> <v> <capacity>'")
            cap = parts[3]
            if not _CAPACITY_RE.match(cap):
                raise InvalidInputError(f"line {lineno}: bad capacity {cap!r}")
            value = as_rational(cap)
            if value <= 0:
                raise InvalidInputError(f"line {lineno}: capacity must be positive")
            edges.append((parts[1], parts[2], value))
        else:
            raise InvalidInputError(f"line {lineno}: unknown statement {head!r}")
    if terminals is None:
        raise InvalidInputError("missing terminals statement")
    return Graph(terminals, edges)


def format_graph(g):
    lines = ["terminals " + " ".join(g.terminals)]
    for (u, v), c in g.edges.items():
        lines.append(f"edge {u} {v} {c}")
    return "\n".join(lines) + "\n"


def load_graph(path):
    with open(path) as fh:
        return parse_graph(fh.read())
