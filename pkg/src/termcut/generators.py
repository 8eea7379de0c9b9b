"""Seeded random instances for property suites.

Randomness comes from the raw 64-bit output of numpy's PCG64 bit generator
(stable across numpy versions, unlike ``Generator`` distribution methods);
bounded integers are drawn by rejection, so a seed fixes every instance on
every platform.
"""
from fractions import Fraction

import numpy as np

from .graph import Graph
from .subsets import full_mask, pairs
from .typevec import TypeVector, induced_metric

MASK64 = (1 << 64) - 1


class Rng:
    def __init__(self, seed):
        seed = int(seed)
        if not 0 <= seed <= MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self._bits = np.random.PCG64(seed)

    def raw(self):
        return int(self._bits.random_raw())

    def below(self, n):
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (MASK64 + 1) - (MASK64 + 1) % n
        while True:
            x = self.raw()
            if x < limit:
                return x % n

    def between(self, lo, hi):
        return lo + self.below(hi - lo + 1)

    def chance(self, num, den):
        return self.below(den) < num

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def shuffle(self, items):
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def rational(self, max_num=4, max_den=3):
        return Fraction(self.between(1, max_num), self.between(1, max_den))


def random_graph(rng, k, steiner=0, density=(1, 2), max_num=4, max_den=3, connected=True):
    """Terminals t0..t{k-1}, steiner vertices s0.., rational capacities.

    With ``connected`` a random spanning tree is laid down first; every other
    vertex pair then gets an edge with probability ``density``.
    """
    terms = [f"t{i}" for i in range(k)]
    names = terms + [f"s{i}" for i in range(steiner)]
    n = len(names)
    edges = {}
    if connected:
        order = rng.shuffle(list(range(n)))
        for pos in range(1, n):
            a, b = order[pos], order[rng.below(pos)]
            edges[(min(a, b), max(a, b))] = rng.rational(max_num, max_den)
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) not in edges and rng.chance(*density):
                edges[(a, b)] = rng.rational(max_num, max_den)
    return Graph(terms, [(names[a], names[b], c) for (a, b), c in sorted(edges.items())], names)


def _random_hierarchy(rng, mask, out):
    """Split ``mask`` recursively into 2 or 3 random nonempty parts."""
    bits = [1 << i for i in range(mask.bit_length()) if mask >> i & 1]
    if len(bits) == 1:
        return
    parts = min(len(bits), rng.between(2, 3))
    rng.shuffle(bits)
    cuts = sorted(rng.shuffle(list(range(1, len(bits))))[: parts - 1])
    bounds = [0] + cuts + [len(bits)]
    for lo, hi in zip(bounds, bounds[1:]):
        sub = sum(bits[lo:hi])
        out.append(sub)
        _random_hierarchy(rng, sub, out)


def random_laminar_gamma(rng, terminals, keep=(2, 3), max_num=4, max_den=3):
    """Random weights on a random subfamily of a random hierarchy over the terminals."""
    k = len(terminals)
    family = []
    _random_hierarchy(rng, full_mask(k), family)
    chosen = [m for m in family if rng.chance(*keep)]
    if not chosen:
        chosen = [rng.choice(family)]
    return TypeVector(terminals, {m: rng.rational(max_num, max_den) for m in chosen})


def random_vector(rng, terminals, n_sets, max_num=4, max_den=3):
    k = len(terminals)
    entries = {}
    for _ in range(n_sets):
        m = rng.between(1, full_mask(k) - 1)
        entries[m] = rng.rational(max_num, max_den)
    return TypeVector(terminals, entries)


def dominating_beta(rng, gamma, n_sets=None, max_num=4, max_den=3):
    """Random beta with D_beta >= D_gamma, tight on at least one pair when gamma != 0.

    A random vector is topped up with singletons on every terminal whose
    pairs it fails to cut, then scaled by max D_gamma / D_beta over pairs.
    """
    k = gamma.k
    terms = gamma.terminals
    base = random_vector(rng, terms, k if n_sets is None else n_sets, max_num, max_den)
    entries = dict(base.items())
    d = induced_metric(base)
    for i, j in pairs(k):
        if d(i, j) == 0:
            for t in (i, j):
                entries[1 << t] = entries.get(1 << t, Fraction(0)) + rng.rational(max_num, max_den)
            d = induced_metric(TypeVector(terms, entries))
    base = TypeVector(terms, entries)
    d_base = induced_metric(base)
    d_gamma = induced_metric(gamma)
    ratios = [d_gamma(i, j) / d_base(i, j) for i, j in pairs(k) if d_gamma(i, j) > 0]
    if not ratios:
        return base
    return base.scale(max(ratios))


def random_metric_vector(rng, k, n_sets=None):
    """Random type vector whose induced metric is used for LP instances."""
    return random_vector(rng, [str(i) for i in range(k)], n_sets or rng.between(1, 2 * k))


def random_spanning_tree(rng, k):
    order = rng.shuffle(list(range(k)))
    return [tuple(sorted((order[p], order[rng.below(p)]))) for p in range(1, k)]
