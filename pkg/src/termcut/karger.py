"""Spanning trees of terminal metrics and the terminal approximate-cut count."""
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from . import _kernels
from .certificate import verify_theorem1
from .duality import potential, primal_feasible, solve_dual, solve_primal, uncrossing_steps
from .errors import DegenerateInstanceError, InvalidInputError
from .graph import cut_vector
from .subsets import cuts_pair, full_mask, proper_masks
from .typevec import TypeVector, dominates, induced_metric, is_laminar


@dataclass(frozen=True)
class SpanningTree:
    terminals: tuple
    edges: tuple
    cost: Fraction

    def __post_init__(self):
        k = len(self.terminals)
        if len(self.edges) != k - 1:
            raise InvalidInputError(f"a spanning tree on {k} terminals has {k - 1} edges")
        parent = list(range(k))
        for i, j in self.edges:
            ri, rj = _find(parent, i), _find(parent, j)
            if ri == rj:
                raise InvalidInputError("edges contain a cycle")
            parent[ri] = rj


def _find(parent, i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def tree_from_edges(terminals, edges, d=None):
    edges = tuple(tuple(sorted(e)) for e in edges)
    cost = sum((d(i, j) for i, j in edges), Fraction(0)) if d is not None else Fraction(0)
    return SpanningTree(tuple(terminals), edges, cost)


def mst(d):
    """Kruskal on the complete graph over terminals; ties by (i, j) order."""
    k = d.k
    if k < 2:
        raise InvalidInputError("need at least two terminals")
    parent = list(range(k))
    chosen = []
    for (i, j), w in sorted(d.items(), key=lambda item: (item[1], item[0])):
        ri, rj = _find(parent, i), _find(parent, j)
        if ri != rj:
            parent[ri] = rj
            chosen.append((i, j))
    return tree_from_edges(d.terminals, chosen, d)


def tree_cut_edges(tau, s):
    return sum(1 for i, j in tau.edges if cuts_pair(s, i, j))


def sets_cutting_exactly(tau, chosen):
    """The two complementary subsets whose cut tree edges are exactly ``chosen``."""
    chosen = {tuple(sorted(e)) for e in chosen}
    if not chosen:
        raise InvalidInputError("edge subset must be nonempty")
    if not chosen <= set(tau.edges):
        raise InvalidInputError("edge subset is not part of the tree")
    k = len(tau.terminals)
    parent = list(range(k))
    for i, j in tau.edges:
        if (i, j) not in chosen:
            parent[_find(parent, i)] = _find(parent, j)
    comp = [_find(parent, i) for i in range(k)]
    adj = {}
    for i, j in chosen:
        adj.setdefault(comp[i], []).append(comp[j])
        adj.setdefault(comp[j], []).append(comp[i])
    colour = {comp[0]: 0}
    stack = [comp[0]]
    while stack:
        c = stack.pop()
        for o in adj.get(c, ()):
            if o not in colour:
                colour[o] = 1 - colour[c]
                stack.append(o)
            elif colour[o] == colour[c]:
                raise AssertionError("component graph of a tree edge subset is not bipartite")
    s = 0
    for i in range(k):
        if colour[comp[i]] == 0:
            s |= 1 << i
    return s, full_mask(k) & ~s


@dataclass
class KargerResult:
    count: int
    bound: int
    min_cut: Fraction
    alpha: int
    approx_sets: tuple = ()

    @property
    def holds(self):
        return self.count < self.bound


def _check_alpha(k, alpha):
    if isinstance(alpha, bool) or not isinstance(alpha, int):
        raise InvalidInputError("alpha must be an integer")
    if alpha < 1 or 6 * alpha > k:
        raise InvalidInputError(f"alpha must satisfy 1 <= alpha <= k/6 (k={k}, alpha={alpha})")


def approximate_cuts(g, alpha, pi=None):
    _check_alpha(g.k, alpha)
    pi = cut_vector(g) if pi is None else pi
    masks = proper_masks(g.k)
    low = min(pi[m] for m in masks)
    if low == 0:
        raise DegenerateInstanceError("minimum terminal cut is 0; the count bound needs a positive minimum")
    return low, tuple(m for m in masks if pi[m] <= alpha * low)


def verify_karger_bound(g, alpha, pi=None):
    """Count subsets (both sides) with cut <= alpha * min cut, against 5 * C(k, 2 alpha)."""
    low, sets = approximate_cuts(g, alpha, pi)
    return KargerResult(len(sets), 5 * comb(g.k, 2 * alpha), low, alpha, sets)


@dataclass
class ChainReport:
    alpha: int
    count: int
    bound: int
    min_cut: Fraction
    beta: TypeVector
    gamma: TypeVector
    primal_value: Fraction
    dual_value: Fraction = None
    mst_cost: Fraction = None
    cut_beta: Fraction = None
    cut_gamma: Fraction = None
    checks: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.checks.values())


def theorem2_chain(g, alpha, dual_limit=7):
    """Build the objects of the counting argument on a concrete graph and check they cohere.

    beta = indicator of approximate cuts; gamma = an optimal packing for
    D_beta, uncrossed to a laminar support.  The dual LP is solved only for
    ``k <= dual_limit`` (it has 2^k - 2 rows).
    """
    pi = cut_vector(g)
    low, sets = approximate_cuts(g, alpha, pi)
    k = g.k
    beta = TypeVector.indicator(g.terminals, sets)
    d_beta = induced_metric(beta)
    sol, gamma0 = solve_primal(d_beta)

    steps = list(uncrossing_steps(gamma0))
    gamma = steps[-1]
    pots = [potential(x) for x in steps]
    checks = {
        "primal_solution_feasible": primal_feasible(gamma0, d_beta),
        "uncrossing_keeps_objective": all(x.total() == sol.value for x in steps),
        "uncrossing_keeps_feasibility": all(primal_feasible(x, d_beta) for x in steps),
        "uncrossing_potential_decreases": all(b < a for a, b in zip(pots, pots[1:])),
        "I1_laminar": is_laminar(gamma.support),
        "I2_dominance": dominates(d_beta, induced_metric(gamma)),
    }
    tau = mst(d_beta)
    identity = sum(tree_cut_edges(tau, m) for m in beta.support)
    checks["tree_cost_identity"] = tau.cost == identity
    checks["mst_within_twice_lp"] = sol.value <= tau.cost <= 2 * sol.value
    dual_value = None
    if k <= dual_limit:
        dual = solve_dual(d_beta)
        dual_value = dual.value
        checks["strong_duality"] = dual.value == sol.value

    cut_beta = sum((pi[m] for m in beta.support), Fraction(0))
    cut_gamma = sum((w * pi[m] for m, w in gamma.items()), Fraction(0))
    checks["laminar_inequality"] = cut_beta >= cut_gamma
    if len(gamma) and len(beta) and k <= 8:
        checks["laminar_certificate"] = verify_theorem1(g, beta, gamma).holds
    # cut(gamma) >= sum(gamma) * min cut and cut(beta) <= alpha * count * min cut
    checks["packing_at_most_alpha_count"] = sol.value <= alpha * len(sets)
    checks["count_below_bound"] = len(sets) < 5 * comb(k, 2 * alpha)
    return ChainReport(alpha, len(sets), 5 * comb(k, 2 * alpha), low, beta, gamma, sol.value, dual_value, tau.cost,
                       cut_beta, cut_gamma, checks)


def tree_census(tau):
    """Number of proper subsets cutting exactly i tree edges, for i = 0..k-1."""
    k = len(tau.terminals)
    eu = np.array([i for i, _ in tau.edges], dtype=np.int64)
    ev = np.array([j for _, j in tau.edges], dtype=np.int64)
    per_mask = _kernels.all_cut_values(k, eu, ev, np.ones(len(tau.edges), dtype=np.int64))
    counts = np.bincount(per_mask[1:-1], minlength=k)
    return [int(c) for c in counts]
