"""The packing LP over terminal subsets, its dual, and uncrossing.

Primal: maximise the total weight of subsets subject to, for each terminal
pair, the weight of subsets cutting the pair being at most the metric
distance.  Dual: nonnegative pair weights ``x`` with every subset crossed
by total weight at least 1, minimising ``sum x * d`` (a relaxation of the
minimum spanning tree of the metric).
"""
from fractions import Fraction

from .errors import InvalidInputError, ResourceLimitError
from .simplex import LPProblem, solve_lp
from .subsets import ENUMERATION_LIMIT, canonical_key, crossing, cuts_pair, indices, pairs, popcount, proper_masks
from .typevec import TypeVector


def subset_name(terminals, mask):
    return "{" + ",".join(terminals[i] for i in indices(mask)) + "}"


def pair_name(terminals, i, j):
    return f"x[{terminals[i]},{terminals[j]}]"


def _check_limit(k, limit):
    if k > limit:
        raise ResourceLimitError(f"{k} terminals exceeds enumeration limit {limit}")


def build_primal(d, limit=ENUMERATION_LIMIT):
    k = d.k
    _check_limit(k, limit)
    masks = proper_masks(k)
    names = [subset_name(d.terminals, m) for m in masks]
    lp = LPProblem(names, "max", {n: 1 for n in names})
    for i, j in pairs(k):
        coeffs = {n: 1 for m, n in zip(masks, names) if cuts_pair(m, i, j)}
        lp.add(coeffs, "<=", d(i, j), name=f"pair {d.terminals[i]},{d.terminals[j]}")
    return lp


def build_dual(d, limit=ENUMERATION_LIMIT):
    k = d.k
    _check_limit(k, limit)
    names = {p: pair_name(d.terminals, *p) for p in pairs(k)}
    lp = LPProblem(list(names.values()), "min", {names[p]: d(*p) for p in pairs(k)})
    for m in proper_masks(k):
        coeffs = {names[(i, j)]: 1 for (i, j) in pairs(k) if cuts_pair(m, i, j)}
        lp.add(coeffs, ">=", 1, name=subset_name(d.terminals, m))
    return lp


def primal_vector(d, solution):
    """Primal LP solution as a TypeVector."""
    return TypeVector(
        d.terminals,
        {m: solution.assignment[subset_name(d.terminals, m)] for m in proper_masks(d.k)},
    )


def solve_primal(d, limit=ENUMERATION_LIMIT):
    sol = solve_lp(build_primal(d, limit))
    return sol, primal_vector(d, sol)


def solve_dual(d, limit=ENUMERATION_LIMIT):
    return solve_lp(build_dual(d, limit))


def primal_feasible(gamma, d):
    """Exact feasibility of ``gamma`` in the packing LP for metric ``d``."""
    for (i, j), bound in d.items():
        load = sum((w for m, w in gamma.items() if cuts_pair(m, i, j)), Fraction(0))
        if load > bound:
            return False
    return True


def potential(gamma):
    return sum((w * popcount(m) for m, w in gamma.items()), Fraction(0))


def uncross_step(gamma, s, t):
    """Move weight ``gamma_s`` from the crossing pair (s, t) onto s-t and t-s.

    Requires ``0 < gamma_s <= gamma_t`` and s, t crossing.  Keeps primal
    feasibility and total weight; lowers the potential by
    ``2 * gamma_s * |s & t|``.
    """
    s = _as_mask(gamma, s)
    t = _as_mask(gamma, t)
    ws, wt = gamma[s], gamma[t]
    if not (ws > 0 and wt > 0):
        raise InvalidInputError("both sets must carry positive weight")
    if ws > wt:
        raise InvalidInputError("first set must carry the smaller weight")
    if not crossing(s, t):
        raise InvalidInputError("sets must cross (intersect, with both differences nonempty)")
    entries = dict(gamma.items())
    entries[s] = Fraction(0)
    entries[t] = wt - ws
    entries[s & ~t] = entries.get(s & ~t, Fraction(0)) + ws
    entries[t & ~s] = entries.get(t & ~s, Fraction(0)) + ws
    return TypeVector(gamma.terminals, entries)


def _as_mask(gamma, s):
    if isinstance(s, int):
        return s
    pos = {x: i for i, x in enumerate(gamma.terminals)}
    return sum(1 << pos[str(x)] for x in s)


def _first_crossing(gamma):
    support = sorted(gamma.support, key=canonical_key)
    for a in range(len(support)):
        for b in range(a + 1, len(support)):
            if crossing(support[a], support[b]):
                return support[a], support[b]
    return None


def uncrossing_steps(gamma):
    """Yield ``gamma`` and every intermediate vector until the support is laminar.

    Scan order: first crossing pair in canonical subset order; the lighter
    set of the pair (ties: the earlier one) gives up its weight.  The
    potential drops by a positive multiple of ``2/D`` each step, where D is
    the common denominator of the input, so the loop terminates.
    """
    yield gamma
    while True:
        found = _first_crossing(gamma)
        if found is None:
            return
        a, b = found
        if gamma[a] > gamma[b]:
            a, b = b, a
        gamma = uncross_step(gamma, a, b)
        yield gamma


def uncross_to_laminar(gamma):
    last = gamma
    for last in uncrossing_steps(gamma):
        pass
    return last
