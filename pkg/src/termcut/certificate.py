"""Edge-length certificates for laminar cut inequalities.

Given type vectors beta and gamma with laminar ``supp(gamma)`` and
``D_beta >= D_gamma``, this builds explicit edge lengths proving
``cut(beta) >= cut(gamma)``:

* base lengths ``ell``: every support set of beta adds ``beta_S`` to the
  edges of its canonical min-cut, so ``sum c*ell = cut(beta)`` exactly;
* per-set lengths ``ell^S``: balls around the terminals of S are grown by
  ``gamma_S`` (subsets before supersets) and ``ell^S_e`` is the length of
  edge e swept in that step.

Edges are treated as continuous segments only through interval arithmetic:
a ball around a vertex meets an edge ``(u, v)`` in a prefix measured from
``u`` and a suffix ending at ``v``, so every swept region is at most two
sub-segments per edge.
"""
import heapq
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import intervals as iv
from .errors import InvalidInputError
from .graph import terminal_cut
from .subsets import canonical_key, indices, pairs
from .typevec import crossing_pair, dominance_witness, induced_metric, weighted_cut

INF = math.inf


class EdgeLengths(dict):
    """Mapping edge key -> nonnegative rational length."""

    @classmethod
    def zeros(cls, g):
        return cls((key, Fraction(0)) for key in g.edges)

    def weighted_sum(self, g):
        return sum((g.edges[key] * length for key, length in self.items()), Fraction(0))


def _check_terminals(g, *vectors):
    for v in vectors:
        if v.terminals != g.terminals:
            raise InvalidInputError(f"vector terminals {list(v.terminals)} differ from graph terminals {list(g.terminals)}")


def accumulate_lengths(g, beta):
    """Sum of ``beta_S`` times the canonical min-cut indicator, over supp(beta)."""
    _check_terminals(g, beta)
    if not len(beta):
        raise InvalidInputError("beta has empty support")
    ell = EdgeLengths.zeros(g)
    for mask, weight in sorted(beta.items(), key=lambda kv: canonical_key(kv[0])):
        for key in terminal_cut(g, mask).cut_edges:
            ell[key] += weight
    return ell


def _dijkstra(g, ell, sources):
    dist = {x: INF for x in g.vertices}
    heap = []
    for s in sources:
        dist[s] = Fraction(0)
        heap.append((Fraction(0), g._index[s], s))
    heapq.heapify(heap)
    while heap:
        d, _, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        for y in g.neighbors(x):
            key = (x, y) if x < y else (y, x)
            nd = d + ell[key]
            if nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, g._index[y], y))
    return dist


def shortest_distances(g, ell, sources=None):
    """Exact shortest-path distances ``{s: {x: d}}``; ``INF`` when unreachable.

    ``sources`` defaults to all vertices.
    """
    if set(ell) != set(g.edges):
        raise InvalidInputError("edge lengths must cover exactly the graph's edges")
    srcs = g.vertices if sources is None else sources
    return {s: _dijkstra(g, ell, [s]) for s in srcs}


def _covered(length, du, dv, radii, members):
    """Union over members of open balls, as half-open intervals on the edge."""
    head = Fraction(0)
    tail = Fraction(0)
    for t in members:
        r = radii[t]
        if du[t] < r:
            head = max(head, min(r - du[t], length))
        if dv[t] < r:
            tail = max(tail, min(r - dv[t], length))
    return iv.normalize([(Fraction(0), head), (length - tail, length)])


def edge_region_intervals(edge, length, dist, old_radii, gamma_s, members):
    """Part of edge ``(u, v)`` newly covered when each ball in ``members`` grows by ``gamma_s``.

    ``dist[t][x]`` is the distance from terminal t to vertex x; radii are
    keyed by terminal id.  Coordinates are measured from ``u``.
    """
    u, v = edge
    length = Fraction(length)
    if length == 0:
        return ()
    du = {t: dist[t][u] for t in members}
    dv = {t: dist[t][v] for t in members}
    new_radii = {t: old_radii[t] + gamma_s for t in members}
    return iv.difference(
        _covered(length, du, dv, new_radii, members),
        _covered(length, du, dv, old_radii, members),
    )


@dataclass
class LengthDecomposition:
    base: EdgeLengths
    order: list
    parts: dict
    regions: dict
    radii_trace: list = field(default_factory=list)

    def to_dict(self, g, terminals):
        def ids(mask):
            return [terminals[i] for i in indices(mask)]

        return {
            "base": [{"edge": list(key), "length": str(val)} for key, val in self.base.items()],
            "sets": [
                {
                    "set": ids(mask),
                    "lengths": [
                        {"edge": list(key), "length": str(val)} for key, val in self.parts[mask].items() if val
                    ],
                    "intervals": [
                        {"edge": list(key), "segments": [[str(a), str(b)] for a, b in segs]}
                        for key, segs in self.regions[mask].items()
                        if segs
                    ],
                }
                for mask in self.order
            ],
            "radii_trace": [
                {
                    "set": ids(step["set"]),
                    "before": {t: str(r) for t, r in step["before"].items()},
                    "after": {t: str(r) for t, r in step["after"].items()},
                }
                for step in self.radii_trace
            ],
        }


def build_length_decomposition(g, ell, gamma):
    """Grow terminal balls over supp(gamma), subsets first, recording each swept region."""
    _check_terminals(g, gamma)
    support = list(gamma.support)
    bad = crossing_pair(support)
    if bad is not None:
        raise InvalidInputError(f"support of gamma is not laminar: {gamma.ids(bad[0])} crosses {gamma.ids(bad[1])}")
    dist = shortest_distances(g, ell, g.terminals)
    radii = {t: Fraction(0) for t in g.terminals}
    order = sorted(support, key=canonical_key)
    parts, regions, trace = {}, {}, []
    for mask in order:
        members = gamma.ids(mask)
        weight = gamma[mask]
        region = {}
        part = EdgeLengths()
        for key, length in ell.items():
            segs = edge_region_intervals(key, length, dist, radii, weight, members)
            region[key] = segs
            part[key] = iv.total_length(segs)
        before = dict(radii)
        for t in members:
            radii[t] += weight
        parts[mask] = part
        regions[mask] = region
        trace.append({"set": mask, "before": before, "after": dict(radii)})
    return LengthDecomposition(ell, order, parts, regions, trace)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        return {"passed": self.passed, "checks": [c.__dict__ for c in self.checks]}


def verify_decomposition(g, dec, gamma, cutvec):
    """Exact checks of a decomposition: disjoint regions, length budget, cut size, separation distances."""
    rep = Report()
    k = g.k

    worst = max((len(segs) for region in dec.regions.values() for segs in region.values()), default=0)
    rep.add("case_bound", worst <= 2, f"max intervals per edge and set: {worst}")

    overlap = None
    budget = None
    for key, length in dec.base.items():
        seen = []
        for mask in dec.order:
            segs = dec.regions[mask][key]
            if not iv.contained_in(segs, 0, length):
                overlap = overlap or (key, gamma.ids(mask), "outside edge")
            for other, osegs in seen:
                if iv.intersection(segs, osegs):
                    overlap = overlap or (key, gamma.ids(other), gamma.ids(mask))
            seen.append((mask, segs))
        used = sum((dec.parts[m][key] for m in dec.order), Fraction(0))
        if used > length and budget is None:
            budget = (key, used, length)
    rep.add("region_disjointness", overlap is None, "" if overlap is None else f"overlap {overlap}")
    rep.add("P1_length_budget", budget is None, "" if budget is None else f"edge {budget[0]}: {budget[1]} > {budget[2]}")

    p2 = None
    for mask in dec.order:
        lhs = dec.parts[mask].weighted_sum(g)
        rhs = gamma[mask] * cutvec[mask]
        if lhs < rhs:
            p2 = p2 or (gamma.ids(mask), lhs, rhs)
    rep.add("P2_cut_size", p2 is None, "" if p2 is None else f"set {p2[0]}: {p2[1]} < {p2[2]}")

    sep = None
    for mask in dec.order:
        inside = gamma.ids(mask)
        outside = [t for i, t in enumerate(g.terminals) if not mask >> i & 1]
        dist = _dijkstra(g, dec.parts[mask], inside)
        for t in outside:
            if dist[t] < gamma[mask]:
                sep = sep or (inside, t, dist[t], gamma[mask])
    rep.add("separation_distance", sep is None, "" if sep is None else f"set {sep[0]} to {sep[1]}: {sep[2]} < {sep[3]}")

    rad = _radii_violation(dec, gamma, k)
    rep.add("radii", rad is None, "" if rad is None else rad)
    return rep


def _radii_violation(dec, gamma, k):
    d_gamma = induced_metric(gamma)
    terms = gamma.terminals
    processed = []
    for step in dec.radii_trace:
        for t in terms:
            if step["after"][t] < step["before"][t]:
                return f"radius of {t} decreased"
        processed.append(step["set"])
        after = step["after"]
        for i, j in pairs(k):
            joint = any(m >> i & 1 and m >> j & 1 for m in processed)
            if not joint and after[terms[i]] + after[terms[j]] > d_gamma(i, j):
                return f"r_{terms[i]} + r_{terms[j]} exceeds D_gamma after {gamma.ids(step['set'])}"
    return None


@dataclass
class Theorem1Result:
    status: str
    witness: object = None
    lhs: Fraction = None
    rhs: Fraction = None
    decomposition: LengthDecomposition = None
    report: Report = None

    @property
    def holds(self):
        return self.status == "holds"

    @property
    def equality(self):
        return self.holds and self.lhs == self.rhs


def verify_theorem1(g, beta, gamma):
    """Check the premises, then the inequality and its certificate.

    ``status`` is one of ``holds``, ``not laminar``, ``dominance``, or
    ``inequality`` (a violated inequality, which a correct build never
    produces).
    """
    _check_terminals(g, beta, gamma)
    bad = crossing_pair(list(gamma.support))
    if bad is not None:
        return Theorem1Result("not laminar", witness=(gamma.ids(bad[0]), gamma.ids(bad[1])))
    d_beta, d_gamma = induced_metric(beta), induced_metric(gamma)
    pair = dominance_witness(d_beta, d_gamma)
    if pair is not None:
        i, j = pair
        return Theorem1Result(
            "dominance",
            witness=((g.terminals[i], g.terminals[j]), d_beta(i, j), d_gamma(i, j)),
        )

    needed = set(beta.support) | set(gamma.support)
    cutvals = {m: terminal_cut(g, m).value for m in needed}
    lhs = weighted_cut(cutvals, beta)
    rhs = weighted_cut(cutvals, gamma)
    if not len(gamma):
        rep = Report()
        rep.add("empty_gamma", True, "right-hand side is 0")
        return Theorem1Result("holds" if lhs >= rhs else "inequality", lhs=lhs, rhs=rhs, report=rep)
    if not len(beta):
        # D_gamma dominated by the zero metric forces gamma = 0, handled above
        raise AssertionError("nonempty gamma dominated by empty beta")

    ell = accumulate_lengths(g, beta)
    dec = build_length_decomposition(g, ell, gamma)
    rep = verify_decomposition(g, dec, gamma, cutvals)

    dist = shortest_distances(g, ell, g.terminals)
    short_pair = None
    for i, j in pairs(g.k):
        if dist[g.terminals[i]][g.terminals[j]] < d_beta(i, j):
            short_pair = (g.terminals[i], g.terminals[j])
            break
    rep.checks.insert(0, Check("distance_dominates_beta_metric", short_pair is None, "" if short_pair is None else f"pair {short_pair}"))
    total = ell.weighted_sum(g)
    rep.checks.insert(1, Check("length_sum_equals_cut", total == lhs, f"sum c*ell = {total}, cut(beta) = {lhs}"))
    status = "holds" if lhs >= rhs and rep.passed else "inequality"
    return Theorem1Result(status, lhs=lhs, rhs=rhs, decomposition=dec, report=rep)


def certificate_json(g, result):
    """Stable JSON text for a Theorem1Result (sorted keys, canonical list order)."""
    out = {
        "status": result.status,
        "lhs": None if result.lhs is None else str(result.lhs),
        "rhs": None if result.rhs is None else str(result.rhs),
    }
    if result.decomposition is not None:
        out["certificate"] = result.decomposition.to_dict(g, g.terminals)
    if result.report is not None:
        out["report"] = result.report.to_dict()
    return json.dumps(out, indent=2, sort_keys=True)
