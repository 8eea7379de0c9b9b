"""Necessary conditions for a vector to be a terminal cut function.

Checks run in order: complement symmetry (immediate from the definition of
a terminal cut, included as plumbing), submodularity, then for small k a
sweep over maximal laminar families solving one separation LP each.  A
negative LP gap exhibits a laminar inequality the vector violates.
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from . import _kernels
from .errors import InvalidInputError, ResourceLimitError
from .simplex import OPTIMAL, LPProblem, solve_lp
from .subsets import ENUMERATION_LIMIT, canonical_key, cuts_pair, full_mask, indices, pairs, proper_masks
from .typevec import LaminarFamily, TypeVector, crossing_pair, dominance_witness, induced_metric, weighted_cut

SWEEP_LIMIT = 7

CLEAN = "no known necessary condition violated"


@dataclass
class Finding:
    check: str
    passed: bool
    witness: object = None
    detail: str = ""
    plumbing: bool = False


@dataclass
class ConditionReport:
    terminals: tuple
    findings: list = field(default_factory=list)

    @property
    def clean(self):
        return all(f.passed for f in self.findings)

    @property
    def verdict(self):
        bad = self.first_violation()
        return CLEAN if bad is None else f"{bad.check} violated: {bad.detail}"

    def first_violation(self):
        return next((f for f in self.findings if not f.passed), None)

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "clean": self.clean,
            "findings": [
                {
                    "check": f.check,
                    "passed": f.passed,
                    "detail": f.detail,
                    "plumbing": f.plumbing,
                    "witness": _witness_json(self.terminals, f.witness),
                }
                for f in self.findings
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def table(self):
        rows = [("check", "status", "detail")]
        for f in self.findings:
            name = f.check + (" (definitional)" if f.plumbing else "")
            rows.append((name, "pass" if f.passed else "FAIL", f.detail))
        widths = [max(len(r[i]) for r in rows) for i in range(3)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


def _witness_json(terminals, w):
    if w is None:
        return None
    if isinstance(w, TypeVector):
        return w.to_dict()
    if isinstance(w, (tuple, list)):
        return [_witness_json(terminals, x) for x in w]
    if isinstance(w, int):
        return [terminals[i] for i in indices(w)]
    return str(w)


def _complete(pi, k=None):
    """Dense list ``values[mask]`` of a complete candidate vector."""
    if isinstance(pi, TypeVector):
        k = pi.k
        return [pi[m] if 0 < m < full_mask(k) else Fraction(0) for m in range(1 << k)]
    if k is None:
        raise InvalidInputError("k required for a plain mapping")
    missing = [m for m in range(1, full_mask(k)) if m not in pi]
    if missing:
        raise InvalidInputError(f"incomplete vector: {len(missing)} coordinates missing")
    return [Fraction(pi[m]) if 0 < m < full_mask(k) else Fraction(0) for m in range(1 << k)]


def _k_of(pi, k):
    return pi.k if isinstance(pi, TypeVector) else k


def check_complement_symmetry(pi, k=None):
    k = _k_of(pi, k)
    vals = _complete(pi, k)
    full = full_mask(k)
    for m in proper_masks(k):
        c = full & ~m
        if vals[m] != vals[c]:
            return Finding("complement_symmetry", False, (m, c), f"pi_S={vals[m]} but pi_(T-S)={vals[c]}", True)
    return Finding("complement_symmetry", True, plumbing=True)


def _scaled(vals):
    scale = lcm(*(v.denominator for v in vals))
    ints = [int(v * scale) for v in vals]
    if max(abs(x) for x in ints) * 4 < _kernels.INT64_SAFE:
        return np.array(ints, dtype=np.int64)
    return np.array(ints, dtype=object)


def check_submodularity(pi, k=None):
    """pi_S + pi_S' >= pi_(S&S') + pi_(S|S') whenever both are proper nonempty."""
    k = _k_of(pi, k)
    vals = _complete(pi, k)
    v = _scaled(vals)
    full = full_mask(k)
    masks = np.arange(1 << k, dtype=np.int64)
    for s in sorted(range(1, full), key=canonical_key):
        inter = masks & s
        union = masks | s
        ok = (inter != 0) & (union != full) & (masks != 0) & (masks != full)
        lhs = v[s] + v
        rhs = v[inter] + v[union]
        bad = np.nonzero(ok & (lhs < rhs))[0]
        if bad.size:
            t = int(min(bad.tolist(), key=canonical_key))
            return Finding(
                "submodularity",
                False,
                (s, t),
                f"{vals[s]} + {vals[t]} < {vals[s & t]} + {vals[s | t]}",
            )
    return Finding("submodularity", True)


def check_pair_inequality(pi, beta, gamma):
    """Judge <beta, pi> >= <gamma, pi>, after checking the laminar and dominance premises."""
    if beta.terminals != gamma.terminals:
        raise InvalidInputError("beta and gamma have different terminals")
    bad = crossing_pair(list(gamma.support))
    if bad is not None:
        return Finding("pair_inequality", False, bad, "premise: not laminar")
    pair = dominance_witness(induced_metric(beta), induced_metric(gamma))
    if pair is not None:
        return Finding("pair_inequality", False, pair, "premise: dominance")
    lhs = weighted_cut(pi, beta)
    rhs = weighted_cut(pi, gamma)
    if lhs < rhs:
        return Finding("pair_inequality", False, (beta, gamma), f"violated: {lhs} < {rhs} (gap {lhs - rhs})")
    return Finding("pair_inequality", True, detail=f"{lhs} >= {rhs}" + (" (equality)" if lhs == rhs else ""))


def _binary_trees(leaves):
    """All rooted binary trees on ``leaves`` (a mask), as tuples of node masks below the root."""
    if leaves & (leaves - 1) == 0:
        return [()]
    low = leaves & -leaves
    rest = leaves & ~low
    out = []
    sub = rest
    # left part always contains the lowest leaf, which dedupes the unordered split
    while True:
        left = low | sub
        if left != leaves:
            right = leaves & ~left
            for lt in _binary_trees(left):
                for rt in _binary_trees(right):
                    out.append((left, right) + lt + rt)
        if sub == 0:
            break
        sub = (sub - 1) & rest
    return out


def enumerate_maximal_laminar(terminals, limit=SWEEP_LIMIT):
    """All maximal laminar families of proper nonempty subsets of ``terminals``.

    Each is the node set (minus the root) of a rooted binary tree with the
    terminals as leaves; there are (2k-3)!! of them.
    """
    terminals = tuple(str(t) for t in terminals)
    k = len(terminals)
    if k > limit:
        raise ResourceLimitError(f"{k} terminals exceeds laminar sweep limit {limit}")
    if k < 2:
        raise InvalidInputError("need at least two terminals")
    fams = {tuple(sorted(nodes, key=canonical_key)) for nodes in _binary_trees(full_mask(k))}
    return [LaminarFamily(terminals, list(f)) for f in sorted(fams, key=lambda f: [canonical_key(m) for m in f])]


@dataclass
class Separation:
    gap: Fraction
    beta: TypeVector
    gamma: TypeVector


def separation_lp(pi, fam):
    k = len(fam.terminals)
    terms = fam.terminals
    bmasks = proper_masks(k)
    bname = {m: "b" + "{" + ",".join(terms[i] for i in indices(m)) + "}" for m in bmasks}
    gname = {m: "g" + "{" + ",".join(terms[i] for i in indices(m)) + "}" for m in fam.sets}
    objective = {bname[m]: pi[m] for m in bmasks}
    for m in fam.sets:
        objective[gname[m]] = -pi[m]
    lp = LPProblem(list(bname.values()) + list(gname.values()), "min", objective)
    for i, j in pairs(k):
        coeffs = {bname[m]: 1 for m in bmasks if cuts_pair(m, i, j)}
        for m in fam.sets:
            if cuts_pair(m, i, j):
                coeffs[gname[m]] = -1
        lp.add(coeffs, ">=", 0, name=f"dominance {terms[i]},{terms[j]}")
    lp.add({gname[m]: 1 for m in fam.sets}, "=", 1, name="normalization")
    return lp, bname, gname


def most_violated_laminar(pi, fam):
    """Minimum of <beta,pi> - <gamma,pi> over D_beta >= D_gamma, supp(gamma) in fam, sum(gamma) = 1."""
    if not isinstance(pi, TypeVector):
        raise InvalidInputError("pi must be a TypeVector")
    if pi.terminals != fam.terminals:
        raise InvalidInputError("pi and family have different terminals")
    if pi.k > SWEEP_LIMIT:
        raise ResourceLimitError(f"{pi.k} terminals exceeds laminar sweep limit {SWEEP_LIMIT}")
    lp, bname, gname = separation_lp(pi, fam)
    sol = solve_lp(lp)
    if sol.status != OPTIMAL:
        raise AssertionError(f"separation LP is always feasible and bounded, got {sol.status}")
    beta = TypeVector(pi.terminals, {m: sol.assignment[n] for m, n in bname.items()})
    gamma = TypeVector(pi.terminals, {m: sol.assignment[n] for m, n in gname.items()})
    return Separation(sol.value, beta, gamma)


def laminar_sweep(pi, families=None):
    """First family with a negative separation gap, as a Finding."""
    fams = enumerate_maximal_laminar(pi.terminals) if families is None else families
    worst = None
    for fam in fams:
        sep = most_violated_laminar(pi, fam)
        if sep.gap < 0:
            return Finding(
                "laminar_inequality",
                False,
                (sep.beta, sep.gamma),
                f"<beta,pi> - <gamma,pi> = {sep.gap} for family {fam!r}",
            )
        if worst is None or sep.gap < worst:
            worst = sep.gap
    return Finding("laminar_inequality", True, detail=f"{len(fams)} families, minimum gap {worst}")


def full_report(pi, k=None, sweep_limit=SWEEP_LIMIT, families=None):
    """All checks in order, stopping at the first violation."""
    if not isinstance(pi, TypeVector):
        k = _k_of(pi, k)
        vals = _complete(pi, k)
        pi = TypeVector([str(i) for i in range(k)], {m: vals[m] for m in range(1, full_mask(k))})
    if pi.k > ENUMERATION_LIMIT:
        raise ResourceLimitError(f"{pi.k} terminals exceeds enumeration limit {ENUMERATION_LIMIT}")
    rep = ConditionReport(pi.terminals)
    for check in (check_complement_symmetry, check_submodularity):
        finding = check(pi)
        rep.findings.append(finding)
        if not finding.passed:
            return rep
    if pi.k <= sweep_limit:
        rep.findings.append(laminar_sweep(pi, families))
    else:
        rep.findings.append(Finding("laminar_inequality", True, detail=f"skipped: k={pi.k} above sweep limit {sweep_limit}"))
    return rep
