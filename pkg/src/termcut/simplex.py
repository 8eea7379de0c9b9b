"""Exact two-phase tableau simplex over ``Fraction`` with Bland's rule."""
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidInputError

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_SENSES = ("<=", ">=", "=")


@dataclass
class Constraint:
    coeffs: dict
    sense: str
    rhs: Fraction
    name: str = ""


@dataclass
class LPProblem:
    """``direction`` is "max" or "min"; variables are nonnegative unless listed in ``free``."""

    variables: list
    direction: str
    objective: dict
    constraints: list = field(default_factory=list)
    free: frozenset = frozenset()

    def __post_init__(self):
        if self.direction not in ("max", "min"):
            raise InvalidInputError(f"direction must be 'max' or 'min', not {self.direction!r}")
        names = set(self.variables)
        if len(names) != len(self.variables):
            raise InvalidInputError("duplicate variable names")
        self.objective = {v: Fraction(c) for v, c in self.objective.items()}
        for v in list(self.objective) + list(self.free):
            if v not in names:
                raise InvalidInputError(f"undeclared variable {v!r}")
        for con in self.constraints:
            if con.sense not in _SENSES:
                raise InvalidInputError(f"bad constraint sense {con.sense!r}")
            for v in con.coeffs:
                if v not in names:
                    raise InvalidInputError(f"constraint {con.name!r} references undeclared variable {v!r}")

    def add(self, coeffs, sense, rhs, name=""):
        con = Constraint({v: Fraction(c) for v, c in coeffs.items()}, sense, Fraction(rhs), name)
        for v in con.coeffs:
            if v not in self.variables:
                raise InvalidInputError(f"undeclared variable {v!r}")
        if sense not in _SENSES:
            raise InvalidInputError(f"bad constraint sense {sense!r}")
        self.constraints.append(con)

    def value_of(self, assignment):
        return sum((c * assignment.get(v, 0) for v, c in self.objective.items()), Fraction(0))

    def violations(self, assignment):
        """Names (or indices) of constraints the assignment breaks, exactly."""
        bad = []
        for v in self.variables:
            if v not in self.free and assignment.get(v, 0) < 0:
                bad.append(f"nonnegativity of {v}")
        for i, con in enumerate(self.constraints):
            lhs = sum((c * assignment.get(v, 0) for v, c in con.coeffs.items()), Fraction(0))
            ok = lhs <= con.rhs if con.sense == "<=" else lhs >= con.rhs if con.sense == ">=" else lhs == con.rhs
            if not ok:
                bad.append(con.name or str(i))
        return bad

    def to_dict(self):
        return {
            "variables": list(self.variables),
            "direction": self.direction,
            "objective": {v: str(c) for v, c in self.objective.items()},
            "free": sorted(self.free),
            "constraints": [
                {"name": c.name, "coeffs": {v: str(x) for v, x in c.coeffs.items()}, "sense": c.sense, "rhs": str(c.rhs)}
                for c in self.constraints
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data):
        lp = cls(list(data["variables"]), data["direction"], {v: Fraction(c) for v, c in data["objective"].items()},
                 free=frozenset(data.get("free", ())))
        for c in data["constraints"]:
            lp.add({v: Fraction(x) for v, x in c["coeffs"].items()}, c["sense"], Fraction(c["rhs"]), c.get("name", ""))
        return lp


@dataclass
class LPSolution:
    status: str
    value: Fraction = None
    assignment: dict = None
    pivots: int = 0

    def to_dict(self):
        return {
            "status": self.status,
            "value": None if self.value is None else str(self.value),
            "assignment": None if self.assignment is None else {v: str(x) for v, x in self.assignment.items()},
        }


class _Tableau:
    """Rows ``A x = b`` with ``b >= 0`` and a basis; objective maximised."""

    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols
        self.pivots = 0

    def pivot(self, r, c):
        row = self.rows[r]
        p = row[c]
        if p != 1:
            inv = 1 / p
            for j in range(self.ncols):
                if row[j]:
                    row[j] *= inv
            self.rhs[r] *= inv
        nz = [j for j in range(self.ncols) if row[j]]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[c]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c
        self.pivots += 1

    def reduced_costs(self, cost):
        # d_j = c_j - c_B . column_j ; positive d_j improves a max problem
        d = list(cost)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                for j in range(self.ncols):
                    if row[j]:
                        d[j] -= cb * row[j]
        return d

    def optimize(self, cost, allowed):
        """Bland's rule: lowest-index improving column, lowest-index leaving basic variable."""
        d = self.reduced_costs(cost)
        while True:
            enter = next((j for j in range(self.ncols) if allowed[j] and d[j] > 0), None)
            if enter is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and self.basis[i] < self.basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], enter)
            # the pivot row is now normalised; eliminate the entering column from d too
            f = d[enter]
            row = self.rows[best[1]]
            for j in range(self.ncols):
                if row[j]:
                    d[j] -= f * row[j]

    def objective(self, cost):
        return sum((cost[b] * self.rhs[i] for i, b in enumerate(self.basis)), Fraction(0))


def solve_lp(lp):
    """Solve exactly. Returns an LPSolution whose status is optimal, infeasible or unbounded."""
    # columns: one per nonnegative variable, two per free variable
    cols = []
    for v in lp.variables:
        cols.append((v, 1))
        if v in lp.free:
            cols.append((v, -1))
    col_of = {}
    for j, (v, sign) in enumerate(cols):
        col_of.setdefault(v, []).append((j, sign))
    nstruct = len(cols)

    rows, rhs, kinds = [], [], []
    for con in lp.constraints:
        row = [Fraction(0)] * nstruct
        for v, c in con.coeffs.items():
            for j, sign in col_of[v]:
                row[j] += sign * c
        b = con.rhs
        sense = con.sense
        # flipping ">= 0" rows to "<= 0" lets a slack start in the basis
        if b < 0 or (b == 0 and sense == ">="):
            row = [-x for x in row]
            b = -b
            sense = {"<=": ">=", ">=": "<=", "=": "="}[sense]
        rows.append(row)
        rhs.append(b)
        kinds.append(sense)

    nslack = sum(1 for s in kinds if s != "=")
    nart = sum(1 for s in kinds if s != "<=")
    ncols = nstruct + nslack + nart
    basis = []
    s_at = nstruct
    a_at = nstruct + nslack
    full_rows = []
    for row, sense in zip(rows, kinds):
        ext = row + [Fraction(0)] * (nslack + nart)
        if sense == "<=":
            ext[s_at] = Fraction(1)
            basis.append(s_at)
            s_at += 1
        elif sense == ">=":
            ext[s_at] = Fraction(-1)
            s_at += 1
            ext[a_at] = Fraction(1)
            basis.append(a_at)
            a_at += 1
        else:
            ext[a_at] = Fraction(1)
            basis.append(a_at)
            a_at += 1
        full_rows.append(ext)

    tab = _Tableau(full_rows, list(rhs), basis, ncols)
    art_start = nstruct + nslack
    if nart:
        phase1 = [Fraction(0)] * art_start + [Fraction(-1)] * nart
        tab.optimize(phase1, [True] * ncols)
        if tab.objective(phase1) < 0:
            return LPSolution(INFEASIBLE, pivots=tab.pivots)
        # drive zero-level artificials out of the basis; drop redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= art_start:
                j = next((j for j in range(art_start) if tab.rows[i][j] != 0), None)
                if j is None:
                    del tab.rows[i]
                    del tab.rhs[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, j)
            i += 1

    sign = 1 if lp.direction == "max" else -1
    cost = [Fraction(0)] * ncols
    for j, (v, s) in enumerate(cols):
        cost[j] = sign * s * lp.objective.get(v, Fraction(0))
    allowed = [j < art_start for j in range(ncols)]
    status = tab.optimize(cost, allowed)
    if status == UNBOUNDED:
        return LPSolution(UNBOUNDED, pivots=tab.pivots)

    x = [Fraction(0)] * ncols
    for i, b in enumerate(tab.basis):
        x[b] = tab.rhs[i]
    assignment = {v: Fraction(0) for v in lp.variables}
    for j, (v, s) in enumerate(cols):
        assignment[v] += s * x[j]
    return LPSolution(OPTIMAL, lp.value_of(assignment), assignment, tab.pivots)
