"""Type vectors, the terminal metrics they induce, and laminar families.

A ``TypeVector`` is a total function on proper nonempty terminal subsets
with implicit zeros: only the support is stored.  Subsets are bitmasks over
the terminal order (see ``subsets``); public constructors also accept
iterables of terminal ids.
"""
import json
from fractions import Fraction

from .errors import InvalidInputError
from .subsets import canonical_key, crossing, cuts_pair, full_mask, indices, is_proper, pairs, proper_masks


def _rational(value):
    # local import keeps typevec free of the graph module
    from .graph import as_rational

    return as_rational(value)


def _mask_of(terminals, s, pos=None):
    if isinstance(s, int) and not isinstance(s, bool):
        return s
    if isinstance(s, str):
        raise InvalidInputError(f"subset must be a collection of ids, got string {s!r}")
    pos = pos or {t: i for i, t in enumerate(terminals)}
    mask = 0
    for t in s:
        t = str(t)
        if t not in pos:
            raise InvalidInputError(f"{t} is not a terminal")
        bit = 1 << pos[t]
        if mask & bit:
            raise InvalidInputError(f"terminal {t} repeated in subset")
        mask |= bit
    return mask


class TypeVector:
    """Nonnegative rational weights on proper nonempty subsets of ``terminals``."""

    __slots__ = ("terminals", "_entries")

    def __init__(self, terminals, entries=()):
        self.terminals = tuple(str(t) for t in terminals)
        if len(self.terminals) < 2:
            raise InvalidInputError("need at least two terminals")
        if len(set(self.terminals)) != len(self.terminals):
            raise InvalidInputError("duplicate terminal identifiers")
        k = len(self.terminals)
        pos = {t: i for i, t in enumerate(self.terminals)}
        items = entries.items() if hasattr(entries, "items") else entries
        store = {}
        for s, value in items:
            mask = _mask_of(self.terminals, s, pos)
            if not is_proper(mask, k):
                raise InvalidInputError(f"subset {indices(mask)} is not proper and nonempty")
            if mask in store:
                raise InvalidInputError(f"duplicate subset {self.ids(mask)}")
            val = _rational(value)
            if val < 0:
                raise InvalidInputError(f"negative entry {val} at {self.ids(mask)}")
            store[mask] = val
        self._entries = {m: v for m, v in sorted(store.items(), key=lambda kv: canonical_key(kv[0])) if v != 0}

    @property
    def k(self):
        return len(self.terminals)

    def __getitem__(self, s):
        return self._entries.get(_mask_of(self.terminals, s), Fraction(0))

    def __contains__(self, s):
        return _mask_of(self.terminals, s) in self._entries

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def items(self):
        return self._entries.items()

    def __eq__(self, other):
        if not isinstance(other, TypeVector):
            return NotImplemented
        return self.terminals == other.terminals and self._entries == other._entries

    def __hash__(self):
        return hash((self.terminals, tuple(self._entries.items())))

    def __repr__(self):
        body = ", ".join(f"{{{','.join(self.ids(m))}}}: {v}" for m, v in self._entries.items())
        return f"TypeVector({body})"

    @property
    def support(self):
        return tuple(self._entries)

    def ids(self, mask):
        return tuple(self.terminals[i] for i in indices(mask))

    def total(self):
        return sum(self._entries.values(), Fraction(0))

    def __add__(self, other):
        _same_terminals(self.terminals, other.terminals)
        out = dict(self._entries)
        for m, v in other.items():
            out[m] = out.get(m, Fraction(0)) + v
        return TypeVector(self.terminals, out)

    def scale(self, factor):
        factor = _rational(factor)
        if factor < 0:
            raise InvalidInputError("scaling factor must be nonnegative")
        return TypeVector(self.terminals, {m: factor * v for m, v in self._entries.items()})

    __rmul__ = scale

    @classmethod
    def indicator(cls, terminals, sets):
        return cls(terminals, [(s, 1) for s in sets])

    def to_dict(self, complete=False):
        masks = proper_masks(self.k) if complete else list(self._entries)
        return {
            "terminals": list(self.terminals),
            "entries": [{"set": list(self.ids(m)), "value": str(self[m])} for m in masks],
        }

    def to_json(self, complete=False):
        return json.dumps(self.to_dict(complete), indent=2)


def _same_terminals(a, b):
    if tuple(a) != tuple(b):
        raise InvalidInputError(f"terminal sets differ: {list(a)} vs {list(b)}")


def vector_from_dict(data, complete=False):
    """Build a TypeVector from the JSON object form.

    With ``complete=True`` every proper nonempty subset must be listed
    (zeros written out), as required for candidate cut vectors.
    """
    if not isinstance(data, dict) or "terminals" not in data or "entries" not in data:
        raise InvalidInputError("type vector JSON needs 'terminals' and 'entries'")
    terminals = [str(t) for t in data["terminals"]]
    pairs_ = []
    for entry in data["entries"]:
        if not isinstance(entry, dict) or "set" not in entry or "value" not in entry:
            raise InvalidInputError(f"bad entry {entry!r}")
        value = entry["value"]
        if isinstance(value, float):
            raise InvalidInputError(f"value {value!r} must be a rational string or integer")
        pairs_.append((entry["set"], value))
    vec = TypeVector(terminals, pairs_)
    if complete:
        listed = {_mask_of(vec.terminals, s) for s, _ in pairs_}
        missing = [m for m in proper_masks(vec.k) if m not in listed]
        if missing:
            raise InvalidInputError(f"incomplete vector: {len(missing)} subsets missing, e.g. {list(vec.ids(missing[0]))}")
    return vec


def vector_from_json(text, complete=False):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"invalid JSON: {exc}") from None
    return vector_from_dict(data, complete)


def load_vector(path, complete=False):
    with open(path) as fh:
        return vector_from_json(fh.read(), complete)


class TerminalMetric:
    """Symmetric distance table on terminal pairs, zero on the diagonal."""

    __slots__ = ("terminals", "_dist")

    def __init__(self, terminals, dist):
        self.terminals = tuple(str(t) for t in terminals)
        k = len(self.terminals)
        table = {}
        for (i, j), value in dist.items():
            if i == j:
                continue
            val = _rational(value)
            if val < 0:
                raise InvalidInputError("distances must be nonnegative")
            key = (i, j) if i < j else (j, i)
            if key in table and table[key] != val:
                raise InvalidInputError(f"asymmetric entry at {key}")
            table[key] = val
        self._dist = {p: table.get(p, Fraction(0)) for p in pairs(k)}

    @property
    def k(self):
        return len(self.terminals)

    def __call__(self, i, j):
        if i == j:
            return Fraction(0)
        return self._dist[(i, j) if i < j else (j, i)]

    def by_id(self, t, u):
        pos = self.terminals.index
        return self(pos(str(t)), pos(str(u)))

    def items(self):
        return self._dist.items()

    def __eq__(self, other):
        if not isinstance(other, TerminalMetric):
            return NotImplemented
        return self.terminals == other.terminals and self._dist == other._dist

    def __repr__(self):
        return f"TerminalMetric({self.terminals}, {dict((p, str(v)) for p, v in self._dist.items())})"

    def triangle_violation(self):
        k = self.k
        for a in range(k):
            for b in range(k):
                for c in range(k):
                    if self(a, c) > self(a, b) + self(b, c):
                        return (a, b, c)
        return None

    def to_dict(self):
        return {
            "terminals": list(self.terminals),
            "dist": [
                {"pair": [self.terminals[i], self.terminals[j]], "value": str(v)} for (i, j), v in self._dist.items()
            ],
        }


def metric_from_dict(data):
    terminals = [str(t) for t in data["terminals"]]
    pos = {t: i for i, t in enumerate(terminals)}
    dist = {}
    for entry in data["dist"]:
        a, b = (str(x) for x in entry["pair"])
        if a not in pos or b not in pos:
            raise InvalidInputError(f"unknown terminal in pair {entry['pair']}")
        dist[(pos[a], pos[b])] = entry["value"]
    return TerminalMetric(terminals, dist)


class LaminarFamily:
    """Distinct proper nonempty subsets, pairwise nested or disjoint."""

    __slots__ = ("terminals", "sets")

    def __init__(self, terminals, sets):
        self.terminals = tuple(str(t) for t in terminals)
        k = len(self.terminals)
        masks = sorted({_mask_of(self.terminals, s) for s in sets}, key=canonical_key)
        for m in masks:
            if not is_proper(m, k):
                raise InvalidInputError("laminar family members must be proper nonempty subsets")
        if not is_laminar(masks):
            raise InvalidInputError("sets are not laminar")
        self.sets = tuple(masks)

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __eq__(self, other):
        return isinstance(other, LaminarFamily) and (self.terminals, self.sets) == (other.terminals, other.sets)

    def __hash__(self):
        return hash((self.terminals, self.sets))

    def __repr__(self):
        return "LaminarFamily(" + ", ".join("{" + ",".join(self.terminals[i] for i in indices(m)) + "}" for m in self.sets) + ")"


def induced_metric(v):
    """D(t, t') = total weight of support sets containing exactly one of t, t'."""
    dist = {}
    for i, j in pairs(v.k):
        dist[(i, j)] = sum((w for m, w in v.items() if cuts_pair(m, i, j)), Fraction(0))
    return TerminalMetric(v.terminals, dist)


def dominance_witness(d1, d2):
    """First pair where ``d1 < d2``, or None."""
    _same_terminals(d1.terminals, d2.terminals)
    for p, val in d1.items():
        if val < d2(*p):
            return p
    return None


def dominates(d1, d2):
    return dominance_witness(d1, d2) is None


def _as_frozen(s):
    if isinstance(s, int) and not isinstance(s, bool):
        return s
    return frozenset(s)


def crossing_pair(sets):
    """First (a, b) pair that is neither nested nor disjoint, else None."""
    items = [_as_frozen(s) for s in sets]
    for x in range(len(items)):
        for y in range(x + 1, len(items)):
            a, b = items[x], items[y]
            if isinstance(a, int) and isinstance(b, int):
                if crossing(a, b):
                    return a, b
            elif (a & b) and (a - b) and (b - a):
                return a, b
    return None


def is_laminar(sets):
    return crossing_pair(list(sets)) is None


def weighted_cut(pi, v):
    """Sum over the support of ``v`` of v_S * pi_S.

    ``pi`` may be a TypeVector (implicit zeros) or a plain mask -> value
    mapping, in which case every support set must be present.
    """
    total = Fraction(0)
    for m, w in v.items():
        if isinstance(pi, TypeVector):
            _same_terminals(pi.terminals, v.terminals)
            total += w * pi[m]
        else:
            if m not in pi:
                raise InvalidInputError(f"pi has no coordinate for {v.ids(m)}")
            total += w * _rational(pi[m])
    return total


def complement(mask, k):
    return full_mask(k) & ~mask
