"""Finite unions of half-open intervals ``[a, b)`` with exact endpoints.

An interval set is a tuple of ``(a, b)`` pairs, sorted, pairwise disjoint
and non-touching, each with ``a < b``.
"""
from fractions import Fraction


def normalize(intervals):
    out = []
    for a, b in sorted((a, b) for a, b in intervals if a < b):
        if out and a <= out[-1][1]:
            if b > out[-1][1]:
                out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return tuple(out)


def difference(xs, ys):
    """Points of ``xs`` not in ``ys``."""
    out = []
    for a, b in xs:
        pieces = [(a, b)]
        for c, d in ys:
            nxt = []
            for p, q in pieces:
                if d <= p or c >= q:
                    nxt.append((p, q))
                    continue
                if p < c:
                    nxt.append((p, c))
                if d < q:
                    nxt.append((d, q))
            pieces = nxt
        out.extend(pieces)
    return normalize(out)


def intersection(xs, ys):
    out = []
    for a, b in xs:
        for c, d in ys:
            lo, hi = max(a, c), min(b, d)
            if lo < hi:
                out.append((lo, hi))
    return normalize(out)


def total_length(xs):
    return sum((b - a for a, b in xs), Fraction(0))


def contained_in(xs, lo, hi):
    return all(lo <= a and b <= hi for a, b in xs)
