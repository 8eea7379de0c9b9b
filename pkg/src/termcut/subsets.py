"""Terminal subsets as bitmasks over the terminal order.

Bit ``i`` of a mask stands for ``terminals[i]``.  The canonical order on
subsets is nondecreasing cardinality, ties broken lexicographically on the
sorted index tuple.
"""
from math import comb

ENUMERATION_LIMIT = 12


def popcount(mask):
    return bin(mask).count("1")


def indices(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def canonical_key(mask):
    return (popcount(mask), indices(mask))


def lex_key(mask):
    return indices(mask)


def full_mask(k):
    return (1 << k) - 1


def proper_masks(k):
    """All proper nonempty subsets of a k-set, in canonical order."""
    return sorted(range(1, full_mask(k)), key=canonical_key)


def is_proper(mask, k):
    return 0 < mask < full_mask(k)


def cuts_pair(mask, i, j):
    """True iff exactly one of terminals i, j lies in the set."""
    return ((mask >> i) ^ (mask >> j)) & 1 == 1


def crossing(a, b):
    """Neither nested nor disjoint."""
    return bool(a & b) and bool(a & ~b) and bool(b & ~a)


def pairs(k):
    return [(i, j) for i in range(k) for j in range(i + 1, k)]


def n_pairs(k):
    return comb(k, 2)
