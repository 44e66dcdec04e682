"""
Set partitions of the k positions of a vertex tuple.

A partition is stored as its restricted growth string: the canonical
relabeling of a tuple in first-occurrence order, e.g. (7, 2, 7) -> (0, 1, 0).
"""

import functools
import itertools
import math
from typing import NamedTuple


class CollisionClass:
    UNIQUE = "U"
    ONE_PAIR = "P"
    BAD = "B"


def canonical_pattern(entries):
    labels = {}
    return tuple(labels.setdefault(value, len(labels)) for value in entries)


@functools.lru_cache(maxsize=None)
def set_partitions(k):
    """
    :return: Restricted growth strings of every set partition of k positions.
    :rtype: tuple
    """

    if k == 0:
        return ((),)

    patterns = []
    for prefix in set_partitions(k - 1):
        next_label = max(prefix) + 1 if prefix else 0
        for label in range(next_label + 1):
            patterns.append(prefix + (label,))

    return tuple(patterns)


def block_count(pattern):
    return max(pattern) + 1 if pattern else 0


def block_sizes(pattern):
    sizes = [0] * block_count(pattern)
    for label in pattern:
        sizes[label] += 1

    return sizes


def falling_factorial(n, count):
    """
    n (n-1) ... (n-count+1): the number of tuples in [n]^k with a
    pattern of ``count`` blocks.
    """

    return math.perm(n, count) if count <= n else 0


def coarsenings(pattern):
    """
    Iterate over ``(coarser_pattern, mobius)`` for every partition that
    merges blocks of ``pattern``, with the partition-lattice Mobius value
    mu(pattern, coarser).
    """

    count = block_count(pattern)
    for merge in set_partitions(count):
        mobius = 1
        for size in block_sizes(merge):
            mobius *= (-1) ** (size - 1) * math.factorial(size - 1)

        yield canonical_pattern(merge[label] for label in pattern), mobius


class VertexTuple(NamedTuple):
    """
    An ordered tuple V(i) in [n_i]^k with its collision class:
    U (all entries distinct), P (exactly one coincident pair) or B (other).
    """

    entries: tuple

    @property
    def k(self):
        return len(self.entries)

    @property
    def unique_count(self):
        return len(set(self.entries))

    @property
    def collision_class(self):
        unique = self.unique_count
        if unique == self.k:
            return CollisionClass.UNIQUE
        if unique == self.k - 1:
            return CollisionClass.ONE_PAIR

        return CollisionClass.BAD

    @property
    def pair(self):
        """
        Positions (a, b), a < b, of the coincident pair of a P-class tuple,
        else ``None``.
        """

        if self.collision_class != CollisionClass.ONE_PAIR:
            return None

        for a, b in itertools.combinations(range(self.k), 2):
            if self.entries[a] == self.entries[b]:
                return (a, b)

        return None  # pragma: no cover

    @property
    def pattern(self):
        return canonical_pattern(self.entries)
