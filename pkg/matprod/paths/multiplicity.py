"""
Edge multiplicities of tuples of paths through a bipartite layer,
the combinatorial factor c_l and the moment weight wt.
"""

import itertools
import math
from fractions import Fraction

from ..error import BudgetExceededError, ValidationError


class EdgeMultiplicity:
    """
    A nonnegative integer matrix m(a, b), a in [n], b in [n'],
    counting how often the edge (a, b) is used.

    :param matrix: Rows of nonnegative integers.
    """

    @property
    def matrix(self):
        return self.__matrix

    @property
    def shape(self):
        return (len(self.__matrix), len(self.__matrix[0]))

    @property
    def row_sums(self):
        """
        m(a, *) for each left vertex a.
        """

        return self.__row_sums

    @property
    def column_sums(self):
        """
        m(*, b) for each right vertex b.
        """

        return self.__column_sums

    @property
    def total(self):
        return sum(self.__row_sums)

    @property
    def is_even(self):
        return all(value % 2 == 0 for row in self.__matrix for value in row)

    def __init__(self, matrix):
        matrix = tuple(tuple(int(value) for value in row) for row in matrix)
        if not matrix or not matrix[0]:
            raise ValidationError("multiplicity matrix must not be empty")
        if any(len(row) != len(matrix[0]) for row in matrix):
            raise ValidationError("multiplicity matrix rows must have equal length")
        if any(value < 0 for row in matrix for value in row):
            raise ValidationError("multiplicities must be nonnegative")

        self.__matrix = matrix
        self.__row_sums = tuple(sum(row) for row in matrix)
        self.__column_sums = tuple(sum(column) for column in zip(*matrix))

    @classmethod
    def from_tuples(cls, left, right, n_left=None, n_right=None):
        """
        Multiplicity m_{x,y} of the edges {(x_j, y_j)} for tuples
        ``left`` = x and ``right`` = y of equal length (0-based labels).
        """

        left = tuple(left)
        right = tuple(right)
        if len(left) != len(right):
            raise ValidationError(
                f"tuples must have equal length: left={len(left)}, right={len(right)}"
            )

        n_left = n_left or (max(left) + 1 if left else 1)
        n_right = n_right or (max(right) + 1 if right else 1)

        matrix = [[0] * n_right for _ in range(n_left)]
        for a, b in zip(left, right):
            matrix[a][b] += 1

        return cls(matrix)

    def scaled(self, factor):
        return EdgeMultiplicity([[value * factor for value in row] for row in self.__matrix])

    def right_endpoints(self):
        """
        The canonical right tuple: each column b repeated m(*, b) times.
        """

        return tuple(b for b, count in enumerate(self.__column_sums) for _ in range(count))

    def __eq__(self, other):
        return isinstance(other, EdgeMultiplicity) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.__matrix)

    def __repr__(self):
        return f"EdgeMultiplicity({[list(row) for row in self.__matrix]})"


def multinomial(total, parts):
    """
    Exact multinomial coefficient total! / prod(part!).
    """

    if sum(parts) != total:
        raise ValueError(f"parts must sum to {total}: actual={sum(parts)}")

    value = 1
    remaining = total
    for part in parts:
        value *= math.comb(remaining, part)
        remaining -= part

    return value


def multiplicity_count(m, length=None):
    """
    c_l(m) = prod_b multinomial(m(*, b); m(1, b), ..., m(n, b)):
    the number of left tuples x in [n]^l with m_{x,y} = m for a fixed
    right tuple y compatible with m.

    :raises matprod.ValidationError: If the entries of m do not sum to ``length``.
    """

    if length is not None and m.total != length:
        raise ValidationError(f"multiplicities must sum to {length}: actual={m.total}")

    value = 1
    for b, column_sum in enumerate(m.column_sums):
        value *= multinomial(column_sum, [row[b] for row in m.matrix])

    return value


def enumerate_multiplicity_count(m, max_evaluations=10**7):
    """
    c_l(m) by direct enumeration of x in [n]^l against the canonical right tuple.
    """

    n_left = m.shape[0]
    right = m.right_endpoints()
    length = len(right)

    cost = n_left**length
    if cost > max_evaluations:
        raise BudgetExceededError(cost, max_evaluations, "enumerate_multiplicity_count")

    return sum(
        1
        for left in itertools.product(range(n_left), repeat=length)
        if EdgeMultiplicity.from_tuples(left, right, *m.shape) == m
    )


def edge_weight(m, law):
    """
    wt(m) = prod_{a,b} mu_{m(a,b)}; zero as soon as a multiplicity is odd.
    """

    if not m.is_even:
        return Fraction(0) if law.is_rational else 0.0

    value = Fraction(1) if law.is_rational else 1.0
    for row in m.matrix:
        for count in row:
            if count:
                value *= law.moment(count)

    return value
