"""
Exact moments E[(n_0/n_d)^k ||M u||^{2k}] as a sum over k-tuples of paths.

Each layer contributes the factor
C(V(i-1), V(i)) = wt(2m) c_{2k}(2m) / c_k(m) p^{#V(i) - k}, m = m_{V(i-1),V(i)},
which depends only on the joint coincidence pattern of the two tuples.
The default method therefore contracts the sum layer by layer over set
partitions of the k positions, weighting each partition by the number of
tuples realizing it.
"""

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import NamedTuple

from .._common import get_max_workers
from .._constant import Default
from .._logger import MomentLogger, logger
from ..error import BudgetExceededError, ValidationError
from ..montecarlo._stream import split_chunks
from .multiplicity import EdgeMultiplicity, edge_weight, multiplicity_count
from .partition import (
    VertexTuple,
    block_count,
    canonical_pattern,
    coarsenings,
    falling_factorial,
    set_partitions,
)


DIRECT_INITIAL_LIMIT = 200000

# V(1) tuples per unit of work in the literal enumeration
ENUMERATION_BLOCK_SIZE = 64


class PathEnsemble(NamedTuple):
    """
    A sequence V = (V(0), ..., V(d)) of k-tuples, V(i) in [n_i]^k.
    """

    tuples: tuple

    @property
    def depth(self):
        return len(self.tuples) - 1

    @property
    def k(self):
        return len(self.tuples[0])

    @classmethod
    def from_sequences(cls, sequences):
        tuples = tuple(VertexTuple(tuple(seq)) for seq in sequences)
        if len({len(vt.entries) for vt in tuples}) > 1:
            raise ValidationError("every tuple of a path ensemble must have the same length")

        return cls(tuples)

    def weight(self, squares, law, p):
        """
        u^2_{V(0)} prod_i C(V(i-1), V(i)).
        """

        value = 1
        for index in self.tuples[0].entries:
            value *= squares[index]
        for prev, nxt in zip(self.tuples, self.tuples[1:]):
            if not value:
                break
            value *= layer_factor(prev, nxt, law, p)

        return value


class CollisionProbabilities(NamedTuple):
    unique: Fraction
    one_pair: Fraction
    bad: Fraction


class PathCountCheck(NamedTuple):
    enumerated: int
    formula: int


def _entries(vertex_tuple):
    return tuple(getattr(vertex_tuple, "entries", vertex_tuple))


def layer_factor(v_prev, v_next, law, p):
    """
    C(V_prev, V_next) = wt(2m) c_{2k}(2m) / c_k(m) p^{#V_next - k}.

    :param v_prev: Tuple V(i-1) (a :py:class:`VertexTuple` or a sequence).
    :param v_next: Tuple V(i) of the same length.
    :param p: Mask probability; pass a ``Fraction`` for exact results.
    """

    left = _entries(v_prev)
    right = _entries(v_next)
    k = len(left)

    m = EdgeMultiplicity.from_tuples(canonical_pattern(left), canonical_pattern(right))
    doubled = m.scaled(2)

    ratio = Fraction(multiplicity_count(doubled, 2 * k), multiplicity_count(m, k))
    value = edge_weight(doubled, law) * ratio * p ** (len(set(right)) - k)

    if isinstance(value, Fraction) and not isinstance(p, Fraction):
        return float(value)

    return value


class _Arithmetic:
    def __init__(self, config, u):
        self.exact = config.entry_law.is_rational and u.squares_exact is not None
        if self.exact:
            self.p = config.p_exact
            self.squares = u.squares_exact
            self.zero = Fraction(0)
        else:
            self.p = config.p
            self.squares = [float(s) for s in u.squares]
            self.zero = 0.0

    def total(self, values):
        if self.exact:
            return sum(values, Fraction(0))

        return math.fsum(float(v) for v in values)

    def scale(self, value, widths, k):
        factor = Fraction(1)
        for n in widths:
            factor /= Fraction(n) ** k

        if self.exact:
            return value * factor

        return float(value) * float(factor)


class ExactMomentCalculator:
    """
    Evaluate the normalized 2k-th moment of ||M u|| by the path sum.

    :param str method:
        ``"partition"`` (contraction over coincidence patterns, default)
        or ``"enumerate"`` (literal sum over every V in prod_i [n_i]^k).
    :param int max_workers:
        Worker process cap of the literal enumeration, which is split into
        fixed blocks of V(1) tuples. Defaults to ``MATPROD_THREADS`` or the
        machine parallelism. The result does not depend on it.
    """

    METHODS = ("partition", "enumerate")

    @property
    def job_name(self):
        return "exact_moment"

    @property
    def k(self):
        return self.__k

    @property
    def method(self):
        return self.__method

    @property
    def budget(self):
        return self.__budget

    @property
    def cost(self):
        return self.__cost

    def __init__(
        self,
        config,
        u,
        k,
        budget=Default.MOMENT_BUDGET,
        method="partition",
        max_k=Default.MAX_K,
        max_workers=None,
    ):
        u.check_dim(config.architecture.input_width)

        if isinstance(k, bool) or not isinstance(k, int) or k < 1:
            raise ValidationError(f"k must be a positive integer: actual={k!r}")
        if k > max_k:
            raise ValidationError(f"k must not exceed {max_k}: actual={k}")
        if method not in self.METHODS:
            raise ValidationError(
                "method must be one of {}: actual={}".format(", ".join(self.METHODS), method)
            )

        self.__config = config
        self.__u = u
        self.__k = k
        self.__budget = budget
        self.__method = method
        self.__max_workers = max_workers
        self.__cost = self.estimate_cost()
        self._logger = MomentLogger(self)

    def estimate_cost(self):
        """
        Number of layer-factor evaluations of the selected method.
        """

        widths = self.__config.widths
        k = self.__k

        if self.__method == "enumerate":
            return math.prod(n**k for n in widths)

        counts = [self.__pattern_count(n) for n in widths]
        initial = widths[0] ** k if widths[0] ** k <= DIRECT_INITIAL_LIMIT else counts[0] ** 2

        return initial + sum(prev * nxt for prev, nxt in zip(counts, counts[1:]))

    def run(self):
        """
        :raises matprod.BudgetExceededError: If the cost exceeds the budget.
        """

        widths = self.__config.widths
        k = self.__k

        naive_cost = math.prod(n**k for n in widths)
        logger.debug(f"exact_moment: path count prod n_i^k = {naive_cost}")

        if self.__cost > self.__budget:
            logger.debug(f"exact_moment rejected: cost={self.__cost}, budget={self.__budget}")
            raise BudgetExceededError(self.__cost, self.__budget, f"method={self.__method}")

        if math.comb(k, 2) >= min(self.__config.architecture.hidden_widths):
            logger.warning(
                "binom(k, 2) < min n_i does not hold (k={}, widths={}): the log-normal "
                "moment prediction is not expected to apply".format(k, list(widths))
            )

        self._logger.logging_start()

        if self.__method == "enumerate":
            result = self.__enumerate()
        else:
            result = self.__contract()

        self._logger.logging_result(result)

        return result

    def __pattern_count(self, n):
        return sum(1 for pattern in set_partitions(self.__k) if block_count(pattern) <= n)

    def __patterns(self, n):
        return [pattern for pattern in set_partitions(self.__k) if block_count(pattern) <= n]

    def __initial_weights(self, arithmetic):
        """
        S(pi) = sum of u^2_x over x in [n_0]^k whose coincidence pattern is pi.
        """

        n_0 = self.__config.widths[0]
        k = self.__k
        squares = arithmetic.squares
        patterns = self.__patterns(n_0)

        if n_0**k <= DIRECT_INITIAL_LIMIT:
            weights = {pattern: [] for pattern in patterns}
            for x in itertools.product(range(n_0), repeat=k):
                value = 1
                for index in x:
                    value *= squares[index]
                if value:
                    weights[canonical_pattern(x)].append(value)

            return {pattern: arithmetic.total(values) for pattern, values in weights.items()}

        # Mobius inversion over the partition lattice:
        # S(pi) = sum_{tau >= pi} mu(pi, tau) prod_{B in tau} sum_a u_a^{2|B|}
        power_sums = {}

        def power_sum(size):
            if size not in power_sums:
                power_sums[size] = arithmetic.total(s**size for s in squares)
            return power_sums[size]

        def constant_on_blocks(pattern):
            value = 1
            for label in range(block_count(pattern)):
                value *= power_sum(pattern.count(label))
            return value

        return {
            pattern: arithmetic.total(
                mobius * constant_on_blocks(coarser) for coarser, mobius in coarsenings(pattern)
            )
            for pattern in patterns
        }

    def __contract(self):
        config = self.__config
        widths = config.widths
        arithmetic = _Arithmetic(config, self.__u)
        law = config.entry_law
        factors = {}

        def factor(prev, nxt):
            key = (prev, nxt)
            if key not in factors:
                factors[key] = layer_factor(prev, nxt, law, arithmetic.p)
            return factors[key]

        current = self.__initial_weights(arithmetic)
        for i in range(1, config.depth + 1):
            multiplicities = {
                pattern: (1 if i == 1 else falling_factorial(widths[i - 1], block_count(pattern)))
                for pattern in current
            }
            current = {
                nxt: arithmetic.total(
                    multiplicities[prev] * weight * factor(prev, nxt)
                    for prev, weight in current.items()
                    if weight
                )
                for nxt in self.__patterns(widths[i])
            }

        total = arithmetic.total(
            falling_factorial(widths[-1], block_count(pattern)) * weight
            for pattern, weight in current.items()
        )

        return arithmetic.scale(total, widths[1:], self.__k)

    def __enumerate(self):
        config = self.__config
        widths = config.widths
        arithmetic = _Arithmetic(config, self.__u)
        k = self.__k

        blocks = split_chunks(0, widths[1] ** k, ENUMERATION_BLOCK_SIZE)
        max_workers = self.__max_workers
        if max_workers is None:
            max_workers = get_max_workers()

        logger.debug(f"exact_moment: {len(blocks)} blocks over V(1), max_workers={max_workers}")

        if max_workers <= 1 or len(blocks) <= 1:
            totals = [
                _enumerate_block(config, arithmetic, k, start, stop) for start, stop in blocks
            ]
        else:
            with ProcessPoolExecutor(max_workers=min(max_workers, len(blocks))) as executor:
                futures = [
                    executor.submit(_enumerate_block, config, arithmetic, k, start, stop)
                    for start, stop in blocks
                ]
                totals = [future.result() for future in futures]

        return arithmetic.scale(arithmetic.total(totals), widths[1:], k)


def _enumerate_block(config, arithmetic, k, start, stop):
    """
    Sum of the path terms whose V(1) is among the tuples ``start`` to ``stop``
    of [n_1]^k in lexicographic order.
    """

    widths = config.widths
    law = config.entry_law
    factors = {}

    def factor(prev, nxt):
        key = (canonical_pattern(prev), canonical_pattern(nxt))
        if key not in factors:
            factors[key] = layer_factor(prev, nxt, law, arithmetic.p)
        return factors[key]

    inputs = []
    for v_0 in itertools.product(range(widths[0]), repeat=k):
        value = 1
        for index in v_0:
            value *= arithmetic.squares[index]
        if value:
            inputs.append((v_0, value))

    inner_layers = [list(itertools.product(range(n), repeat=k)) for n in widths[2:]]

    terms = []
    for v_1 in itertools.islice(itertools.product(range(widths[1]), repeat=k), start, stop):
        for v_0, weight in inputs:
            head = weight * factor(v_0, v_1)
            if not head:
                continue
            for rest in itertools.product(*inner_layers):
                value = head
                prev = v_1
                for nxt in rest:
                    value *= factor(prev, nxt)
                    if not value:
                        break
                    prev = nxt
                terms.append(value)

    return arithmetic.total(terms)


def exact_moment(
    config, u, k, budget=Default.MOMENT_BUDGET, method="partition", max_workers=None
):
    """
    Exact E[(n_0/n_d)^k ||M^(d) u||^{2k}].

    :return:
        A ``Fraction`` when the entry law has rational moments and u has exact
        squares, a ``float`` (compensated summation) otherwise.
    :raises matprod.BudgetExceededError: If the evaluation cost exceeds ``budget``.
    """

    return ExactMomentCalculator(
        config, u, k, budget=budget, method=method, max_workers=max_workers
    ).run()


def theory_moment(beta, k):
    """
    Leading-order prediction exp(binom(k, 2) beta) of the normalized moment.
    """

    beta = getattr(beta, "beta", beta)

    return math.exp(math.comb(k, 2) * float(beta))


def product_moment_approximation(config, u, k):
    """
    [1 + C(k,2)/n_1 ((mu_4 - 3)/p ||u||_4^4 + 3/p - 1)] prod_{i>=2} (1 + (3/p - 1) C(k,2)/n_i):
    the product of per-layer collision corrections behind exp(binom(k, 2) beta).
    """

    u.check_dim(config.architecture.input_width)

    pairs = math.comb(k, 2)
    p = config.p
    hidden = config.architecture.hidden_widths
    mu4 = float(config.entry_law.mu4)

    value = 1.0 + pairs / hidden[0] * ((mu4 - 3.0) / p * float(u.norm4_4) + 3.0 / p - 1.0)
    for n in hidden[1:]:
        value *= 1.0 + (3.0 / p - 1.0) * pairs / n

    return value


def collision_probabilities(n, k):
    """
    Probabilities that a uniform tuple in [n]^k has all entries distinct (U),
    exactly one coincident pair (P), or anything else (B).
    """

    total = Fraction(n) ** k
    unique = Fraction(falling_factorial(n, k)) / total
    one_pair = Fraction(math.comb(k, 2) * falling_factorial(n, k - 1)) / total if k >= 2 else 0

    return CollisionProbabilities(unique, Fraction(one_pair), 1 - unique - one_pair)


def verify_path_count(edge_sequence, v_end, length, max_evaluations=10**7):
    """
    Count ordered l-tuples of paths with a given edge sequence and endpoint
    both by enumeration and by prod_i c_l(m_{E(i)}).

    :param edge_sequence: :py:class:`EdgeMultiplicity` of each layer, shapes (n_{i-1}, n_i).
    :param v_end: Endpoint tuple in [n_d]^l.
    :rtype: PathCountCheck
    """

    edge_sequence = list(edge_sequence)
    v_end = tuple(v_end)
    if len(v_end) != length:
        raise ValidationError(f"endpoint must have length {length}: actual={len(v_end)}")

    for prev, nxt in zip(edge_sequence, edge_sequence[1:]):
        if prev.shape[1] != nxt.shape[0]:
            raise ValidationError("edge multiplicity shapes do not chain")

    widths = [edge_sequence[0].shape[0]] + [m.shape[1] for m in edge_sequence]
    cost = math.prod(n**length for n in widths[:-1])
    if cost > max_evaluations:
        raise BudgetExceededError(cost, max_evaluations, "verify_path_count")

    def count(layer, right):
        if layer == 0:
            return 1

        target = edge_sequence[layer - 1]
        n_left, n_right = target.shape

        return sum(
            count(layer - 1, left)
            for left in itertools.product(range(n_left), repeat=length)
            if EdgeMultiplicity.from_tuples(left, right, n_left, n_right) == target
        )

    formula = 1
    for m in edge_sequence:
        formula *= multiplicity_count(m, length)

    return PathCountCheck(count(len(edge_sequence), v_end), formula)
