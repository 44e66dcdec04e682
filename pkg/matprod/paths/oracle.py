"""
Brute-force oracles for the normalized moments, independent of the
path-sum reduction in :py:mod:`matprod.paths.core`.

``paths``:  the sum over 2k-tuples of paths gamma with gamma_{2j-1}(d) = gamma_{2j}(d),
            restricted to tuples traversing every edge an even number of times,
            each weighted by u_{gamma(0)} prod_i wt(m_{gamma(i-1),gamma(i)}) p^{#gamma(i)-k}.
``states``: for finite laws, the exact expectation over every assignment of
            weights and masks.
"""

import functools
import itertools
import math
from collections import Counter, defaultdict
from fractions import Fraction

from .._logger import logger
from ..error import BudgetExceededError, ValidationError
from .core import _Arithmetic


DEFAULT_PATH_BUDGET = 10**7
DEFAULT_STATE_BUDGET = 2**24


@functools.lru_cache(maxsize=256, typed=True)
def _even_transfer(n_prev, n_next, k, law, p):
    """
    Nonzero entries of wt(m_{x,y}) p^{#y - k} over x in [n_prev]^{2k}, y in [n_next]^{2k}.
    """

    entries = defaultdict(list)
    lefts = list(itertools.product(range(n_prev), repeat=2 * k))

    for y in itertools.product(range(n_next), repeat=2 * k):
        mask_factor = p ** (len(set(y)) - k)
        for x in lefts:
            counts = Counter(zip(x, y))
            if any(count % 2 for count in counts.values()):
                continue

            weight = mask_factor
            for count in counts.values():
                weight = weight * law.moment(count)
            entries[x].append((y, weight))

    return dict(entries)


def _initial_path_weights(n_0, k, squares):
    weights = {}
    for x in itertools.product(range(n_0), repeat=2 * k):
        counts = Counter(x)
        if any(count % 2 for count in counts.values()):
            continue

        value = 1
        for index, count in counts.items():
            value *= squares[index] ** (count // 2)
        if value:
            weights[x] = value

    return weights


def _path_oracle(config, u, k, budget):
    widths = config.widths
    cost = sum(prev ** (2 * k) * nxt ** (2 * k) for prev, nxt in zip(widths, widths[1:]))
    if cost > budget:
        raise BudgetExceededError(cost, budget, "brute_force_moment(method=paths)")

    arithmetic = _Arithmetic(config, u)
    law = config.entry_law

    current = _initial_path_weights(widths[0], k, arithmetic.squares)
    for i in range(1, config.depth + 1):
        transfer = _even_transfer(widths[i - 1], widths[i], k, law, arithmetic.p)
        terms = defaultdict(list)
        for x, weight in current.items():
            for y, factor in transfer.get(x, ()):
                terms[y].append(weight * factor)
        current = {y: arithmetic.total(values) for y, values in terms.items()}

    total = arithmetic.total(
        weight
        for y, weight in current.items()
        if all(y[2 * j] == y[2 * j + 1] for j in range(k))
    )

    return arithmetic.scale(total, widths[1:], k)


def _direction(u, exact):
    """
    Write u = c z with z an integer vector when possible.

    :return: ``(z, c^2)``
    """

    squares = u.squares_exact
    if exact and squares is not None:
        nonzero = {s for s in squares if s}
        if len(nonzero) == 1:
            z = [0 if not s else (1 if c > 0 else -1) for s, c in zip(squares, u.coordinates)]
            return z, nonzero.pop()

    return [float(c) for c in u.coordinates], 1.0


def _state_oracle(config, u, k, budget):
    law = config.entry_law
    try:
        support = law.support()
    except AttributeError:
        raise ValidationError(f"states oracle requires a finite entry law: actual={law.name}")

    widths = config.widths
    p_is_one = config.p == 1

    cost = 1
    for prev, nxt in zip(widths, widths[1:]):
        cost *= len(support) ** (prev * nxt) * (1 if p_is_one else 2**nxt)
    if cost > budget:
        raise BudgetExceededError(cost, budget, "brute_force_moment(method=states)")

    arithmetic = _Arithmetic(config, u)
    exact = arithmetic.exact and all(isinstance(v, Fraction) for v, _ in support)
    z, scale_sq = _direction(u, exact)
    exact = exact and isinstance(scale_sq, Fraction)
    p = config.p_exact if exact else config.p
    if not exact:
        support = [(float(v), float(q)) for v, q in support]

    layers = []
    for prev, nxt in zip(widths, widths[1:]):
        masks = [(1,) * nxt] if p_is_one else list(itertools.product((0, 1), repeat=nxt))
        options = []
        for mask in masks:
            ones = sum(mask)
            mask_prob = p**ones * (1 - p) ** (nxt - ones)
            if not mask_prob:
                continue
            for cells in itertools.product(support, repeat=prev * nxt):
                prob = mask_prob
                for _, q in cells:
                    prob = prob * q
                rows = tuple(
                    tuple(cells[r * prev + c][0] * mask[r] for c in range(prev))
                    for r in range(nxt)
                )
                options.append((prob, rows))
        layers.append(options)

    terms = []

    def walk(depth, vector, prob):
        if depth == len(layers):
            sq_norm = sum(value * value for value in vector)
            terms.append(prob * sq_norm**k)
            return

        for layer_prob, rows in layers[depth]:
            walk(
                depth + 1,
                [sum(a * b for a, b in zip(row, vector)) for row in rows],
                prob * layer_prob,
            )

    walk(0, z, Fraction(1) if exact else 1.0)

    normalization = (Fraction(widths[0], widths[-1]) * scale_sq) ** k
    for n in widths[:-1]:
        normalization /= (p * n) ** k

    total = arithmetic.total(terms) if exact else math.fsum(terms)
    if exact:
        return total * normalization

    return float(total) * float(normalization)


def brute_force_moment(config, u, k, method="paths", budget=None):
    """
    Exact normalized moment E[(n_0/n_d)^k ||M u||^{2k}] computed without the
    path-sum reduction.

    :param str method: ``"paths"`` (even 2k-path enumeration) or ``"states"``
        (total enumeration of weights and masks; finite laws only).
    :raises matprod.BudgetExceededError: If the instance is too large.
    """

    u.check_dim(config.architecture.input_width)
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ValidationError(f"k must be a positive integer: actual={k!r}")

    logger.debug(f"brute_force_moment: method={method}, k={k}, widths={list(config.widths)}")

    if method == "paths":
        return _path_oracle(config, u, k, budget or DEFAULT_PATH_BUDGET)
    if method == "states":
        return _state_oracle(config, u, k, budget or DEFAULT_STATE_BUDGET)

    raise ValidationError(f"method must be 'paths' or 'states': actual={method}")
