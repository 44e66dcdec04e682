import itertools
from fractions import Fraction

import matprod as mp


GAUSSIAN = mp.StandardGaussian()
RADEMACHER = mp.Rademacher()
UNIFORM = mp.UniformSymmetric()


def make_config(widths, p=1, law=GAUSSIAN):
    return mp.EnsembleConfig(mp.Architecture(widths), p, law)


def _grid(widths_list):
    for widths, p, law, u_name in itertools.product(
        widths_list, (Fraction(1), Fraction(1, 2)), (GAUSSIAN, RADEMACHER), ("e1", "uniform")
    ):
        yield make_config(widths, p, law), getattr(mp.UnitVector, u_name)(widths[0])


def small_grid():
    """
    A sample of the oracle grid: nine architectures with d <= 3 and n_i <= 3,
    p in {1, 1/2}, Gaussian/Rademacher, u in {e1, uniform}.
    """

    return _grid(
        [
            (1, 1),
            (2, 1),
            (2, 2),
            (3, 2),
            (2, 3),
            (2, 2, 2),
            (3, 2, 1),
            (1, 2, 2, 1),
            (2, 1, 2, 2),
        ]
    )


def oracle_grid():
    """
    Every architecture with depth 1 to 3 and all widths in {1, 2, 3},
    crossed with the same p, law and u choices as :py:func:`small_grid`.
    """

    return _grid(
        [
            widths
            for depth in (1, 2, 3)
            for widths in itertools.product((1, 2, 3), repeat=depth + 1)
        ]
    )
