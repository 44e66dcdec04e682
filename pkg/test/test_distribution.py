from fractions import Fraction

import numpy as np
import pytest

import matprod as mp


class Test_validate_distribution:
    @pytest.mark.parametrize(
        ["value", "expected"],
        [
            [mp.StandardGaussian(), 3],
            [mp.Rademacher(), 1],
            [mp.UniformSymmetric(), Fraction(9, 5)],
            [mp.DiscreteSymmetric({-1: Fraction(1, 2), 1: Fraction(1, 2)}), 1],
            [
                mp.DiscreteSymmetric(
                    {-2: Fraction(1, 8), 0: Fraction(3, 4), 2: Fraction(1, 8)}
                ),
                4,
            ],
        ],
    )
    def test_normal(self, value, expected):
        spec = mp.validate_distribution(value)

        assert spec is value
        assert spec.mu4 == expected

    @pytest.mark.parametrize(
        ["value", "expected"],
        [
            [{2: 0.5, -2: 0.5}, mp.NormalizationError],
            [{1: Fraction(1, 2), 3: Fraction(1, 2)}, mp.NormalizationError],
            [{1: Fraction(1, 4), -1: Fraction(1, 4)}, mp.NormalizationError],
        ],
    )
    def test_exception_normalization(self, value, expected):
        with pytest.raises(expected):
            mp.validate_distribution(mp.DiscreteSymmetric(value))

    def test_exception_asymmetry(self):
        a = Fraction(1, 2)
        masses = {-a: Fraction(4, 5), 2: Fraction(1, 5)}
        law = mp.DiscreteSymmetric(masses)

        assert law.moment(1) == 0
        assert law.moment(2) == Fraction(1, 5) + Fraction(4, 5)

        with pytest.raises(mp.AsymmetryError):
            mp.validate_distribution(law)


class Test_DistributionSpec_moment:
    @pytest.mark.parametrize(
        ["law", "k", "expected"],
        [
            [mp.StandardGaussian(), 0, 1],
            [mp.StandardGaussian(), 3, 0],
            [mp.StandardGaussian(), 6, 15],
            [mp.StandardGaussian(), 8, 105],
            [mp.Rademacher(), 6, 1],
            [mp.UniformSymmetric(), 2, 1],
            [mp.UniformSymmetric(), 6, Fraction(27, 7)],
        ],
    )
    def test_normal(self, law, k, expected):
        assert law.moment(k) == expected

    def test_atomless(self):
        assert mp.StandardGaussian().atomless
        assert mp.UniformSymmetric().atomless
        assert not mp.Rademacher().atomless


class Test_DistributionSpec_sample:
    @pytest.mark.parametrize(
        ["law"], [[mp.StandardGaussian()], [mp.Rademacher()], [mp.UniformSymmetric()]]
    )
    def test_normal(self, law):
        values = law.sample(np.random.default_rng(0), (200, 50))

        assert values.shape == (200, 50)
        assert abs(values.mean()) < 0.05
        assert abs(values.var() - 1) < 0.05

    def test_rademacher_values(self):
        values = mp.Rademacher().sample(np.random.default_rng(1), 1000)

        assert set(np.unique(values)) == {-1.0, 1.0}
