from fractions import Fraction

import pytest

import matprod as mp
from matprod._validator import (
    FileValidator,
    OutputPathValidator,
    ProbabilityValidator,
    TrialsValidator,
    WidthsValidator,
)


class Test_ProbabilityValidator_validate:
    @pytest.mark.parametrize(["value"], [[1], [0.5], [Fraction(1, 3)], ["0.25"]])
    def test_normal(self, value):
        validator = ProbabilityValidator(value)
        assert validator.source_type == "probability"
        validator.validate()

    @pytest.mark.parametrize(["value"], [[0], [1.5], [-1], [True], [None], ["abc"]])
    def test_exception(self, value):
        with pytest.raises(mp.ValidationError):
            ProbabilityValidator(value).validate()


class Test_WidthsValidator_validate:
    @pytest.mark.parametrize(["value"], [[[1, 1]], [(3, 2, 1)]])
    def test_normal(self, value):
        WidthsValidator(value).validate()

    @pytest.mark.parametrize(["value"], [[[]], [[3]], [[2, 0]], [[2, 1.5]], [[2, True]]])
    def test_exception(self, value):
        with pytest.raises(mp.ValidationError):
            WidthsValidator(value).validate()

    def test_min_length(self):
        WidthsValidator([3], min_length=1).validate()


class Test_TrialsValidator_validate:
    @pytest.mark.parametrize(["value"], [[0], [10]])
    def test_normal(self, value):
        TrialsValidator(value).validate()

    @pytest.mark.parametrize(["value"], [[-1], [1.5], [True], ["10"]])
    def test_exception(self, value):
        with pytest.raises(mp.ValidationError):
            TrialsValidator(value).validate()


class Test_FileValidator_validate:
    def test_normal(self, tmpdir):
        p_file_path = tmpdir.join("test")

        with open(str(p_file_path), "w"):
            pass

        validator = FileValidator(str(p_file_path))
        assert validator.source_type == "file"
        validator.validate()

    @pytest.mark.parametrize(["value"], [[None], [""], ["te\0st"]])
    def test_exception_invalid_path(self, value):
        with pytest.raises(mp.InvalidFilePathError):
            FileValidator(value).validate()

    def test_exception_missing(self, tmpdir):
        with pytest.raises(OSError):
            FileValidator(str(tmpdir.join("missing"))).validate()


class Test_OutputPathValidator_validate:
    def test_normal(self, tmpdir):
        OutputPathValidator(str(tmpdir.join("out.csv"))).validate()

    @pytest.mark.parametrize(["value"], [[""], ["te\0st"]])
    def test_exception(self, value):
        with pytest.raises(mp.PathError):
            OutputPathValidator(value).validate()
