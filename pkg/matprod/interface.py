import abc


class DistributionInterface(metaclass=abc.ABCMeta):
    """
    Interface class of entry laws for the weight matrices.
    """

    @abc.abstractproperty
    def kind(self):  # pragma: no cover
        pass

    @abc.abstractproperty
    def atomless(self):  # pragma: no cover
        pass

    @abc.abstractmethod
    def moment(self, k):  # pragma: no cover
        pass

    @abc.abstractmethod
    def sample(self, rng, shape):  # pragma: no cover
        pass

    @abc.abstractmethod
    def validate(self):  # pragma: no cover
        pass


class LogNormSamplerInterface(metaclass=abc.ABCMeta):
    """
    Interface class of per-trial samplers of log-norms.
    A sampler returns ``None`` for a zero-norm event.
    """

    @abc.abstractproperty
    def job_name(self):  # pragma: no cover
        pass

    @abc.abstractmethod
    def fingerprint(self):  # pragma: no cover
        pass

    @abc.abstractmethod
    def sample(self, rng):  # pragma: no cover
        pass
