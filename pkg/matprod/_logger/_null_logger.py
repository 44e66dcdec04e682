class NullLogger:
    """
    Stand-in for the loguru logger when loguru is not installed.
    Only the methods matprod calls are provided.
    """

    def disable(self, name):  # pragma: no cover
        pass

    def enable(self, name):  # pragma: no cover
        pass

    def debug(self, __message, *args, **kwargs):  # pragma: no cover
        pass

    def warning(self, __message, *args, **kwargs):  # pragma: no cover
        pass
