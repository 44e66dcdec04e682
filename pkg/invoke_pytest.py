"""
Monte Carlo runs dispatch trial chunks to worker processes, so on Windows
the tests must be started from a module guarded by freeze_support().
"""

import multiprocessing
import sys

import pytest


if __name__ == "__main__":
    multiprocessing.freeze_support()
    sys.exit(pytest.main(sys.argv[1:]))
