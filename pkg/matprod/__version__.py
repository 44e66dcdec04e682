__author__ = "matprod developers"
__copyright__ = f"Copyright 2026, {__author__}"
__license__ = "MIT License"
__version__ = "0.1.0"
__maintainer__ = __author__
__email__ = "matprod@users.noreply.github.com"
