import sys

from ..error import (
    BudgetExceededError,
    DistributionNotFoundError,
    PathError,
    UsageError,
    ValidationError,
)
from .config import parse_config
from .runner import run


EXIT_SUCCESS = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_ERROR = EXIT_USAGE


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]

    try:
        config = parse_config(argv)
        return run(config).exit_status
    except UsageError as e:
        print(f"matprod: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, DistributionNotFoundError, PathError) as e:
        print(f"matprod: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as e:
        print(f"matprod: error: {e} (cost estimate: {e.cost})", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
