"""Run the acceptance suite outside pytest and print one line per criterion.

Exits non-zero if any criterion fails.
"""

import sys
from pathlib import Path

import pytest


def main():
    test_file = Path(__file__).resolve().parents[1] / "tests" / "test_acceptance.py"
    code = pytest.main(["-q", "-p", "no:cacheprovider", str(test_file)])
    sys.exit(int(code))


if __name__ == "__main__":
    main()
