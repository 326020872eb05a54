#!/usr/bin/env python3
"""
Run script for the chip game tools.

Adds the backend directory to the Python path and forwards every argument to
the command-line interface, so the tools work from a plain checkout:

    python run.py solve --k 2 --n 3 --variant restricted --c 1
    python run.py --tests
"""

import os
import subprocess
import sys

# Add the backend directory to the Python path
backend_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "backend")
sys.path.insert(0, backend_dir)


def run_tests(extra=None):
    """Run the fast test suite."""
    print("Running tests...", file=sys.stderr)
    result = subprocess.run([sys.executable, "-m", "pytest", *(extra or [])])
    return result.returncode


def main():
    argv = sys.argv[1:]
    if argv[:1] == ["--tests"]:
        sys.exit(run_tests(argv[1:]))

    # Change to the project root directory so logs/ and data/ land there
    os.chdir(os.path.dirname(os.path.abspath(__file__)))
    from app.cli import run

    sys.exit(run(argv))


if __name__ == "__main__":
    main()
