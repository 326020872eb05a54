#!/usr/bin/env python3
"""
Utility script to clean up the app.log file.

This script removes log entries from previous days, keeping only the current day's logs.
It can be run manually to clean up the app.log file if it has grown too large.

Usage:
    python clean_logs.py [--log-file PATH]

Note:
    The tools only log to <LOG_DIR>/app.log. No other log files should be created.
"""

import argparse
import os
import sys

backend_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), "backend")
sys.path.insert(0, backend_dir)


def main():
    from app.core.logging import cleanup_old_logs
    from app.core.settings import settings

    parser = argparse.ArgumentParser(description="Keep only today's entries in app.log")
    parser.add_argument("--log-file", default=os.path.join(settings.LOG_DIR, "app.log"),
                        help="Log file to clean")
    args = parser.parse_args()

    if not os.path.exists(args.log_file):
        print(f"Log file not found: {args.log_file}")
        return 1
    removed = cleanup_old_logs(args.log_file)
    print(f"Log cleanup complete: {removed} lines removed from {args.log_file}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
