"""
chipgame entry point.

    python backend/main.py threshold --k 2 --variant restricted --c 1
"""

from app.cli import main

if __name__ == "__main__":
    main()
