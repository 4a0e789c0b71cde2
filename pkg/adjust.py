"""
Launcher for Adjust
Run from the repository root: python adjust.py <command> [flags]
"""

import sys

from src.main import main

if __name__ == '__main__':
    sys.exit(main())
