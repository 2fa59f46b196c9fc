#!/usr/bin/env python3
"""Subtree index CLI runner.

    python run_subtree_index.py build data/corpus.dat -o data/rs3.idx --mss 3 --scheme root-split
"""

import sys
from pathlib import Path

# Project root on the path so `src.*` imports resolve
sys.path.insert(0, str(Path(__file__).parent))

from src.main import main  # noqa: E402

if __name__ == "__main__":
    main()
