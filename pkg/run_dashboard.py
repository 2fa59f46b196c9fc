#!/usr/bin/env python3
"""Streamlit dashboard runner for bench and stats records."""

import subprocess
import sys
from pathlib import Path

if __name__ == "__main__":
    try:
        subprocess.run(
            [sys.executable, "-m", "streamlit", "run", str(Path(__file__).parent / "viz" / "dashboard.py")],
            check=False,
        )
    except Exception as e:
        print(f"Error running dashboard: {e}")
        sys.exit(1)
