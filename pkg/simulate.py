#!/usr/bin/env python3
"""
oscint - energy behaviour of trigonometric integrators

Entry point that works from a source checkout without installing the package.

Usage:
    python simulate.py simulate --problem exp1 --omega 100 --h-omega 2.0944 --t-end 200
    python simulate.py scan --problem fpu --center 2.0944 --width 0.1 --points 59 --t-end 10000
    python simulate.py resonance --problem fpu --omega 50 --h-omega 1.5 --N 2

For more options, run: python simulate.py --help
"""

import sys
from pathlib import Path

src_path = Path(__file__).parent / "src"
if src_path.exists():
    sys.path.insert(0, str(src_path))

try:
    from oscint.cli.main import app
except ImportError as e:
    print(f"Error importing oscint modules: {e}")
    print("Please ensure you have installed the dependencies:")
    print("  uv sync")
    print("  uv run python simulate.py --help")
    sys.exit(1)

if __name__ == "__main__":
    app()
