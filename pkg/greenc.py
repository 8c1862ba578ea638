#!/usr/bin/env python3
"""
Check and run Green programs.

    python greenc.py run --entry Hello data/corpus/hello.green
"""

import sys
from pathlib import Path

# Add project root to path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from green.cli import main


if __name__ == "__main__":
    sys.exit(main())
