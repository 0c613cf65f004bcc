"""Make the repository root importable so tests can use `import src.*` and `import app`."""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
