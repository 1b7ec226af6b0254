"""Module entry point so that ``python -m flowlag`` runs the CLI."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
