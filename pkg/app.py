# app.py
"""Entry point: ``python app.py <command> ...`` (see ``python app.py --help``)."""
import sys

from cremona.cli import main

if __name__ == "__main__":
    sys.exit(main())
