"""Module entry point: ``python -m ratecast``."""

from .cli import main

if __name__ == "__main__":
    raise SystemExit(main())
