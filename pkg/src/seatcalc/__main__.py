"""Run the command line as ``python -m seatcalc``."""

from .cli import main

if __name__ == "__main__":
    main()
