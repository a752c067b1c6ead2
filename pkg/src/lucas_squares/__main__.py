import sys

from lucas_squares.cli import main

sys.exit(main())
