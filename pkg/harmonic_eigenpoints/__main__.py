import sys

from harmonic_eigenpoints.cli import main

sys.exit(main())
