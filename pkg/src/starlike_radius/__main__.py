"""Allow ``python -m starlike_radius``."""

import sys

from .cli import main

sys.exit(main())
