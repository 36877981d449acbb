"""
Allows running the toolkit with ``python -m asbg``
"""

import sys

from asbg.cli import main

sys.exit(main())
