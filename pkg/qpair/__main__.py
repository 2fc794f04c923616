import sys

from qpair.cli import main

sys.exit(main())
