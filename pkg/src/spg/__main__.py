import sys

from spg.cli import main

sys.exit(main())
