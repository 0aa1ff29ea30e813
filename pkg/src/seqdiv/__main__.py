import sys

from seqdiv.cli import main

sys.exit(main())
