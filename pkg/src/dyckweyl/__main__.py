import sys

from dyckweyl.cli import main

sys.exit(main())
