import sys

from coverforge.cli import main

sys.exit(main())
