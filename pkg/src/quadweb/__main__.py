import sys

from quadweb.cli import main

sys.exit(main())
