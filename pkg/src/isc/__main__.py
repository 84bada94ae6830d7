import sys

from isc.cli import main

sys.exit(main())
