import sys

from adsb_sentinel.cli import main

sys.exit(main())
