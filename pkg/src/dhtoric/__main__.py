import sys

from dhtoric.cli import main

sys.exit(main())
