import sys

from qalink.cli import main

sys.exit(main())
