import sys

from sextic.cli import main

sys.exit(main())
