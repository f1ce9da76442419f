import sys

from oscint.cli.cli import main

sys.exit(main())
