import sys

from lapsum.cli import main

sys.exit(main())
