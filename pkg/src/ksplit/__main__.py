import sys

from ksplit.cli import main

sys.exit(main())
