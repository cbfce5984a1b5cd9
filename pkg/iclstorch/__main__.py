import sys

from iclstorch.cli import main

sys.exit(main())
