import sys

from epsilon_lab.cli import main

sys.exit(main())
