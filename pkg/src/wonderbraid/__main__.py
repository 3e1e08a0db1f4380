from wonderbraid.cli import main
import sys

sys.exit(main())
