import sys

from defect_diode.cli import main

sys.exit(main())
