import sys

from flutelab.main import main

sys.exit(main())
