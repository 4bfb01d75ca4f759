import sys

from rmtscope.cli.main import main

sys.exit(main())
