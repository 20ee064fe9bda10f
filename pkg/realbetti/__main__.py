"""Allow `python -m realbetti`"""

import sys

from realbetti.main import main

if __name__ == "__main__":
    sys.exit(main())
