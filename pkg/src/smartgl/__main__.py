"""Allow ``python -m smartgl``."""

from .cli import main

raise SystemExit(main())
