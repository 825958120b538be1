"""Entry point for ``python -m madstat``."""

from madstat.cli import main

raise SystemExit(main())
