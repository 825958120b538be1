"""
madstat - Mean Absolute Deviation Statistics

Library, command line tool and HTTP API for the sample mean absolute deviation
about the mean: point estimates, the exact finite-sample expansion, the three
asymptotic regimes (iid Gaussian, strongly mixing, iid stable) and a seeded
Monte Carlo harness that checks each limit law.
"""

__version__ = "1.0.0"

# Version tag carried by every JSON report
REPORT_SCHEMA_VERSION = "1"
