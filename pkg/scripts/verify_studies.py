"""
Study Verification Script

Runs every study file in studies/ through mc-verify and prints a summary:
1. Centring (mu, theta) and the norming rate applied
2. KS distance and quantile gaps against the limit law
3. The verdict of each study (the negative control is expected to fail)

Usage:
    python scripts/verify_studies.py [--workers 4] [studies/normal.json ...]
"""

import argparse
import os
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from madstat.config import configure_logging
from madstat.models.study import VerifyConfig
from madstat.services.verification import mc_verify

STUDIES_DIR = Path(__file__).resolve().parent.parent / "studies"


def print_section(title):
    """Print a formatted section header."""
    print("\n" + "=" * 70)
    print(f"  {title}")
    print("=" * 70)


def show_report(report):
    study = report["study"]
    gof = report["gof"]
    print(f"  Generator: {study['generator']['kind']}, n={study['n']:,}, reps={study['reps']:,}")
    print(f"  Centring: mu={study['mu']:.6g}, theta={study['theta']:.6g} ({study['theta_source']})")
    print(f"  Norming: {study['rate']} = {study['norming']:.6g}")
    print(f"  Limit: {report['limit']}")
    print(f"\n  KS distance: {gof['ks_distance']:.4f} (tolerance {report['tolerances']['ks']})")
    print("  Quantiles:")
    for row in gof["quantile_table"]:
        print(f"    {row['level']:>5.2f}: study {row['sample_q']:>9.4f}  "
              f"reference {row['reference_q']:>9.4f}  gap {row['abs_gap']:.4f}")


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("studies", nargs="*", type=Path)
    parser.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    args = parser.parse_args()

    configure_logging("WARNING")
    paths = args.studies or sorted(STUDIES_DIR.glob("*.json"))

    print_section("MONTE CARLO VERIFICATION OF THE LIMIT LAWS")
    print(f"  {len(paths)} studies, {args.workers} workers")

    verdicts = {}
    for path in paths:
        print_section(path.stem.upper())
        report = mc_verify(VerifyConfig.load(path), workers=args.workers).report
        show_report(report)
        verdicts[path.stem] = report["verdict"]["passed"]
        print(f"\n{'✓' if verdicts[path.stem] else '✗'} {path.stem}")

    print_section("SUMMARY")
    for name, passed in verdicts.items():
        expected = "negative_control" not in name
        status = "✓" if passed == expected else "✗ UNEXPECTED"
        print(f"  {status} {name}: {'passed' if passed else 'failed'}")

    unexpected = [name for name, passed in verdicts.items() if passed != ("negative_control" not in name)]
    return 1 if unexpected else 0


if __name__ == "__main__":
    sys.exit(main())
