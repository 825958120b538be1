"""
API End-to-End Journey

Walks through the HTTP API of a running server:
1. Check the service is online
2. Estimate the MAD of a small sample
3. Expand sample MAD minus oracle MAD exactly
4. Build intervals in the iid, atom and stable regimes
5. Verify a small Monte Carlo study against its limit law

Start the server first:
    python -m madstat serve --port 8000
"""

import json
import sys

import httpx
import numpy as np

# API base URL
BASE_URL = "http://localhost:8000"


def print_section(title):
    """Print a formatted section header."""
    print("\n" + "=" * 70)
    print(f"  {title}")
    print("=" * 70)


def print_json(data, indent=2):
    """Pretty print JSON data."""
    print(json.dumps(data, indent=indent))


def post(client, path, body):
    response = client.post(f"{BASE_URL}/api/v1{path}", json=body)
    if response.status_code != 200:
        print(f"✗ {path}: {response.status_code} {response.text}")
        response.raise_for_status()
    print(f"✓ {path}")
    return response.json()


def main():
    rng = np.random.default_rng(2024)

    with httpx.Client(timeout=300.0) as client:
        print_section("STEP 1: SERVICE STATUS")
        print_json(client.get(f"{BASE_URL}/").json())

        print_section("STEP 2: POINT ESTIMATE")
        print_json(post(client, "/estimates", {"values": [1.0, 2.0, 3.0]}))

        print_section("STEP 3: EXACT EXPANSION")
        values = rng.standard_normal(1000).tolist()
        report = post(client, "/expansions", {"values": values, "mu": 0.0})
        total = report["linear_term"] + report["atom_term"] + report["remainder"]
        print(f"  lhs={report['lhs']:.3e}  terms={total:.3e}  |K_n|={report['k_count']}")

        print_section("STEP 4: INTERVALS")
        iid = post(client, "/intervals", {"values": values, "regime": "iid", "level": 0.95})
        print(f"  iid:    [{iid['lower']:.4f}, {iid['upper']:.4f}] around {iid['estimate']:.4f}")

        atom_values = rng.choice([-1.0, 0.0, 1.0], size=2000, p=[0.25, 0.5, 0.25]).tolist()
        atom = post(client, "/intervals", {"values": atom_values, "regime": "iid", "atom": True, "mu": 0.0})
        print(f"  atom:   [{atom['lower']:.4f}, {atom['upper']:.4f}] around {atom['estimate']:.4f}")

        heavy = rng.standard_t(1.5, 5000).tolist()
        stable = post(client, "/intervals", {"values": heavy, "regime": "stable", "mu": 0.0,
                                             "tail": {"alpha": 1.5, "shape": "student_t"}})
        print(f"  stable: [{stable['lower']:.4f}, {stable['upper']:.4f}] around {stable['estimate']:.4f}")

        print_section("STEP 5: MONTE CARLO VERIFICATION")
        study = {"study": {"generator": {"kind": "iid_exponential"}, "n": 500, "reps": 1000, "seed": 1},
                 "n_reference": 20000, "ks_tolerance": 0.06}
        verify = post(client, "/studies/verify", study)
        print(f"  KS distance {verify['gof']['ks_distance']:.4f}, passed={verify['verdict']['passed']}")

    print_section("JOURNEY COMPLETE")
    return 0


if __name__ == "__main__":
    sys.exit(main())
