"""
Shared fixtures for the madstat test suite.

All randomness is seeded; a failing test reproduces exactly.
"""

import numpy as np
import pytest

from madstat.models.generators import Atom, DiscreteSpec, NormalSpec


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def normal_gen():
    return NormalSpec()


@pytest.fixture
def three_point_gen():
    """{-1: 1/4, 0: 1/2, 1: 1/4}: atom of mass 1/2 at the mean 0."""
    return DiscreteSpec(atoms=[Atom(value=-1.0, prob=0.25), Atom(value=0.0, prob=0.5), Atom(value=1.0, prob=0.25)])


@pytest.fixture
def csv_file(tmp_path):
    """Factory writing a CSV file from text."""

    def _write(text: str, name: str = "data.csv"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
