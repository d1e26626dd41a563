"""Shared fixtures: the default atom and the expensive magic-point scans."""

import time

import pytest

from published_values import TABLE1

from dressedclock import AtomSpec
from dressedclock.magic import magic_scan


@pytest.fixture(scope="session")
def atom():
    return AtomSpec()


@pytest.fixture(scope="session")
def scan_timings():
    """Wall-clock seconds of the session-scoped scans, keyed by method."""
    return {}


@pytest.fixture(scope="session")
def wffa_points(atom, scan_timings):
    """Dict freq_MHz -> MagicPoint for the full published grid (WFFA)."""
    freqs_mhz = sorted(TABLE1)
    start = time.monotonic()
    points = magic_scan(atom, [f * 1e6 for f in freqs_mhz], method="wffa")
    scan_timings["wffa"] = time.monotonic() - start
    return dict(zip(freqs_mhz, points))


@pytest.fixture(scope="session")
def rwa_points(atom, scan_timings):
    freqs_mhz = sorted(TABLE1)
    start = time.monotonic()
    points = magic_scan(atom, [f * 1e6 for f in freqs_mhz], method="rwa")
    scan_timings["rwa"] = time.monotonic() - start
    return dict(zip(freqs_mhz, points))


@pytest.fixture(scope="session")
def magic_15_wffa(atom, wffa_points):
    """The 1.5 MHz WFFA magic point (medium dressing, far from resonances)."""
    return wffa_points[1.5]
