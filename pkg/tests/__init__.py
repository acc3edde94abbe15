import numpy as np
import pytest


def check_entropy_bounds(report, tol=1e-9):
    """ Subadditivity, Araki-Lieb and the ratio identity. """
    smallest = min(report.s_atom, report.s_rad)
    assert -tol <= report.mutual <= 2 * smallest + tol
    assert report.s_joint <= report.s_atom + report.s_rad + tol
    assert abs(report.s_atom - report.s_rad) <= report.s_joint + tol
    if report.ratio is not None:
        assert report.ratio == pytest.approx(1 - report.mutual / report.s_atom, abs=1e-10)


def random_points(seed, size, low, high):
    return np.random.default_rng(seed).uniform(low, high, size)
