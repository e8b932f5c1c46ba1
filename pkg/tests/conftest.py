import math

import numpy as np
import pytest

from sconvex import cap, quarter_disk, reuleaux, spherical_hull


def cap_point(rng, max_ang: float, center_axis=None) -> np.ndarray:
    """Random point within angular distance max_ang of the +z pole."""
    ang = rng.uniform(0.0, max_ang)
    az = rng.uniform(0.0, 2.0 * math.pi)
    p = np.array([math.sin(ang) * math.cos(az),
                  math.sin(ang) * math.sin(az),
                  math.cos(ang)])
    return p


def random_polygon(rng, n_pts: int, cap_radius: float):
    """Convex polygon from the hull of random points in a polar cap."""
    while True:
        pts = [cap_point(rng, cap_radius) for _ in range(n_pts)]
        try:
            body = spherical_hull(pts)
        except Exception:
            continue
        if len(body.segments) >= 3:
            return body


@pytest.fixture(scope="session")
def cap04():
    return cap(np.array([0.0, 0.0, 1.0]), 0.4)


@pytest.fixture(scope="session")
def reuleaux3():
    return reuleaux(3, 1.0)


@pytest.fixture(scope="session")
def reuleaux5():
    return reuleaux(5, 1.2)


@pytest.fixture(scope="session")
def qdisk():
    return quarter_disk(0.8)


@pytest.fixture(scope="session")
def pentagon():
    return random_polygon(np.random.default_rng(20240811), 5, 0.6)
