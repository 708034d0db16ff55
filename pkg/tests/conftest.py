import itertools

import numpy as np
import pytest

from mvlab import geometry as geo


def rand_body(dim, seed, n_points=8, symmetric=False):
    kind = "symmetric_hull" if symmetric else "random_hull"
    return geo.generate(geo.BodyGenSpec(dim=dim, kind=kind, seed=seed, n_points=n_points))


def box(*sides):
    return geo.generate(geo.BodyGenSpec(dim=len(sides), kind="box", sides=sides))


@pytest.fixture
def unit_square():
    return box(1, 1)


@pytest.fixture
def unit_cube():
    return box(1, 1, 1)


@pytest.fixture
def centered_square():
    return geo.hull([[-1, -1], [1, -1], [1, 1], [-1, 1]], 2)
