"""Shared catalog name lists for the test suite."""

import numpy as np
import pytest

import curvlab as cl

# every built-in surface, in catalog order
ALL_NAMES = [
    "circle_r2",
    "circle_r3",
    "sphere2_r3",
    "sphere2_r4",
    "torus_rev_r3",
    "clifford_torus_r4",
    "sphere4_r5",
    "product_s2s2_r6",
    "graph_poly",
]

EVEN_M_NAMES = [n for n in ALL_NAMES if n not in ("circle_r2", "circle_r3")]
ODD_M_NAMES = ["circle_r2", "circle_r3"]

# closed surfaces with a declared Euler characteristic
CHI_NAMES = [n for n in ALL_NAMES if n != "graph_poly"]


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


def get(name):
    return cl.catalog_get(name)
