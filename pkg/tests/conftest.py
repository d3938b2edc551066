"""Shared fixtures and helpers for the test suite."""
from __future__ import annotations

import random
from typing import List

import pytest
from hypothesis import HealthCheck, settings

from realtoric.constructions import cyclic_polytope_normal_fan
from realtoric.fan import Fan, from_maximal_cones
from realtoric.intlin import mat_vec

settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def square_pyramid_fan() -> Fan:
    """Complete rank-3 fan over the faces of a square pyramid: the apex
    cone is singular while every non-maximal cone is mod-2 regular."""
    rays = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1), (0, 0, -1)]
    maximal = [[0, 1, 2, 3], [0, 1, 4], [1, 2, 4], [2, 3, 4], [3, 0, 4]]
    return from_maximal_cones(3, rays, maximal, name="squarepyramid")


def cube_fan() -> Fan:
    """Complete rank-3 fan over the faces of a cube: all eight rays share
    the mod-2 image (1,1,1), so no 2-dimensional cone is mod-2 regular."""
    rays = [(x, y, z) for x in (1, -1) for y in (1, -1) for z in (1, -1)]
    maximal = [
        [0, 1, 2, 3],
        [4, 5, 6, 7],
        [0, 1, 4, 5],
        [2, 3, 6, 7],
        [0, 2, 4, 6],
        [1, 3, 5, 7],
    ]
    return from_maximal_cones(3, rays, maximal, name="cubefan")


def random_unimodular(rng: random.Random, n: int, ops: int = 8) -> List[List[int]]:
    """Random determinant +-1 integer matrix from elementary row operations."""
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(ops):
        kind = rng.randrange(3)
        i = rng.randrange(n)
        if kind == 0 and n > 1:
            j = rng.randrange(n)
            if i != j:
                c = rng.choice((-2, -1, 1, 2))
                u[i] = [a + c * b for a, b in zip(u[i], u[j])]
        elif kind == 1 and n > 1:
            j = rng.randrange(n)
            u[i], u[j] = u[j], u[i]
        else:
            u[i] = [-a for a in u[i]]
    return u


def apply_unimodular(fan: Fan, rng: random.Random) -> Fan:
    """Transform every ray by a random unimodular matrix; the result is an
    isomorphic fan, so pairwise revalidation is skipped."""
    u = random_unimodular(rng, fan.rank)
    rays = [tuple(mat_vec(u, r)) for r in fan.rays]
    maximal = [list(fan.cones[ci].rays) for ci in fan.maximal_cones()]
    return from_maximal_cones(
        fan.rank, rays, maximal, name=fan.name, validate_pairs=False
    )


def relabel_rays(fan: Fan, rng: random.Random) -> Fan:
    """Permute the ray indices; the fan itself is unchanged."""
    m = len(fan.rays)
    perm = list(range(m))
    rng.shuffle(perm)
    rays: List = [None] * m
    for old, new in enumerate(perm):
        rays[new] = fan.rays[old]
    maximal = [
        [perm[i] for i in fan.cones[ci].rays] for ci in fan.maximal_cones()
    ]
    return from_maximal_cones(
        fan.rank, rays, maximal, name=fan.name, validate_pairs=False
    )


@pytest.fixture(scope="session")
def cyclic_fan() -> Fan:
    return cyclic_polytope_normal_fan()


@pytest.fixture(scope="session")
def pyramid_fan() -> Fan:
    return square_pyramid_fan()


@pytest.fixture(scope="session")
def cubefan() -> Fan:
    return cube_fan()
