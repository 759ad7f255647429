"""Shared fixtures: the three desk lattices, their groups/domains, and a
random even hyperbolic lattice generator for property tests."""

import random
from pathlib import Path

import pytest

from k3cone import Lattice, build_group, nef_walls, sterk_domain, validate_problem

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"

GRAM_U = ((0, 1), (1, 0))
GRAM_P = ((4, 0), (0, -2))
GRAM_R = ((2, 7), (7, 2))
AMPLE_U = (2, 1)
AMPLE_P = (2, 1)
AMPLE_R = (1, 1)
GAMMA_P = ((3, -2), (4, -3))
G_R = ((0, -1), (1, 7))
SWAP = ((0, 1), (1, 0))
GENS = {"U": [], "P": [GAMMA_P], "R": [G_R, SWAP]}


@pytest.fixture(scope="session")
def lu():
    return Lattice(GRAM_U), AMPLE_U


@pytest.fixture(scope="session")
def lp():
    return Lattice(GRAM_P), AMPLE_P


@pytest.fixture(scope="session")
def lr():
    return Lattice(GRAM_R), AMPLE_R


@pytest.fixture(scope="session")
def setups(lu, lp, lr):
    """name -> (lattice, ample, group, nef description, sterk domain)."""
    out = {}
    for name, (lat, ample) in (("U", lu), ("P", lp), ("R", lr)):
        nef = nef_walls(lat, ample)
        grp = build_group(lat, ample, GENS[name], nef)
        dom = sterk_domain(lat, ample, grp, nef)
        out[name] = (lat, ample, grp, nef, dom)
    return out


@pytest.fixture
def problems_dir():
    return PROBLEMS


def random_even_hyperbolic(rng: random.Random, rank: int = 3, spread: int = 6):
    """A random even lattice of signature (1, rank-1) with a valid ample class.

    Rejection-samples symmetric integer matrices with even diagonal and
    entries in [-spread, spread], then searches a small box for an ample
    class of positive norm off every wall.
    """
    while True:
        gram = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            gram[i][i] = 2 * rng.randint(-spread // 2, spread // 2)
            for j in range(i + 1, rank):
                gram[i][j] = gram[j][i] = rng.randint(-spread, spread)
        try:
            lat = Lattice(tuple(tuple(row) for row in gram))
        except Exception:
            continue
        candidates = []
        for _ in range(200):
            v = tuple(rng.randint(-4, 4) for _ in range(rank))
            if lat.norm(v) > 0:
                candidates.append(v)
        for v in sorted(set(candidates), key=lambda w: lat.norm(w)):
            try:
                return validate_problem(lat.gram, v)
            except Exception:
                continue
