"""Deterministic random generators and reference constructions shared by
the module tests and the acceptance suite."""

from __future__ import annotations

import random
from fractions import Fraction

from lexfan.cones import PolyCone
from lexfan.exactlex import WeightMatrix


def random_cone(rng: random.Random, dim: int, max_gens: int = 6) -> PolyCone:
    rays = [
        tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(dim))
        for _ in range(rng.randint(1, max_gens))
    ]
    return PolyCone.from_generators(dim, rays=rays)


def polar(c: PolyCone) -> PolyCone:
    """The ordinary polar {y : y.x <= 0 for all x in C}."""
    gens = c.generators
    if not gens:
        return PolyCone.full(c.dim)
    return PolyCone.from_normals(c.dim, ineqs=gens)


def random_matrix(rng: random.Random, n: int, r: int) -> WeightMatrix:
    return WeightMatrix(
        rows=tuple(
            tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(r))
            for _ in range(n)
        )
    )


def criterion3_cones(count: int = 200, seed: int = 202):
    """The fixed pseudo-random cone population shared by the polar-duality
    and dimension-formula acceptance tests."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        dim = rng.randint(2, 5)
        a = random_cone(rng, dim)
        b = random_cone(rng, dim)
        n = rng.randint(1, 3)
        out.append((a, b, n))
    return out
