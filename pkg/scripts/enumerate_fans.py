#!/usr/bin/env python3
"""Enumerate all regular subdivisions of a few desk-scale configurations,
print their condition cones and pairwise refinement relations, and verify
the partition property on a pseudo-random sample of weight matrices.

Run from the repository root:

    python3 scripts/enumerate_fans.py [--samples N] [--seed S]
"""

import argparse
import random
from fractions import Fraction

from lexfan.config import PointConfig, is_triangulation, refines
from lexfan.exactlex import WeightMatrix
from lexfan.gkzfan import (
    condition_cone,
    cone_dim,
    enumerate_regular_subdivisions,
    subdivide,
)

CONFIGS = {
    "segment {-2,-1,0,2,4}": PointConfig(
        dim=1, points=((-2,), (-1,), (0,), (2,), (4,))
    ),
    "simplex with interior point": PointConfig(
        dim=2, points=((0, 0), (3, 0), (0, 3), (1, 1))
    ),
    "unit square": PointConfig(
        dim=2, points=((0, 0), (1, 0), (0, 1), (1, 1))
    ),
}


def random_matrix(rng: random.Random, n: int, r: int) -> WeightMatrix:
    return WeightMatrix(
        rows=tuple(
            tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(r))
            for _ in range(n)
        )
    )


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    for name, cfg in CONFIGS.items():
        subs = enumerate_regular_subdivisions(cfg)
        print(f"\n{name}: {len(subs)} regular subdivisions")
        for i, s in enumerate(subs):
            cc = condition_cone(cfg, s)
            tag = "triangulation" if is_triangulation(cfg, s) else "subdivision"
            print(
                f"  [{i}] {tag}, {len(s.cells)} cells, "
                f"cone dim (N=1) = {cone_dim(cfg, s, 1)}, "
                f"rays {len(cc.cone.rays)}, lines {len(cc.cone.lines)}"
            )
        relations = [
            (i, j)
            for i, si in enumerate(subs)
            for j, sj in enumerate(subs)
            if i != j and refines(cfg, si, sj)
        ]
        print(f"  refinement relations: {relations}")

        hits = [0] * len(subs)
        for _ in range(args.samples):
            psi = random_matrix(rng, rng.randint(1, 3), cfg.r)
            s = subdivide(cfg, psi)
            matches = [k for k, t in enumerate(subs) if t == s]
            assert len(matches) == 1, "partition property violated"
            hits[matches[0]] += 1
        print(f"  open-cone hits over {args.samples} random matrices: {hits}")


if __name__ == "__main__":
    main()
