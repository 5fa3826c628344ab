#!/usr/bin/env python3
"""End-to-end walkthrough of the five-point segment example: induced
subdivision, piecewise-linear map, the two quasi-valuations and their gap,
the power sequence with its accumulation points, and the degenerations.

Run from the repository root:

    python3 scripts/run_segment_example.py
"""

from fractions import Fraction

from lexfan.config import PointConfig, validate_subdivision
from lexfan.degeneration import gr_nu_reduced, gr_v_present, stanley_reisner
from lexfan.exactlex import WeightMatrix
from lexfan.gkzfan import (
    closed_member,
    condition_cone,
    g_eval,
    is_regular,
    linear_extension,
    open_member,
    subdivide,
)
from lexfan.quasival import (
    Expr,
    GradedPoint,
    delta_image,
    nu_quasi,
    power_seq,
    stack,
    stretch_factor,
    v_quasi,
    windowed_accumulation,
)


def main() -> None:
    cfg = PointConfig(dim=1, points=((-2,), (-1,), (0,), (2,), (4,)))
    psi = WeightMatrix(rows=((1, 0, 2, 0, 1), (0, 1, 1, 0, 1)))

    s = subdivide(cfg, psi)
    print("induced subdivision:")
    for cell in s.cells:
        print(f"  vertices {cell.vertices}  marking {cell.marking}")
    print("valid:", validate_subdivision(cfg, s).ok)
    print("regular:", is_regular(cfg, s))
    print("open member:", open_member(cfg, psi, s))
    print("closed member:", closed_member(cfg, psi, s).member)
    cc = condition_cone(cfg, s)
    print("condition cone rays:", cc.cone.rays)

    plm = linear_extension(cfg, s, psi)
    for w in [(1, -1), (1, 2), (2, -3), (3, Fraction(5, 2))]:
        print(f"g{w} =", g_eval(plm, w))

    f = Expr.from_terms([(GradedPoint(1, (-1,)), 1), (GradedPoint(1, (2,)), 1)])
    print("V(f)  =", v_quasi(plm, f).value)
    print("nu(f) =", nu_quasi(cfg, psi, f).value)

    seq = power_seq(cfg, psi, f, window=8, degree_bound=16)
    print("nu(f^l)/l for l = 1..8:")
    for ell, val in seq:
        print(f"  l={ell}: {val}")
    acc = windowed_accumulation([t for t in seq if t[0] >= 2])
    print("accumulation candidates:", sorted(acc.candidates))
    print("liminf over the window:", acc.liminf)

    img = delta_image(cfg, psi, plm, 8)
    print("delta image up to degree 8:", sorted(img.values))
    print("stretch factor:", stretch_factor(cfg, s))

    pres_v = gr_v_present(cfg, s, 6)
    print("gr_V components:", len(pres_v.components), "nilpotents:", len(pres_v.nilpotents))
    pres_nu = gr_nu_reduced(cfg, s, 6)
    print(
        "reduced gr_nu nilpotent classes:",
        [(u.vector, w) for u, w in pres_nu.nilpotents[:4]],
        "...",
    )
    print("Stanley-Reisner ideal:", stanley_reisner(cfg, s))

    stacked = stack(cfg, psi)
    print("stacked matrix rows:", stacked.n_rows, "(subdivision unchanged)")


if __name__ == "__main__":
    main()
