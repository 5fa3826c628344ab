"""Associated graded algebras of the two quasi-valuations, materialized as
multiplication tables on a degree-truncated basis, plus the Stanley-Reisner
ideal in the triangulation case and a Khovanskii-basis report."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from lexfan.config import (
    MarkedCell,
    MarkedSubdivision,
    PointConfig,
    hull_of,
    is_triangulation,
)
from lexfan.exactlex import WeightMatrix
from lexfan.quasival import (
    GradedPoint,
    _bounded_combination,
    cell_semigroup,
    in_any_SQ1,
    in_cell_cone,
    in_SQ1,
    semigroup_up_to,
    stretch_factor,
)


@dataclass(frozen=True)
class ComponentCertificate:
    """Irredundancy witness for one cell: the sum of its degree-1 classes
    lies in that cell's monoid and in no other cell's cone, so its class
    annihilates every other component while remaining nonzero."""

    cell: int
    witness: GradedPoint
    in_own_cell: bool
    outside_others: bool

    @property
    def ok(self) -> bool:
        return self.in_own_cell and self.outside_others


@dataclass(frozen=True)
class FanAlgebraPresentation:
    """Degree-truncated presentation: basis classes, per-cell component
    monoids, the structure rule as a table, nilpotent classes (empty for the
    piecewise-linear valuation), and per-cell certificates."""

    subdivision: MarkedSubdivision
    bound: int
    basis: tuple  # of GradedPoint
    components: tuple  # per cell: tuple of GradedPoint in its monoid
    table: dict  # (u, w) -> GradedPoint or None (product is zero)
    nilpotents: tuple  # of (GradedPoint, exponent witness)
    certificates: tuple  # of ComponentCertificate
    equidimensional: bool

    def product(self, u: GradedPoint, w: GradedPoint) -> Optional[GradedPoint]:
        key = (u, w) if (u.vector <= w.vector) else (w, u)
        return self.table[key]


def _build_table(basis, bound, shares_component):
    table = {}
    for i, u in enumerate(basis):
        for w in basis[i:]:
            if u.d == 0 or w.d == 0 or u.d + w.d > bound:
                continue
            table[(u, w)] = u + w if shares_component(u, w) else None
    return table


def gr_v_present(cfg: PointConfig, s: MarkedSubdivision, bound: int) -> FanAlgebraPresentation:
    """Presentation of the graded algebra of the piecewise-linear valuation:
    classes multiply through when they share a cell cone, otherwise to zero.
    Reduced, with one irreducible component per cell."""
    basis = tuple(semigroup_up_to(cfg, bound))
    comps = tuple(
        tuple(cell_semigroup(cfg, s, cell, bound)) for cell in s.cells
    )
    members = [set(u.vector for u in comp) for comp in comps]

    def shares(u, w):
        return any(u.vector in m and w.vector in m for m in members)

    table = _build_table(basis, bound, shares)
    certs = []
    for ci, cell in enumerate(s.cells):
        inside = [i for i in range(cfg.r) if hull_of(
            tuple(cfg.points[j] for j in cell.vertices)
        ).contains(cfg.points[i])]
        witness = GradedPoint(len(inside), tuple(
            sum(cfg.points[i][k] for i in inside) for k in range(cfg.dim)
        ))
        in_own = in_cell_cone(cfg, witness, cell)
        outside = all(
            not in_cell_cone(cfg, witness, other)
            for cj, other in enumerate(s.cells)
            if cj != ci
        )
        certs.append(ComponentCertificate(ci, witness, in_own, outside))
    equidim = all(
        hull_of(tuple(cfg.points[i] for i in c.vertices)).intrinsic_dim == cfg.dim
        for c in s.cells
    )
    return FanAlgebraPresentation(
        subdivision=s,
        bound=bound,
        basis=basis,
        components=comps,
        table=table,
        nilpotents=(),
        certificates=tuple(certs),
        equidimensional=equidim,
    )


def gr_nu_reduced(cfg: PointConfig, s: MarkedSubdivision, bound: int) -> FanAlgebraPresentation:
    """The reduced graded algebra of the weighting valuation: components are
    the marked submonoids; classes outside every marked submonoid are
    nilpotent, witnessed by the smallest stretch multiple that lands in one."""
    basis = tuple(semigroup_up_to(cfg, bound))
    comps = tuple(
        tuple(u for u in basis if in_SQ1(cfg, u, cell)) for cell in s.cells
    )
    members = [set(u.vector for u in comp) for comp in comps]

    def shares(u, w):
        return any(u.vector in m and w.vector in m for m in members)

    table = _build_table(basis, bound, shares)
    stretch = stretch_factor(cfg, s, degree_bound=bound)
    nils = []
    for u in basis:
        if u.d == 0 or in_any_SQ1(cfg, s, u):
            continue
        witness = next(
            (
                k
                for k in range(2, stretch + 1)
                if in_any_SQ1(cfg, s, u.scaled(k))
            ),
            None,
        )
        nils.append((u, witness))
    return FanAlgebraPresentation(
        subdivision=s,
        bound=bound,
        basis=basis,
        components=comps,
        table=table,
        nilpotents=tuple(nils),
        certificates=(),
        equidimensional=all(
            hull_of(tuple(cfg.points[i] for i in c.vertices)).intrinsic_dim == cfg.dim
            for c in s.cells
        ),
    )


@dataclass(frozen=True)
class SRIdeal:
    """Stanley-Reisner data of a triangulation: squarefree monomial
    generators (minimal non-faces) on the marked variables, plus the
    variables of unmarked points, which become nilpotent."""

    variables: tuple  # indices of marked points
    nonfaces: tuple  # minimal non-faces, each a sorted index tuple
    nilpotent: tuple  # indices of unmarked points


def stanley_reisner(cfg: PointConfig, t: MarkedSubdivision) -> SRIdeal:
    if not is_triangulation(cfg, t):
        raise ValueError("Stanley-Reisner ideal requires a triangulation")
    variables = tuple(t.marked_points)
    facets = [frozenset(c.vertices) for c in t.cells]

    def is_face(subset) -> bool:
        return any(subset <= f for f in facets)

    nonfaces = []
    for size in range(2, len(variables) + 1):
        for combo in itertools.combinations(variables, size):
            sub = frozenset(combo)
            if is_face(sub):
                continue
            if all(is_face(sub - {x}) for x in sub):
                nonfaces.append(tuple(sorted(combo)))
    nilpotent = tuple(i for i in range(cfg.r) if i not in variables)
    return SRIdeal(variables=variables, nonfaces=tuple(nonfaces), nilpotent=nilpotent)


@dataclass(frozen=True)
class KhovanskiiReport:
    """Whether the degree-1 classes generate the graded algebra of the
    piecewise-linear valuation up to the bound."""

    bound: int
    generated: tuple  # points expressible inside a common cell
    extra_generators: tuple  # points requiring new generators, with cells
    per_cell_extras: tuple  # per cell: S_Q elements not generated by A cap Q


def khovanskii_report(
    cfg: PointConfig, s: MarkedSubdivision, bound: int
) -> KhovanskiiReport:
    inside_sets = []
    for cell in s.cells:
        h = hull_of(tuple(cfg.points[i] for i in cell.vertices))
        inside_sets.append(
            tuple(i for i in range(cfg.r) if h.contains(cfg.points[i]))
        )
    generated, extra = [], []
    for u in semigroup_up_to(cfg, bound):
        if u.d == 0:
            continue
        cells_holding = [
            ci for ci, cell in enumerate(s.cells) if in_cell_cone(cfg, u, cell)
        ]
        ok = any(
            _bounded_combination(cfg, u, inside_sets[ci]) is not None
            for ci in cells_holding
        )
        (generated if ok else extra).append((u, tuple(cells_holding)))
    per_cell = []
    for ci, cell in enumerate(s.cells):
        extras = tuple(
            u
            for u in cell_semigroup(cfg, s, cell, bound)
            if u.d > 0 and _bounded_combination(cfg, u, inside_sets[ci]) is None
        )
        per_cell.append(extras)
    return KhovanskiiReport(
        bound=bound,
        generated=tuple(u for u, _ in generated),
        extra_generators=tuple(extra),
        per_cell_extras=tuple(per_cell),
    )
