"""Point configurations, marked polytopes and polytopal subdivisions.

A configuration is a finite list of distinct lattice points affinely spanning
its ambient space.  Subdivisions are stored combinatorially: each cell is a
vertex-index set plus a marking (indices of configuration points attached to
the cell).  All geometry goes through the homogenization cone, so every
predicate is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Optional, Sequence

from lexfan.cones import PolyCone
from lexfan.errors import DimensionError, SchemaError
from lexfan.linalg import det, dot, frac_vec, rank

Point = tuple


@dataclass(frozen=True)
class PointConfig:
    """A configuration (P, A): distinct integer points whose affine span is
    the full ambient space; P is their convex hull."""

    dim: int
    points: tuple

    def __post_init__(self):
        pts = tuple(tuple(int(c) for c in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if any(len(p) != self.dim for p in pts):
            raise DimensionError("point length != ambient dimension")
        if len(set(pts)) != len(pts):
            raise SchemaError("configuration points must be distinct")
        if rank([(1,) + p for p in pts]) != self.dim + 1:
            raise SchemaError("points do not affinely span the ambient space")

    @property
    def r(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        """Homogenized dimension (degree coordinate + ambient)."""
        return self.dim + 1

    def homogenized(self, j: int) -> tuple:
        return (1,) + self.points[j]

    def hull(self) -> "Hull":
        return hull_of(self.points)


@dataclass(frozen=True)
class Hull:
    """Exact hull data of a point list: facet inequalities, affine-hull
    equations (both on homogenized coordinates (1, x)), and vertex indices."""

    points: tuple
    facets: tuple  # a with a.(1,x) <= 0 on the hull
    affine_eqs: tuple  # a with a.(1,x) = 0 on the hull
    vertices: tuple  # indices into points

    @property
    def intrinsic_dim(self) -> int:
        return len(self.points[0]) - len(self.affine_eqs)

    def contains(self, x: Sequence) -> bool:
        h = (Fraction(1),) + tuple(Fraction(c) for c in x)
        return all(dot(a, h) == 0 for a in self.affine_eqs) and all(
            dot(a, h) <= 0 for a in self.facets
        )

    def tight_facets(self, xs: Iterable[Sequence]) -> tuple:
        """Facets active on every one of the given points."""
        hs = [(Fraction(1),) + tuple(Fraction(c) for c in x) for x in xs]
        return tuple(a for a in self.facets if all(dot(a, h) == 0 for h in hs))

    def face_vertices(self, facet_subset: Sequence) -> tuple:
        """Coordinates of the hull vertices on which every given facet is
        active (the vertex set of the corresponding face)."""
        out = []
        for i in self.vertices:
            h = (Fraction(1),) + tuple(Fraction(c) for c in self.points[i])
            if all(dot(a, h) == 0 for a in facet_subset):
                out.append(self.points[i])
        return tuple(out)

    def faces(self) -> list[frozenset]:
        """All faces as frozensets of point indices (indices into the point
        list, restricted to points lying on the face), the hull included."""
        idx_on = lambda facets: frozenset(
            i
            for i, p in enumerate(self.points)
            if all(
                dot(a, (Fraction(1),) + tuple(Fraction(c) for c in p)) == 0
                for a in facets
            )
        )
        seen = {}
        frontier = [()]
        while frontier:
            nxt = []
            for facets in frontier:
                key = idx_on(facets)
                if key in seen:
                    continue
                seen[key] = facets
                for a in self.facets:
                    if a not in facets:
                        nxt.append(facets + (a,))
            frontier = nxt
        return list(seen.keys())


@lru_cache(maxsize=4096)
def hull_of(points: tuple) -> Hull:
    """Hull via the cone over the homogenized points."""
    pts = tuple(tuple(Fraction(c) for c in p) for p in points)
    cone = PolyCone.from_generators(len(pts[0]) + 1, rays=[(Fraction(1),) + p for p in pts])
    vertices = []
    for ray in cone.rays:
        if ray[0] <= 0:  # cannot happen for a cone over a point set
            continue
        x = tuple(c / ray[0] for c in ray[1:])
        for i, p in enumerate(pts):
            if p == x:
                vertices.append(i)
                break
    return Hull(
        points=points,
        facets=cone.ineq_normals,
        affine_eqs=cone.eq_normals,
        vertices=tuple(sorted(vertices)),
    )


def hull_faces(points: Sequence[Sequence]) -> Hull:
    """Exact H-description of the hull (facets + affine-hull equations);
    faces enumerable on demand via Hull.faces()."""
    return hull_of(tuple(tuple(int(c) for c in p) for p in points))


# ---------------------------------------------------------------------------
# volume and triangulation helpers (exact, used by the covering check)
# ---------------------------------------------------------------------------

def _triangulate(points: tuple) -> list[tuple]:
    """Pulling triangulation of conv(points) into simplices (vertex tuples),
    valid in any intrinsic dimension."""
    h = hull_of(points)
    verts = [points[i] for i in h.vertices]
    k = h.intrinsic_dim
    if len(verts) == k + 1:
        return [tuple(verts)]
    v0 = min(verts)
    h0 = (Fraction(1),) + tuple(Fraction(c) for c in v0)
    simplices = []
    for a in h.facets:
        if dot(a, h0) == 0:
            continue  # v0 lies on this facet
        facet_pts = tuple(
            p
            for p in points
            if dot(a, (Fraction(1),) + tuple(Fraction(c) for c in p)) == 0
        )
        for s in _triangulate(facet_pts):
            simplices.append((v0,) + s)
    return simplices


def volume(points: Sequence[Sequence]) -> Fraction:
    """Exact Euclidean volume of a full-dimensional polytope."""
    pts = tuple(tuple(Fraction(c) for c in p) for p in points)
    d = len(pts[0])
    total = Fraction(0)
    for simplex in _triangulate(pts):
        rows = [tuple(a - b for a, b in zip(v, simplex[0])) for v in simplex[1:]]
        total += abs(det(rows))
    return total / factorial(d)


def _intersection_vertices(pa: tuple, pb: tuple) -> list[tuple]:
    """Vertices of conv(pa) intersect conv(pb), exactly."""
    ha, hb = hull_of(pa), hull_of(pb)
    d = len(pa[0])
    ineqs = list(ha.facets) + list(hb.facets)
    ineqs.append(tuple([Fraction(-1)] + [Fraction(0)] * d))  # t >= 0
    eqs = list(ha.affine_eqs) + list(hb.affine_eqs)
    cone = PolyCone.from_normals(d + 1, ineqs=ineqs, eqs=eqs)
    verts = []
    for ray in cone.rays:
        if ray[0] > 0:
            verts.append(tuple(c / ray[0] for c in ray[1:]))
    return verts


def _face_to_face(pa: tuple, pb: tuple) -> bool:
    """True iff the two polytopes meet in a common face (or not at all)."""
    iv = _intersection_vertices(pa, pb)
    if not iv:
        return True
    for h in (hull_of(pa), hull_of(pb)):
        tight = h.tight_facets(iv)
        if len(tight) == 0 and len(iv) < len(h.vertices):
            return False  # intersection meets the interior but is smaller
        if set(h.face_vertices(tight)) != set(iv):
            return False
    return True


# ---------------------------------------------------------------------------
# marked cells and subdivisions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MarkedCell:
    """A full-dimensional cell given by its vertex indices into A, together
    with its marking (a subset of A in the cell containing all vertices)."""

    vertices: tuple
    marking: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))
        object.__setattr__(self, "marking", tuple(sorted(set(self.marking))))


@dataclass(frozen=True)
class MarkedSubdivision:
    """A set of marked cells; canonical form sorts cells by (vertices,
    marking), making structural equality the right notion of sameness."""

    cells: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "cells", tuple(sorted(self.cells, key=lambda c: (c.vertices, c.marking)))
        )

    @property
    def marked_points(self) -> tuple:
        out = set()
        for c in self.cells:
            out.update(c.marking)
        return tuple(sorted(out))


def trivial_subdivision(cfg: PointConfig) -> MarkedSubdivision:
    h = cfg.hull()
    return MarkedSubdivision(
        cells=(MarkedCell(vertices=h.vertices, marking=tuple(range(cfg.r))),)
    )


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple  # of (code, message)


def _cell_points(cfg: PointConfig, cell: MarkedCell) -> tuple:
    return tuple(cfg.points[i] for i in cell.vertices)


def validate_subdivision(cfg: PointConfig, s: MarkedSubdivision) -> ValidationReport:
    """Check covering, face-to-face intersections, and marking conditions."""
    v: list[tuple] = []
    for c in s.cells:
        for i in c.vertices + c.marking:
            if not 0 <= i < cfg.r:
                v.append(("index-range", f"index {i} out of range"))
                return ValidationReport(False, tuple(v))

    if len(set(s.cells)) != len(s.cells):
        v.append(("duplicate-cell", "a cell is listed twice"))

    hulls = {}
    for c in s.cells:
        h = hull_of(_cell_points(cfg, c))
        hulls[c] = h
        if h.intrinsic_dim != cfg.dim:
            v.append(("cell-not-full-dim", f"cell {c.vertices} is degenerate"))
            continue
        if tuple(c.vertices[i] for i in h.vertices) != c.vertices:
            v.append(
                ("vertex-set", f"cell {c.vertices}: listed points are not all vertices")
            )
        if not set(c.vertices) <= set(c.marking):
            v.append(("marking-missing-vertex", f"cell {c.vertices}"))
        for i in c.marking:
            if not h.contains(cfg.points[i]):
                v.append(("marking-outside-cell", f"point {i} not in cell {c.vertices}"))

    if v:
        return ValidationReport(False, tuple(v))

    for ca, cb in itertools.combinations(s.cells, 2):
        pa, pb = _cell_points(cfg, ca), _cell_points(cfg, cb)
        if not _face_to_face(pa, pb):
            v.append(("overlap-not-face", f"cells {ca.vertices} and {cb.vertices}"))
            continue
        for i in range(cfg.r):
            p = cfg.points[i]
            if hulls[ca].contains(p) and hulls[cb].contains(p):
                if (i in ca.marking) != (i in cb.marking):
                    v.append(
                        (
                            "marking-mismatch",
                            f"point {i} on cells {ca.vertices} / {cb.vertices}",
                        )
                    )

    total = sum((volume(_cell_points(cfg, c)) for c in s.cells), Fraction(0))
    if total != volume(cfg.points):
        v.append(("not-covering", f"cell volumes sum to {total}"))

    return ValidationReport(not v, tuple(v))


def refines(cfg: PointConfig, s: MarkedSubdivision, coarse: MarkedSubdivision) -> bool:
    """True iff within every cell of the coarse subdivision, the contained
    cells of s cover it and carry markings inside the coarse marking."""
    for big in coarse.cells:
        hb = hull_of(_cell_points(cfg, big))
        inside = [
            c
            for c in s.cells
            if all(hb.contains(cfg.points[i]) for i in c.vertices)
        ]
        total = sum(
            (volume(_cell_points(cfg, c)) for c in inside), Fraction(0)
        )
        if total != volume(_cell_points(cfg, big)):
            return False
        for c in inside:
            if not set(c.marking) <= set(big.marking):
                return False
    return True


def is_triangulation(cfg: PointConfig, s: MarkedSubdivision) -> bool:
    """Every cell a simplex marked exactly by its vertices."""
    return all(
        len(c.vertices) == cfg.dim + 1 and c.marking == c.vertices
        for c in s.cells
    )
