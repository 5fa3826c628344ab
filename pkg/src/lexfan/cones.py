"""Exact polyhedral cones in Q^r and their lexicographic counterparts in
matrix space.

A PolyCone carries both descriptions:
  V-description: lineality basis (lines) + extreme rays (rays),
  H-description: equality normals + inequality normals, cone = all x with
                 n.x = 0 on equalities and n.x <= 0 on inequalities.
Conversion is by the double description method over Fraction.  Canonical
forms (rref lineality bases, rays projected off the lineality span, primitive
integer vectors, sorted) make structural equality meaningful.

A MuCone is a finite intersection of generalized half-spaces
{Psi : Psi.v <= 0 lexicographically} in the space of N x r matrices; it is
stored canonically through the generating vectors v of its co-polar cone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from lexfan.errors import DimensionError
from lexfan.exactlex import LexVec, WeightMatrix, lex_sign, mat_vec
from lexfan.linalg import (
    canonical_subspace_basis,
    dot,
    frac_vec,
    is_zero,
    nullspace,
    primitive,
    project_off,
    rank,
    rref,
    vec_scale,
    vec_sub,
)


# ---------------------------------------------------------------------------
# double description: H-description -> (lines, rays)
# ---------------------------------------------------------------------------

def _dd(dim: int, eqs: Sequence[Sequence], ineqs: Sequence[Sequence]):
    """Extreme rays and lineality of {x : e.x = 0 (e in eqs), a.x <= 0}."""
    lines = [
        tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)
    ]
    rays: list[tuple] = []
    processed: list[tuple] = []  # inequality constraints seen so far

    def reduce_by_line(a, w):
        """Intersect with the constraint using lineality direction w."""
        aw = dot(a, w)
        nonlocal lines, rays
        lines = [vec_sub(v, vec_scale(w, dot(a, v) / aw)) for v in lines if v != w]
        rays = [
            primitive(vec_sub(r, vec_scale(w, dot(a, r) / aw))) for r in rays
        ]

    for a in eqs:
        a = frac_vec(a)
        if is_zero(a):
            continue
        w = next((v for v in lines if dot(a, v) != 0), None)
        if w is not None:
            reduce_by_line(a, w)
            continue
        _cut(a, rays, processed, equality=True)
        processed.append(a)

    for a in ineqs:
        a = frac_vec(a)
        if is_zero(a):
            continue
        w = next((v for v in lines if dot(a, v) != 0), None)
        if w is not None:
            if dot(a, w) > 0:
                w_dir = tuple(-x for x in w)
            else:
                w_dir = w
            reduce_by_line(a, w)
            rays.append(primitive(w_dir))
            processed.append(a)
            continue
        _cut(a, rays, processed, equality=False)
        processed.append(a)

    rays = [r for r in rays if not is_zero(r)]
    return [primitive(l) for l in lines], _dedupe(rays)


def _cut(a, rays, processed, equality):
    """Standard double-description step on the pointed part."""
    vals = {r: dot(a, r) for r in rays}
    pos = [r for r in rays if vals[r] > 0]
    neg = [r for r in rays if vals[r] < 0]
    zero = [r for r in rays if vals[r] == 0]
    if not pos and not (equality and neg):
        return
    keep = zero + ([] if equality else neg)

    def zset(r):
        return frozenset(k for k, c in enumerate(processed) if dot(c, r) == 0)

    zsets = {r: zset(r) for r in rays}
    new = []
    pairs = (
        itertools.product(pos, neg)
        if not equality
        else itertools.product(pos, neg)
    )
    for rp, rn in pairs:
        common = zsets[rp] & zsets[rn]
        if any(
            common <= zsets[o] for o in rays if o is not rp and o is not rn
        ):
            continue  # not adjacent
        combo = vec_sub(vec_scale(rn, vals[rp]), vec_scale(rp, vals[rn]))
        if not is_zero(combo):
            new.append(primitive(combo))
    rays[:] = _dedupe(keep + new)


def _dedupe(vectors: Iterable[tuple]) -> list[tuple]:
    seen, out = set(), []
    for v in vectors:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# PolyCone
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyCone:
    """Canonical dual-description polyhedral cone in Q^dim."""

    dim: int
    lines: tuple  # canonical lineality basis
    rays: tuple  # extreme rays mod lineality, canonical
    eq_normals: tuple  # canonical basis of the span-orthogonal constraints
    ineq_normals: tuple  # facet normals mod eq span, canonical

    # -- construction -------------------------------------------------------

    @staticmethod
    def from_generators(
        dim: int, rays: Sequence[Sequence] = (), lines: Sequence[Sequence] = ()
    ) -> "PolyCone":
        gens = [frac_vec(r) for r in rays]
        lin = [frac_vec(l) for l in lines]
        for g in gens + lin:
            if len(g) != dim:
                raise DimensionError("generator length != ambient dimension")
        # polar cone of the generators gives the H-description
        constraints = gens + lin + [tuple(-x for x in l) for l in lin]
        pol_lines, pol_rays = _dd(dim, [], constraints)
        return PolyCone._from_double(dim, eqs=pol_lines, ineqs=pol_rays)

    @staticmethod
    def from_normals(
        dim: int, ineqs: Sequence[Sequence] = (), eqs: Sequence[Sequence] = ()
    ) -> "PolyCone":
        for n in list(ineqs) + list(eqs):
            if len(n) != dim:
                raise DimensionError("normal length != ambient dimension")
        return PolyCone._from_double(dim, eqs=eqs, ineqs=ineqs)

    @staticmethod
    def _from_double(dim, eqs, ineqs) -> "PolyCone":
        lines, rays = _dd(dim, eqs, ineqs)
        pol_lines, pol_rays = _dd(
            dim, [], rays + lines + [tuple(-x for x in l) for l in lines]
        )
        return PolyCone(
            dim=dim,
            lines=_canon_lines(lines),
            rays=_canon_rays(rays, lines),
            eq_normals=_canon_lines(pol_lines),
            ineq_normals=_canon_rays(pol_rays, pol_lines),
        )

    @staticmethod
    def zero(dim: int) -> "PolyCone":
        return PolyCone.from_generators(dim)

    @staticmethod
    def full(dim: int) -> "PolyCone":
        return PolyCone.from_normals(dim)

    # -- queries ------------------------------------------------------------

    @property
    def generators(self) -> tuple:
        """Generator list with lineality expanded as opposite ray pairs."""
        return self.rays + self.lines + tuple(
            tuple(-x for x in l) for l in self.lines
        )

    @property
    def normals(self) -> tuple:
        return self.ineq_normals + self.eq_normals + tuple(
            tuple(-x for x in n) for n in self.eq_normals
        )

    def contains(self, x: Sequence) -> bool:
        x = frac_vec(x)
        if len(x) != self.dim:
            raise DimensionError("point length != ambient dimension")
        return all(dot(n, x) == 0 for n in self.eq_normals) and all(
            dot(n, x) <= 0 for n in self.ineq_normals
        )

    def cone_dim(self) -> int:
        return rank(list(self.lines) + list(self.rays))

    def lineality_dim(self) -> int:
        return len(self.lines)

    def is_pointed(self) -> bool:
        return not self.lines

    def relative_interior_point(self) -> tuple:
        """Sum of the extreme rays (zero lineality combination); lies in the
        relative interior, and co-faces taken there do not depend on the
        particular interior point chosen."""
        p = tuple(Fraction(0) for _ in range(self.dim))
        for r in self.rays:
            p = tuple(a + b for a, b in zip(p, r))
        return p

    def sample_points(self, rng, count: int = 10) -> list[tuple]:
        """Random rational members (nonnegative ray / free line combos)."""
        out = []
        for _ in range(count):
            p = [Fraction(0)] * self.dim
            for r in self.rays:
                c = Fraction(rng.randint(0, 6), rng.randint(1, 4))
                p = [a + c * b for a, b in zip(p, r)]
            for l in self.lines:
                c = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                p = [a + c * b for a, b in zip(p, l)]
            out.append(tuple(p))
        return out

    def __le__(self, other: "PolyCone") -> bool:
        """Set inclusion."""
        return all(other.contains(g) for g in self.generators) or not self.generators

    # -- faces and co-faces -------------------------------------------------

    def faces(self) -> list["PolyCone"]:
        """All faces (intersections with supporting hyperplanes of facets),
        including the cone itself and its minimal face."""
        seen = {self._vkey(): self}
        frontier = [self]
        while frontier:
            nxt = []
            for f in frontier:
                for n in f.ineq_normals:
                    sub = PolyCone.from_normals(
                        self.dim,
                        ineqs=f.ineq_normals,
                        eqs=list(f.eq_normals) + [n],
                    )
                    key = sub._vkey()
                    if key not in seen:
                        seen[key] = sub
                        nxt.append(sub)
            frontier = nxt
        return list(seen.values())

    def _vkey(self):
        return (self.lines, frozenset(self.rays))

    def __eq__(self, other):
        return (
            isinstance(other, PolyCone)
            and self.dim == other.dim
            and self._vkey() == other._vkey()
        )

    def __hash__(self):
        return hash((self.dim, self._vkey()))


def _canon_lines(lines) -> tuple:
    return tuple(canonical_subspace_basis(lines))


def _canon_rays(rays, lines) -> tuple:
    basis = list(canonical_subspace_basis(lines))
    out = []
    for r in rays:
        p = project_off(r, basis)
        if not is_zero(p):
            out.append(primitive(p))
    return tuple(sorted(_dedupe(out)))


# ---------------------------------------------------------------------------
# cone operations
# ---------------------------------------------------------------------------

def dd_convert(
    dim: int,
    generators: Optional[Sequence[Sequence]] = None,
    normals: Optional[Sequence[Sequence]] = None,
) -> PolyCone:
    """Build the dual description from a one-sided description."""
    if (generators is None) == (normals is None):
        raise ValueError("give exactly one of generators / normals")
    if generators is not None:
        return PolyCone.from_generators(dim, rays=generators)
    return PolyCone.from_normals(dim, ineqs=normals)


def lineality(cone: PolyCone) -> tuple:
    """Basis of C intersect -C (the largest subspace inside the cone)."""
    return cone.lines


def normal_span(cone: PolyCone) -> tuple:
    """Basis of the span of all normals; its orthogonal complement is the
    lineality space."""
    return canonical_subspace_basis(list(cone.normals))


def cone_sum(a: PolyCone, b: PolyCone) -> PolyCone:
    return PolyCone.from_generators(
        a.dim, rays=list(a.rays) + list(b.rays), lines=list(a.lines) + list(b.lines)
    )


def cone_intersection(a: PolyCone, b: PolyCone) -> PolyCone:
    return PolyCone.from_normals(
        a.dim,
        ineqs=list(a.ineq_normals) + list(b.ineq_normals),
        eqs=list(a.eq_normals) + list(b.eq_normals),
    )


def coface(cone: PolyCone, u: Sequence) -> PolyCone:
    """The cone C + R.u for u in C, computed as the intersection of the
    half-spaces of C whose normals vanish on u."""
    u = frac_vec(u)
    if not cone.contains(u):
        raise ValueError("point is not in the cone")
    tight = [n for n in cone.ineq_normals if dot(n, u) == 0]
    return PolyCone.from_normals(cone.dim, ineqs=tight, eqs=cone.eq_normals)


@dataclass(frozen=True)
class FaceLattice:
    """Faces of a cone, each paired with the co-face taken at a relative
    interior point, plus the inclusion relation between faces."""

    entries: tuple  # of (face, relint_point, coface)
    incidence: frozenset  # pairs (i, j) with face_i a subset of face_j

    @property
    def faces(self) -> list[PolyCone]:
        return [e[0] for e in self.entries]

    @property
    def cofaces_list(self) -> list[PolyCone]:
        return [e[2] for e in self.entries]

    def __len__(self):
        return len(self.entries)


def cofaces(cone: PolyCone) -> FaceLattice:
    """One co-face per face; the counts agree."""
    fs = cone.faces()
    entries = []
    for f in fs:
        p = f.relative_interior_point()
        entries.append((f, p, coface(cone, p)))
    inc = frozenset(
        (i, j)
        for i, fi in enumerate(fs)
        for j, fj in enumerate(fs)
        if i != j and fi <= fj
    )
    return FaceLattice(entries=tuple(entries), incidence=inc)


# ---------------------------------------------------------------------------
# MuCone: lexicographic half-space intersections in matrix space
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MuCone:
    """Intersection of {Psi : Psi.v <= 0 lex} over the generators v of the
    stored co-polar cone; this representation is canonical and faithful."""

    n_rank: int  # N, number of matrix rows
    copolar_cone: PolyCone

    @property
    def r(self) -> int:
        return self.copolar_cone.dim

    @property
    def copolar_generators(self) -> tuple:
        return self.copolar_cone.generators


def polar_N(cone: PolyCone, n_rank: int) -> MuCone:
    """The rank-N polar of a polyhedral cone in Q^r."""
    return MuCone(n_rank=n_rank, copolar_cone=cone)


def copolar(mu: MuCone) -> PolyCone:
    return mu.copolar_cone


@dataclass(frozen=True)
class MuMembership:
    member: bool
    signs: tuple  # lex sign of Psi.v per co-polar generator, aligned
    face: Optional[MuCone]  # the face whose relative interior holds Psi


def mu_member(mu: MuCone, psi: WeightMatrix) -> MuMembership:
    """Membership with the per-generator lex sign ledger; the equality subset
    identifies the face containing Psi."""
    if psi.n_cols != mu.r:
        raise DimensionError("matrix columns != co-polar ambient dimension")
    gens = mu.copolar_generators
    signs = tuple(lex_sign(mat_vec(psi, v)) for v in gens)
    if any(s > 0 for s in signs):
        return MuMembership(member=False, signs=signs, face=None)
    tightsum = tuple(Fraction(0) for _ in range(mu.r))
    for v, s in zip(gens, signs):
        if s == 0:
            tightsum = tuple(a + b for a, b in zip(tightsum, v))
    return MuMembership(member=True, signs=signs, face=mu_face(mu, tightsum))


def mu_face(mu: MuCone, u: Sequence) -> MuCone:
    """The face of the mu-cone cut out by {Psi : Psi.u = 0}; dual to the
    co-face of the co-polar at u."""
    return MuCone(n_rank=mu.n_rank, copolar_cone=coface(mu.copolar_cone, u))


def mu_dim(mu: MuCone) -> int:
    """N times the codimension of the lineality space of the co-polar."""
    c = mu.copolar_cone
    return mu.n_rank * (c.dim - c.lineality_dim())


def euclidean_closure(mu: MuCone) -> PolyCone:
    """The topological closure of the mu-cone as an ordinary polyhedral cone
    in Q^(N*r): rows constrained to the span of the co-polar's normals, the
    most-significant row obeying the co-polar's inequalities.  Its dimension
    independently recomputes mu_dim."""
    c = mu.copolar_cone
    n, r = mu.n_rank, c.dim
    eqs = []
    for i in range(n):
        for b in c.lines:  # rows must be orthogonal to the lineality space
            v = [Fraction(0)] * (n * r)
            v[i * r : (i + 1) * r] = list(b)
            eqs.append(tuple(v))
    ineqs = []
    for g in c.rays:  # top row pairs <= 0 against the pointed generators
        v = [Fraction(0)] * (n * r)
        v[0:r] = list(g)
        ineqs.append(tuple(v))
    return PolyCone.from_normals(n * r, ineqs=ineqs, eqs=eqs)
