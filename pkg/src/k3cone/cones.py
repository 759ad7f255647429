"""Rational polyhedral cones by incremental double description.

Cones are cut out by pairing inequalities ``x . n >= 0`` whose normals ``n``
are lattice vectors; the euclidean normal of such a wall is ``G n``.  All
arithmetic is exact (integers and fractions), rays come back primitive and
lex-sorted, and adjacency during the incremental step is decided by the rank
of the common tight set -- fine at the ranks this package targets.

The round positive cone is never materialized here; callers that need it use
the predicate ``x.x >= 0 and x.H > 0`` directly and only hand in polyhedral
sub-cones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import GeometryError, ZeroVector
from .lattice import Isometry, Lattice, Vec, as_vector, primitive_ray


@dataclass(frozen=True)
class RationalCone:
    """rays + lineality generate the cone; normals cut it out."""

    rank: int
    normals: tuple[Vec, ...]
    rays: tuple[Vec, ...]
    lineality: tuple[Vec, ...]
    full_dim: bool

    @property
    def pointed(self) -> bool:
        return not self.lineality

    @property
    def is_full_space(self) -> bool:
        return not self.normals

    def dimension(self) -> int:
        gens = list(self.rays) + list(self.lineality)
        return linalg.matrix_rank(gens) if gens else 0


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _scaled_primitive(v):
    """Clear denominators of a rational vector and divide out the content."""
    denom = 1
    for c in v:
        d = Fraction(c).denominator
        denom = denom * d // math.gcd(denom, d)
    ints = [int(c * denom) for c in v]
    if all(x == 0 for x in ints):
        return None
    return primitive_ray(ints)


def _dd(rank: int, eu_rows):
    """Rays and lineality of {x : a . x >= 0 for each euclidean row a}."""
    rays: list[tuple] = []
    lin: list[tuple] = [tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)]
    processed: list[tuple] = []

    def adjacent(r1, r2):
        tight = [c for c in processed if _dot(c, r1) == 0 and _dot(c, r2) == 0]
        want = rank - len(lin) - 2
        return linalg.matrix_rank(tight) == want if tight else want == 0

    for a in eu_rows:
        pivot = next((l for l in lin if _dot(a, l) != 0), None)
        if pivot is not None:
            if _dot(a, pivot) < 0:
                pivot = tuple(-x for x in pivot)
            ap = _dot(a, pivot)
            new_lin = []
            for l in lin:
                if l == pivot or l == tuple(-x for x in pivot):
                    continue
                proj = _scaled_primitive(
                    [Fraction(l[i]) - Fraction(_dot(a, l), ap) * pivot[i] for i in range(rank)]
                )
                if proj is not None:
                    new_lin.append(proj)
            new_rays = []
            for r in rays:
                proj = _scaled_primitive(
                    [Fraction(r[i]) - Fraction(_dot(a, r), ap) * pivot[i] for i in range(rank)]
                )
                if proj is not None and proj not in new_rays:
                    new_rays.append(proj)
            if pivot not in new_rays:
                new_rays.append(pivot)
            rays, lin = new_rays, new_lin
        else:
            plus = [r for r in rays if _dot(a, r) > 0]
            zero = [r for r in rays if _dot(a, r) == 0]
            minus = [r for r in rays if _dot(a, r) < 0]
            fresh = []
            for rp in plus:
                for rm in minus:
                    if not adjacent(rp, rm):
                        continue
                    comb = tuple(
                        _dot(a, rp) * rm[i] - _dot(a, rm) * rp[i] for i in range(rank)
                    )
                    comb = _scaled_primitive(comb)
                    if comb is not None and comb not in fresh:
                        fresh.append(comb)
            rays = plus + zero + [r for r in fresh if r not in plus and r not in zero]
        processed.append(tuple(a))
    return rays, lin


def _canonical_lineality(lin):
    if not lin:
        return ()
    rows, _ = linalg.rref(lin)
    out = []
    for row in rows:
        v = _scaled_primitive(row)
        lead = next(c for c in v if c != 0)
        if lead < 0:
            v = tuple(-x for x in v)
        out.append(v)
    return tuple(sorted(out))


def _facet_normals(eu_rows, normals, rays, rank):
    """Subset of normals tight on a full facet (pointed full-dim cones)."""
    keep = []
    for a, n in zip(eu_rows, normals):
        tight = [r for r in rays if _dot(a, r) == 0]
        if tight and linalg.matrix_rank(tight) == rank - 1:
            keep.append(n)
    return tuple(sorted(set(keep)))


def cone_from_inequalities(lat: Lattice, normals) -> RationalCone:
    """The cone {x : x . n >= 0 for every normal n}.

    Stored normals are the irredundant facet set when the result is pointed
    and full-dimensional, the deduplicated input otherwise.  No normals at
    all yields the full space, flagged via ``is_full_space``.
    """
    seen = []
    for n in normals:
        v = as_vector(n, lat.rank, "cone normal")
        if all(c == 0 for c in v):
            raise ZeroVector("zero vector cannot be a wall normal")
        v = primitive_ray(v)
        if v not in seen:
            seen.append(v)
    eu_rows = [lat.gram_vec(n) for n in seen]
    rays, lin = _dd(lat.rank, eu_rows)
    rays = tuple(sorted(rays))
    lineality = _canonical_lineality(lin)
    full_dim = linalg.matrix_rank(list(rays) + list(lineality)) == lat.rank
    if full_dim and not lineality:
        stored = _facet_normals(eu_rows, seen, rays, lat.rank)
    else:
        stored = tuple(sorted(seen))
    return RationalCone(lat.rank, stored, rays, lineality, full_dim)


def contains(lat: Lattice, cone: RationalCone, x) -> bool:
    """Membership in the closed cone (boundary included)."""
    x = as_vector(x, lat.rank)
    return all(lat.pairing(x, n) >= 0 for n in cone.normals)


def remove_redundant(lat: Lattice, normals) -> tuple[Vec, ...]:
    """A minimal normal subset cutting out the same cone."""
    cone = cone_from_inequalities(lat, normals)
    if cone.pointed and cone.full_dim:
        return cone.normals
    kept = [primitive_ray(as_vector(n, lat.rank, "cone normal")) for n in normals]
    kept = list(dict.fromkeys(kept))
    i = 0
    while i < len(kept):
        trial = kept[:i] + kept[i + 1 :]
        probe = cone_from_inequalities(lat, trial) if trial else None
        same = (
            probe is not None
            and probe.rays == cone.rays
            and probe.lineality == cone.lineality
        )
        if not trial:
            same = not cone.normals
        if same:
            kept.pop(i)
        else:
            i += 1
    return tuple(sorted(kept))


def intersection(lat: Lattice, a: RationalCone, b: RationalCone) -> RationalCone:
    return cone_from_inequalities(lat, tuple(a.normals) + tuple(b.normals))


def interiors_disjoint(lat: Lattice, a: RationalCone, b: RationalCone) -> bool:
    """Whether two full-dimensional cones share no interior point."""
    if not (a.full_dim and b.full_dim):
        raise GeometryError("interiors_disjoint requires full-dimensional cones")
    return not intersection(lat, a, b).full_dim


def transform_cone(lat: Lattice, cone: RationalCone, iso: Isometry) -> RationalCone:
    """The image cone g(C).  Pairing-normals transform by g itself."""
    rays = tuple(sorted(primitive_ray(iso.apply(r)) for r in cone.rays))
    normals = tuple(sorted(primitive_ray(iso.apply(n)) for n in cone.normals))
    lineality = _canonical_lineality([iso.apply(l) for l in cone.lineality])
    return RationalCone(cone.rank, normals, rays, lineality, cone.full_dim)
