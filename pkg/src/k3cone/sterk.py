"""Polyhedral fundamental domains cut out by an ample orbit.

The domain is the part of the ample chamber on the near side of every orbit
point of the ample class: x satisfies x.(h - H) >= 0 for each orbit point h.
Only finitely many orbit points matter; we take all of them up to a degree
cap, check that the resulting cone is pointed, full-dimensional, spanned by
rays that pass the chamber membership test, and that no ray can still be
moved down by a generator (descent stability).  If any check fails the cap
doubles, up to the shared doubling ceiling.

Reduction into the domain is walk-then-descend: reflections bring a class
into the chamber, greedy generator descent moves it into the domain.
``verify_fundamental`` spot-checks the two fundamental-domain properties
(coverage on random samples, disjoint interiors of translates) and returns
a certificate of what was actually established.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cones import (
    RationalCone,
    cone_from_inequalities,
    contains,
    interiors_disjoint,
    transform_cone,
)
from .enumeration import check_positive_closure
from .errors import BoundExhausted, CoverageFailure, GeometryError
from .groups import GroupGenerators, orbit_descend
from .lattice import Isometry, Lattice, Vec, as_vector, primitive_ray
from .weyl import DOUBLING_CEILING, NefDescription, nef_test, nef_walls, walk_to_nef


@dataclass(frozen=True)
class OrbitCut:
    """One inequality of the domain, with the orbit point that produced it."""

    normal: Vec
    orbit_point: Vec
    word: tuple[int, ...]


@dataclass(frozen=True)
class SterkDomain:
    cone: RationalCone
    cuts: tuple[OrbitCut, ...]
    orbit_bound: int
    orbit_size: int
    saturated: bool

    @property
    def rays(self) -> tuple[Vec, ...]:
        return self.cone.rays


def orbit_of_ample(
    lat: Lattice, ample: Vec, group: GroupGenerators, cap: int
) -> dict[Vec, tuple[int, ...]]:
    """Breadth-first orbit of the ample class, kept while degree <= cap.

    Returns each orbit point with a shortest generator word reaching it.
    """
    start = tuple(ample)
    seen = {start: ()}
    frontier = [start]
    while frontier:
        new = []
        for x in frontier:
            for idx, g in enumerate(group.gens):
                y = g.apply(x)
                if y in seen or lat.pairing(ample, y) > cap:
                    continue
                seen[y] = seen[x] + (idx,)
                new.append(y)
        frontier = new
    return seen


def _chamber_normals(nef: NefDescription) -> tuple[Vec, ...]:
    if nef.cone is not None:
        return nef.cone.normals
    return nef.walls


def sterk_domain(
    lat: Lattice,
    ample,
    group: GroupGenerators,
    nef: NefDescription | None = None,
    bound: int | None = None,
    ceiling: int | None = None,
) -> SterkDomain:
    ample = as_vector(ample, lat.rank, "ample class")
    if nef is None:
        nef = nef_walls(lat, ample, ceiling=ceiling)
    if ceiling is None:
        ceiling = DOUBLING_CEILING
    chamber = _chamber_normals(nef)
    if bound is None:
        bound = 4 * lat.norm(ample)
    fallback = None
    for _ in range(ceiling + 1):
        orbit = orbit_of_ample(lat, ample, group, bound)
        cuts = []
        for h, word in sorted(orbit.items()):
            if h == ample:
                continue
            diff = tuple(a - b for a, b in zip(h, ample))
            # reverse Cauchy-Schwarz: distinct same-norm points of one
            # component pair strictly above the norm, so H stays interior
            assert lat.pairing(ample, diff) > 0, "orbit point at the ample degree"
            cuts.append(OrbitCut(primitive_ray(diff), h, word))
        try:
            cone = cone_from_inequalities(
                lat, chamber + tuple(c.normal for c in cuts)
            )
        except GeometryError:
            cone = None
        if cone is not None and cone.pointed and cone.full_dim:
            rays_ok = all(
                lat.norm(r) >= 0
                and lat.pairing(ample, r) > 0
                and nef_test(lat, ample, r)
                for r in cone.rays
            )
            if rays_ok:
                stable = all(
                    orbit_descend(lat, ample, group, r)[0] == r for r in cone.rays
                )
                active = tuple(c for c in cuts if c.normal in set(cone.normals))
                domain = SterkDomain(cone, active, bound, len(orbit), stable)
                if stable:
                    return domain
                fallback = domain
        bound *= 2
    raise BoundExhausted(
        "the orbit bound hit the doubling ceiling before the domain stabilized",
        partial=fallback,
    )


def reduce_to_domain(
    lat: Lattice,
    ample,
    group: GroupGenerators,
    domain: SterkDomain,
    x,
) -> tuple[Vec, tuple[Vec, ...], tuple[int, ...]]:
    """Move a positive-closure class into the domain.

    Returns ``(point, reflections, generator word)``; applying the recorded
    reflections to x, then the generators, in order, yields the point.
    Raises CoverageFailure when the endpoint misses the domain — the recorded
    generators do not (yet) exhibit it as fundamental.
    """
    x = as_vector(x, lat.rank)
    check_positive_closure(lat, ample, x)
    y, reflections = walk_to_nef(lat, ample, x)
    z, word = orbit_descend(lat, ample, group, y)
    if not contains(lat, domain.cone, z):
        raise CoverageFailure(x, z)
    return z, reflections, word


@dataclass(frozen=True)
class FundamentalCertificate:
    """What the sampled checks established.

    ``stabilizer_words`` lists group elements that carry the domain onto
    itself exactly; a fundamental domain tolerates these (they are its own
    finite symmetries), so they do not count as tiling failures.
    """

    rays_nef: bool
    coverage_ok: bool
    coverage_failures: tuple[Vec, ...]
    tiling_ok: bool
    tiling_overlaps: tuple[tuple[int, ...], ...]
    stabilizer_words: tuple[tuple[int, ...], ...]
    samples: int
    word_length: int
    seed: int

    @property
    def ok(self) -> bool:
        return self.rays_nef and self.coverage_ok and self.tiling_ok


def group_words(group: GroupGenerators, length: int):
    """Distinct non-identity group elements spelled by words up to ``length``."""
    lat = group.lattice
    identity = Isometry(lat, tuple(
        tuple(1 if i == j else 0 for j in range(lat.rank)) for i in range(lat.rank)
    ))
    elements: dict = {identity.matrix: ()}
    frontier = [identity]
    for _ in range(length):
        new = []
        for g in frontier:
            for idx, h in enumerate(group.gens):
                gh = h.compose(g)
                if gh.matrix not in elements:
                    elements[gh.matrix] = elements[g.matrix] + (idx,)
                    new.append(gh)
        frontier = new
    del elements[identity.matrix]
    return [(Isometry(lat, m), w) for m, w in sorted(elements.items())]


def verify_fundamental(
    lat: Lattice,
    ample,
    group: GroupGenerators,
    domain: SterkDomain,
    nef: NefDescription,
    samples: int = 200,
    word_length: int = 3,
    seed: int = 0,
) -> FundamentalCertificate:
    """Sampled coverage plus pairwise-disjointness of word translates.

    Coverage draws non-negative integer combinations of the chamber rays
    (of the ample class and the domain rays, when the chamber is round),
    scatters them by random generator words, and reduces each back into the
    domain.  Tiling checks every distinct group element spelled by a word of
    at most ``word_length`` generators: its translate of the domain must
    either coincide with the domain (a stabilizer symmetry, e.g. a generator
    fixing the ample class) or meet it in no interior point.
    """
    ample = as_vector(ample, lat.rank, "ample class")
    rays_nef = all(nef_test(lat, ample, r) for r in domain.cone.rays)

    if nef.polyhedral and nef.cone is not None and nef.cone.rays:
        basis = nef.cone.rays
    else:
        basis = (ample,) + domain.cone.rays
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        coeffs = [rng.randint(0, 6) for _ in basis]
        if not any(coeffs):
            coeffs[rng.randrange(len(basis))] = 1
        x = tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(lat.rank))
        for _ in range(rng.randint(0, word_length)):
            g = group.gens[rng.randrange(len(group.gens))] if group.gens else None
            if g is not None:
                x = g.apply(x)
        try:
            reduce_to_domain(lat, ample, group, domain, x)
        except CoverageFailure:
            failures.append(x)
    coverage_ok = not failures

    overlaps = []
    stabilizers = []
    for g, word in group_words(group, word_length):
        translate = transform_cone(lat, domain.cone, g)
        if (
            translate.rays == domain.cone.rays
            and translate.lineality == domain.cone.lineality
        ):
            stabilizers.append(word)
        elif not interiors_disjoint(lat, domain.cone, translate):
            overlaps.append(word)
    tiling_ok = not overlaps

    return FundamentalCertificate(
        rays_nef=rays_nef,
        coverage_ok=coverage_ok,
        coverage_failures=tuple(failures),
        tiling_ok=tiling_ok,
        tiling_overlaps=tuple(overlaps),
        stabilizer_words=tuple(stabilizers),
        samples=samples,
        word_length=word_length,
        seed=seed,
    )
