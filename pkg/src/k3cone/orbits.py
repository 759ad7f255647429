"""Orbit classification of curve classes under the chamber-preserving group.

Three kinds of classes are classified up to the group action: the chamber
walls themselves (norm -2, "nodal"), primitive isotropic chamber classes
("elliptic"), and classes of norm 2g-2 for a genus g >= 2.  Norm 0 and -2
queries delegate to the dedicated kinds.

Canonicalization is reduce-into-the-domain: walk into the chamber, then
greedy generator descent.  Distinct reduced representatives can still lie
in one orbit when they sit on the domain boundary, so a bounded
breadth-first ball over generator words (length <= 4) merges such
coincidences; the class representative is the (degree, lex)-least member.
Tables carry a stability flag — whether doubling the search bound changes
the representative set — and are never silently claimed complete.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .enumeration import classes_up_to_degree, isotropics_up_to_degree
from .errors import GeometryError, UnboundedQuery
from .groups import GroupGenerators
from .lattice import Lattice, Vec, as_vector
from .sterk import SterkDomain, reduce_to_domain
from .weyl import NefDescription, word_isometry

MERGE_DEPTH = 4


@dataclass(frozen=True)
class OrbitEntry:
    """One orbit: its canonical representative and how it was reached."""

    representative: Vec
    source: Vec
    reflections: tuple[Vec, ...]
    word: tuple[int, ...]
    members: tuple[Vec, ...]


@dataclass(frozen=True)
class OrbitTable:
    kind: str
    genus: int | None
    entries: tuple[OrbitEntry, ...]
    search_bound: int | None
    stable: bool

    @property
    def representatives(self) -> tuple[Vec, ...]:
        return tuple(e.representative for e in self.entries)


def _ball(lat: Lattice, group: GroupGenerators, x: Vec, depth: int) -> set[Vec]:
    """Generator-word ball around x, words of length <= depth."""
    seen = {x}
    frontier = [x]
    for _ in range(depth):
        new = []
        for v in frontier:
            for g in group.gens:
                y = g.apply(v)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return seen


def _merge_classes(lat: Lattice, ample, group, reduced: dict[Vec, list]) -> list:
    """Union reduced representatives identified by a bounded word ball."""
    reps = sorted(reduced)
    balls = {r: _ball(lat, group, r, MERGE_DEPTH) for r in reps}
    parent = {r: r for r in reps}

    def find(r):
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    for a, b in itertools.combinations(reps, 2):
        if b in balls[a] or a in balls[b]:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
    groups: dict[Vec, list[Vec]] = {}
    for r in reps:
        groups.setdefault(find(r), []).append(r)
    entries = []
    for members in groups.values():
        canonical = min(members, key=lambda v: (lat.pairing(ample, v), v))
        source, reflections, word = reduced[canonical][0]
        all_sources = tuple(
            s for m in sorted(members) for (s, _, _) in reduced[m]
        )
        entries.append(
            OrbitEntry(canonical, source, reflections, word, all_sources)
        )
    entries.sort(key=lambda e: (lat.pairing(ample, e.representative), e.representative))
    return entries


def nodal_orbits(
    lat: Lattice,
    ample,
    group: GroupGenerators,
    nef: NefDescription,
    domain: SterkDomain,
) -> OrbitTable:
    """Orbits of chamber walls.

    Each wall is carried to a canonical position by reducing its facet
    witness point into the domain and applying the same word to the wall
    vector; walls meeting in one orbit then coincide or are merged by the
    word ball.  An empty wall list gives the (valid) empty table.
    """
    ample = as_vector(ample, lat.rank, "ample class")
    stable = nef.complete or (not nef.walls and nef.stable)
    if not nef.walls:
        return OrbitTable("nodal", None, (), nef.certification_bound, stable)
    witnesses = dict(nef.witnesses)
    reduced: dict[Vec, list] = {}
    for wall in nef.walls:
        witness = witnesses.get(wall)
        if witness is None:
            raise GeometryError(f"no facet witness recorded for wall {wall}")
        _, reflections, word = reduce_to_domain(lat, ample, group, domain, witness)
        iso = word_isometry(lat, reflections)
        for idx in word:
            g = group.gens[idx]
            iso = g.compose(iso)
        canonical = iso.apply(wall)
        reduced.setdefault(canonical, []).append((wall, reflections, word))
    entries = _merge_classes(lat, ample, group, reduced)
    return OrbitTable(
        "nodal", None, tuple(entries), nef.certification_bound, stable
    )


def _reduced_table(
    lat: Lattice, ample, group, domain, norm: int, bound: int, primitive_only: bool
) -> tuple:
    if primitive_only:
        classes = isotropics_up_to_degree(lat, ample, bound)
    else:
        classes = classes_up_to_degree(lat, ample, norm, bound)
    reduced: dict[Vec, list] = {}
    for x in classes:
        z, reflections, word = reduce_to_domain(lat, ample, group, domain, x)
        reduced.setdefault(z, []).append((x, reflections, word))
    return tuple(_merge_classes(lat, ample, group, reduced))


def elliptic_orbits(
    lat: Lattice,
    ample,
    group: GroupGenerators,
    domain: SterkDomain,
    bound: int | None = None,
) -> OrbitTable:
    """Orbits of primitive isotropic chamber classes up to the degree bound."""
    ample = as_vector(ample, lat.rank, "ample class")
    if bound is None:
        bound = 4 * lat.norm(ample)
    if bound < 0:
        raise UnboundedQuery("the degree bound must be non-negative")
    entries = _reduced_table(lat, ample, group, domain, 0, bound, True)
    doubled = _reduced_table(lat, ample, group, domain, 0, 2 * bound, True)
    stable = {e.representative for e in entries} == {
        e.representative for e in doubled
    }
    return OrbitTable("elliptic", None, entries, bound, stable)


def genus_orbits(
    lat: Lattice,
    ample,
    group: GroupGenerators,
    nef: NefDescription,
    domain: SterkDomain,
    genus: int,
    bound: int | None = None,
) -> OrbitTable:
    """Orbits of chamber classes of norm 2g-2; a lattice-level upper
    classification (no irreducibility is decided here).

    Genus 0 and 1 delegate to the wall and isotropic classifications.
    """
    if genus < 0:
        raise GeometryError("genus must be non-negative")
    if genus == 0:
        return nodal_orbits(lat, ample, group, nef, domain)
    if genus == 1:
        return elliptic_orbits(lat, ample, group, domain, bound)
    ample = as_vector(ample, lat.rank, "ample class")
    if bound is None:
        bound = 4 * lat.norm(ample)
    if bound < 0:
        raise UnboundedQuery("the degree bound must be non-negative")
    norm = 2 * genus - 2
    entries = _reduced_table(lat, ample, group, domain, norm, bound, False)
    doubled = _reduced_table(lat, ample, group, domain, norm, 2 * bound, False)
    stable = {e.representative for e in entries} == {
        e.representative for e in doubled
    }
    return OrbitTable("genus", genus, entries, bound, stable)


ISOTROPY_ADVICE = (
    "an indefinite even lattice of rank 5 or more always represents zero; "
    "raise the coordinate bound to locate an isotropic vector"
)


def find_isotropic(lat: Lattice, box: int) -> Vec | None:
    """A primitive isotropic vector with coordinates in [-box, box], if any.

    Deterministic choice: smallest coordinate 1-norm, ties broken by
    lexicographically largest, so standard basis vectors win when the Gram
    matrix has a zero on the diagonal.  Returns None when the box has no
    isotropic vector; that is a bounded search outcome, not a proof.
    """
    if box < 1:
        raise UnboundedQuery("the coordinate bound must be at least 1")
    best = None
    best_key = None
    for v in itertools.product(range(-box, box + 1), repeat=lat.rank):
        if not any(v) or lat.norm(v) != 0:
            continue
        if gcd(*(abs(c) for c in v)) != 1:
            continue
        key = (sum(abs(c) for c in v), tuple(-c for c in v))
        if best_key is None or key < best_key:
            best, best_key = v, key
    if best is None:
        return None
    lead = next(c for c in best if c)
    if lead < 0:
        best = tuple(-c for c in best)
    return best
