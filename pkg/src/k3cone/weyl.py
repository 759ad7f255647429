"""Weyl-chamber geometry: reflection walks and certified nef walls.

The ample chamber (``Nef``) is the set of positive-cone points on which every
root of positive degree pairs non-negatively.  Walking a point into the
chamber reflects it across separating walls in the order the straight segment
from the ample class crosses them; the degree drops by at least one per step,
so a walk of degree ``d`` finishes in at most ``d`` reflections.

Wall discovery runs a doubling search over root degree.  A candidate
description is only reported as complete when it certifies itself:

* every extreme ray of the cut-out cone lies in the closed positive cone and
  passes ``nef_test`` (whose separating search carries its own completeness
  bound), so the cone is contained in the chamber;
* the chamber is always contained in the cone, being cut by fewer walls;

hence equality, with no appeal to the search bound.  When rank is 2 and the
form has rational isotropic directions those two boundary rays are added as
inequalities, which is exactly the closed positive cone on that side.  A
rootless stretch that stays empty across one doubling is reported as a
non-polyhedral chamber (round cone) with the bound on record -- that outcome
is honest but not a certificate, and is flagged as such.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cones import RationalCone, cone_from_inequalities, remove_redundant
from .enumeration import (
    check_positive_closure,
    rational_isotropic_rays,
    roots_up_to_degree,
    separating_degree_bound,
    separating_roots,
)
from .errors import GeometryError
from .lattice import (
    Isometry,
    Lattice,
    Vec,
    as_vector,
    reflect_in_root,
    reflection_matrix,
)

DOUBLING_CEILING = 12  # default number of bound doublings before giving up


@dataclass(frozen=True)
class NefDescription:
    """Wall data for the ample chamber, with its certification state."""

    walls: tuple[Vec, ...]
    rays: tuple[Vec, ...]
    polyhedral: bool
    complete: bool
    stable: bool
    certification_bound: int
    witnesses: tuple[tuple[Vec, Vec], ...]
    cone: RationalCone | None


def walk_to_nef(lat: Lattice, ample, x) -> tuple[Vec, tuple[Vec, ...]]:
    """Reflect x into the ample chamber; returns (endpoint, reflection word).

    The word lists the roots reflected in, in application order.  Among the
    separating roots of the current point, the one whose wall the segment
    [H, x] crosses first is chosen; ties go to the lex-smallest root.
    """
    ample = as_vector(ample, lat.rank, "ample class")
    x = check_positive_closure(lat, ample, x)
    word = []
    budget = lat.pairing(ample, x)
    while True:
        seps = separating_roots(lat, ample, x)
        if not seps:
            return x, tuple(word)

        def crossing(delta):
            dh = lat.pairing(delta, ample)
            dx = lat.pairing(delta, x)
            return Fraction(dh, dh - dx)

        delta = min(seps, key=lambda d: (crossing(d), d))
        x = reflect_in_root(lat, delta, x)
        word.append(delta)
        assert len(word) <= budget, "walk exceeded its degree budget"


def nef_test(lat: Lattice, ample, x) -> bool:
    """Whether x lies in the closed ample chamber."""
    return not separating_roots(lat, ample, x)


def word_isometry(lat: Lattice, word) -> Isometry:
    """The composite isometry of a reflection word, applied in word order."""
    m = linalg.identity(lat.rank)
    for delta in word:
        m = linalg.mat_mul(reflection_matrix(lat, delta), m)
    return Isometry(lat, m)


def _facet_witness(lat, ample, cone, wall):
    """Interior point of the wall's facet: a positive sum of its tight rays."""
    tight = [r for r in cone.rays if lat.pairing(r, wall) == 0]
    others = [n for n in cone.normals if n != wall]
    for weights in (None, range(1, len(tight) + 1)):
        if weights is None:
            w = tuple(sum(r[i] for r in tight) for i in range(lat.rank))
        else:
            w = tuple(
                sum(k * r[i] for k, r in zip(weights, tight)) for i in range(lat.rank)
            )
        if lat.norm(w) <= 0 or lat.pairing(ample, w) <= 0:
            continue
        if any(lat.pairing(w, n) <= 0 for n in others):
            continue
        # no other root may vanish at the witness; the separating bound at w
        # limits the degree of any root through it, so the check is finite
        bound = separating_degree_bound(lat, ample, w)
        through = [
            d
            for d in roots_up_to_degree(lat, ample, bound)
            if lat.pairing(d, w) == 0 and d != wall
        ]
        if through:
            continue
        if nef_test(lat, ample, w):
            return w
    return None


def _certified_description(lat, ample, bound):
    """Try to certify the chamber at this root bound; None when not yet."""
    roots = roots_up_to_degree(lat, ample, bound)
    iso = rational_isotropic_rays(lat, ample) if lat.rank == 2 else ()
    normals = list(roots) + [e for e in iso if e not in roots]
    if not normals:
        return None
    cone = cone_from_inequalities(lat, normals)
    if not (cone.pointed and cone.full_dim):
        return None
    for r in cone.rays:
        if lat.norm(r) < 0 or lat.pairing(ample, r) <= 0:
            return None
        if not nef_test(lat, ample, r):
            return None
    walls = tuple(n for n in cone.normals if lat.norm(n) == -2)
    witnesses = []
    for wall in walls:
        w = _facet_witness(lat, ample, cone, wall)
        if w is None:
            return None
        witnesses.append((wall, w))
    return NefDescription(
        walls=walls,
        rays=cone.rays,
        polyhedral=True,
        complete=True,
        stable=True,
        certification_bound=bound,
        witnesses=tuple(witnesses),
        cone=cone,
    )


def _partial_description(lat, ample, bound, stable):
    """Best-effort wall subset when certification failed at the ceiling.

    Each reported wall still carries an exact witness (a nef interior point
    of its facet relative to the known walls); only completeness of the list
    is unknown, so the description is flagged incomplete and non-polyhedral.
    """
    roots = roots_up_to_degree(lat, ample, bound)
    walls, witnesses = [], []
    if roots:
        for delta in remove_redundant(lat, roots):
            if lat.norm(delta) != -2:
                continue
            hd = lat.pairing(ample, delta)
            w = tuple(2 * ample[i] + hd * delta[i] for i in range(lat.rank))
            if any(
                lat.pairing(w, m) <= 0 for m in roots if m != delta
            ) or not nef_test(lat, ample, w):
                continue
            walls.append(delta)
            witnesses.append((delta, w))
    return NefDescription(
        walls=tuple(sorted(walls)),
        rays=(),
        polyhedral=False,
        complete=False,
        stable=stable,
        certification_bound=bound,
        witnesses=tuple(witnesses),
        cone=None,
    )


def nef_walls(lat: Lattice, ample, ceiling: int | None = None) -> NefDescription:
    """Discover the chamber walls by doubling the root-degree bound.

    Starts at twice the ample self-pairing and doubles until the description
    certifies itself, or a rootless bound survives one doubling (reported as
    a round chamber), or the doubling ceiling is hit (partial result).
    """
    ample = as_vector(ample, lat.rank, "ample class")
    if lat.pairing(ample, ample) <= 0:
        raise GeometryError("wall discovery needs an ample class of positive norm")
    ceiling = DOUBLING_CEILING if ceiling is None else ceiling
    bound = 2 * lat.norm(ample)
    previous_roots = None
    for _ in range(ceiling + 1):
        certified = _certified_description(lat, ample, bound)
        if certified is not None:
            return certified
        roots = roots_up_to_degree(lat, ample, bound)
        if not roots and previous_roots == ():
            return NefDescription(
                walls=(),
                rays=(),
                polyhedral=False,
                complete=False,
                stable=True,
                certification_bound=bound,
                witnesses=(),
                cone=None,
            )
        previous_roots = roots
        bound *= 2
    final = bound // 2  # the last bound actually searched
    stable = roots_up_to_degree(lat, ample, final) == roots_up_to_degree(
        lat, ample, final // 2
    )
    return _partial_description(lat, ample, final, stable=stable)
