"""Chamber-preserving isometry groups and the mod-p subspace filter.

Generators are integer matrices that preserve the pairing, keep the ample
component, and map the ample chamber into itself.  ``project_to_nef_group``
upgrades an arbitrary isometry of the right component into such an element by
composing with the reflection word that walks its image of the ample class
back into the chamber.

The supersingular side is deliberately small: a datum ``(p, K)`` is a linear
subspace of F_p^rank spanned by reduced basis vectors, and the filter keeps
exactly the generators whose reduction preserves K.  Solvability of the
defining systems is decided by Gaussian elimination over F_p.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .errors import (
    BadPrime,
    DegenerateBasis,
    DimensionMismatch,
    GeneratorRejected,
    NotAnIsometry,
)
from .lattice import Isometry, Lattice, Mat, Vec, as_vector
from .weyl import NefDescription, nef_test, nef_walls, walk_to_nef, word_isometry


@dataclass(frozen=True)
class GeneratorReport:
    """Outcome of the generator checks; ``walls_preserved`` is None when the
    wall list is not certified complete and the check would be vacuous."""

    preserves_form: bool
    preserves_component: bool
    chamber_fixed: bool
    walls_preserved: bool | None

    @property
    def ok(self) -> bool:
        return (
            self.preserves_form
            and self.preserves_component
            and self.chamber_fixed
            and self.walls_preserved is not False
        )


def verify_generator(
    lat: Lattice, ample, matrix, nef: NefDescription | None = None
) -> GeneratorReport:
    """Check a candidate generator; reports, never raises."""
    ample = as_vector(ample, lat.rank, "ample class")
    try:
        g = Isometry(lat, tuple(tuple(row) for row in matrix))
    except (NotAnIsometry, DimensionMismatch):
        return GeneratorReport(False, False, False, None)
    image = g.apply(ample)
    if lat.pairing(image, ample) <= 0:
        return GeneratorReport(True, False, False, None)
    chamber_fixed = nef_test(lat, ample, image)
    walls_preserved = None
    if nef is not None and nef.complete:
        images = {tuple(g.apply(w)) for w in nef.walls}
        walls_preserved = images == set(nef.walls)
    return GeneratorReport(True, True, chamber_fixed, walls_preserved)


@dataclass(frozen=True)
class GroupGenerators:
    """Verified generators, closed under inversion, in a deterministic order."""

    lattice: Lattice
    ample: Vec
    gens: tuple[Isometry, ...]
    provenance: tuple[str, ...]

    def matrices(self) -> tuple[Mat, ...]:
        return tuple(g.matrix for g in self.gens)


def build_group(
    lat: Lattice, ample, matrices, nef: NefDescription | None = None
) -> GroupGenerators:
    """Verify the supplied matrices and close them under inversion.

    The wall-preservation check runs whenever a certified wall list is
    available; pass ``nef`` to reuse one already computed.  Inverses of
    verified generators are themselves chamber-preserving (the chamber is
    carried bijectively onto itself), so they are added without re-checking.
    """
    ample = as_vector(ample, lat.rank, "ample class")
    matrices = [tuple(tuple(int(x) for x in row) for row in m) for m in matrices]
    if matrices and nef is None:
        nef = nef_walls(lat, ample)
    tagged: dict[Mat, str] = {}
    for i, m in enumerate(matrices):
        report = verify_generator(lat, ample, m, nef)
        if not report.ok:
            raise GeneratorRejected(i, report)
        g = Isometry(lat, m)
        if g.is_identity():
            continue
        tagged.setdefault(g.matrix, f"input[{i}]")
        inv = g.inverse()
        if not inv.is_identity():
            tagged.setdefault(inv.matrix, f"inverse(input[{i}])")
    order = sorted(tagged)
    return GroupGenerators(
        lattice=lat,
        ample=ample,
        gens=tuple(Isometry(lat, m) for m in order),
        provenance=tuple(tagged[m] for m in order),
    )


def orbit_descend(
    lat: Lattice, ample, group: GroupGenerators, x
) -> tuple[Vec, tuple[int, ...]]:
    """Greedy degree descent along generators.

    Applies, at each step, the generator with the best strict degree drop
    (ties: lexicographically smallest matrix) until no generator improves.
    Returns the endpoint and the word of generator indices applied in order.
    """
    x = as_vector(x, lat.rank)
    word = []
    degree = lat.pairing(ample, x)
    while True:
        best = None
        for idx, g in enumerate(group.gens):
            y = g.apply(x)
            d = lat.pairing(ample, y)
            if d >= degree:
                continue
            key = (d, g.matrix)
            if best is None or key < best[0]:
                best = (key, idx, y)
        if best is None:
            return x, tuple(word)
        (degree, _), idx, x = best[0], best[1], best[2]
        word.append(idx)


def project_to_nef_group(lat: Lattice, ample, matrix):
    """Compose an isometry with a reflection word to fix the ample chamber.

    Returns ``(gamma, word)`` where gamma = (reflections of word) o g sends
    the ample class into the open chamber; gamma then preserves the chamber.
    """
    ample = as_vector(ample, lat.rank, "ample class")
    g = Isometry(lat, tuple(tuple(int(x) for x in row) for row in matrix))
    image = g.apply(ample)
    endpoint, word = walk_to_nef(lat, ample, image)
    gamma = word_isometry(lat, word).compose(g)
    assert gamma.apply(ample) == endpoint, "projection lost the walk endpoint"
    return gamma, word


# ---------------------------------------------------------------------------
# mod-p subspace filter


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _solve_mod_p(columns, target, p):
    """Whether the F_p system (columns) . lam = target is solvable."""
    n = len(target)
    k = len(columns)
    rows = [[columns[j][i] % p for j in range(k)] + [target[i] % p] for i in range(n)]
    r = 0
    for c in range(k):
        pivot = next((i for i in range(r, n) if rows[i][c] % p != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] % p != 0:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return all(row[k] % p == 0 for row in rows[r:])


@dataclass(frozen=True)
class SupersingularDatum:
    """A linear subspace K of F_p^rank, given by an independent basis mod p."""

    prime: int
    basis: tuple[Vec, ...]

    def __post_init__(self):
        if not _is_prime(self.prime) or self.prime == 2:
            raise BadPrime(f"{self.prime} is not an odd prime")
        basis = tuple(tuple(int(c) % self.prime for c in b) for b in self.basis)
        object.__setattr__(self, "basis", basis)
        if not basis:
            raise DegenerateBasis("the subspace needs at least one basis vector")
        n = len(basis[0])
        if any(len(b) != n for b in basis):
            raise DimensionMismatch("basis vectors of mixed lengths")
        # independence over F_p: eliminate and count pivots
        rows = [list(b) for b in basis]
        p, r = self.prime, 0
        for c in range(n):
            pivot = next((i for i in range(r, len(rows)) if rows[i][c] % p != 0), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = pow(rows[r][c], -1, p)
            rows[r] = [(x * inv) % p for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c] % p != 0:
                    f = rows[i][c]
                    rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
            r += 1
        if r != len(rows):
            raise DegenerateBasis("basis vectors are dependent mod p")


def preserves_K(lat: Lattice, datum: SupersingularDatum, matrix) -> bool:
    """Whether the matrix reduction maps K into K over F_p."""
    if len(datum.basis[0]) != lat.rank:
        raise DimensionMismatch("subspace basis length differs from the rank")
    m = tuple(tuple(int(x) for x in row) for row in matrix)
    if len(m) != lat.rank or any(len(row) != lat.rank for row in m):
        raise DimensionMismatch(f"matrix must be {lat.rank}x{lat.rank}")
    for b in datum.basis:
        image = [c % datum.prime for c in linalg.mat_vec(m, b)]
        if not _solve_mod_p(datum.basis, image, datum.prime):
            return False
    return True


def filter_preserving_K(
    lat: Lattice, group: GroupGenerators, datum: SupersingularDatum
) -> tuple[Isometry, ...]:
    """The generators whose mod-p reduction preserves K.

    This filters the generating set; it does not compute the full stabilizer
    of K inside the group.
    """
    return tuple(g for g in group.gens if preserves_K(lat, datum, g.matrix))


# ---------------------------------------------------------------------------
# bounded brute-force generator search


def search_isometries(lat: Lattice, max_entry: int) -> tuple[Mat, ...]:
    """All pairing-preserving integer matrices with entries in [-M, M].

    Column-by-column backtracking: column j must have the Gram diagonal norm
    and the prescribed pairings with the earlier columns.  Practical for
    rank 2 and small bounds; that is all the built-in search is for.
    """
    n = lat.rank
    span = range(-max_entry, max_entry + 1)
    pool = [tuple(v) for v in itertools.product(span, repeat=n)]
    by_norm: dict[int, list[Vec]] = {}
    for v in pool:
        by_norm.setdefault(lat.norm(v), []).append(v)
    out: list[Mat] = []

    def backtrack(cols):
        j = len(cols)
        if j == n:
            out.append(tuple(tuple(col[i] for col in cols) for i in range(n)))
            return
        for v in by_norm.get(lat.gram[j][j], ()):
            if all(lat.pairing(cols[i], v) == lat.gram[i][j] for i in range(j)):
                backtrack(cols + [v])

    backtrack([])
    return tuple(out)


def search_nef_generators(
    lat: Lattice, ample, max_entry: int, limit: int = 16
) -> tuple[Mat, ...]:
    """Chamber-preserving group elements found by bounded matrix search.

    Every isometry in the box is flipped into the ample component if needed,
    projected into the chamber-preserving group, and deduplicated; reflections
    project to the identity and drop out, so what remains generates fresh
    chamber symmetries.  Returns at most ``limit`` matrices, sorted.
    """
    ample = as_vector(ample, lat.rank, "ample class")
    seen: set[Mat] = set()
    for m in search_isometries(lat, max_entry):
        g = Isometry(lat, m)
        if lat.pairing(g.apply(ample), ample) < 0:
            g = Isometry(lat, tuple(tuple(-x for x in row) for row in m))
        gamma, _ = project_to_nef_group(lat, ample, g.matrix)
        if gamma.is_identity():
            continue
        seen.add(gamma.matrix)
        if len(seen) >= limit:
            break
    return tuple(sorted(seen))
