"""Hyperbolic lattices, their isometries, and problem validation.

Conventions used across the whole package:

* class vectors are integer coordinate tuples of length ``rank``;
* the pairing is ``x . y = x^T G y`` for the Gram matrix ``G``;
* matrices act on column vectors, so ``(g @ h)(x) = g(h(x))`` -- composition
  applies the right factor first;
* ``degree`` always means pairing against the distinguished ample class.

A lattice here is always even (even diagonal) and hyperbolic: exactly one
positive square in its signature, no null directions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .errors import (
    AmpleOnWall,
    Degenerate,
    DimensionMismatch,
    NonPositiveAmple,
    NotAnIsometry,
    NotARoot,
    OddLattice,
    WrongSignature,
    ZeroVector,
)

Vec = tuple[int, ...]
Mat = tuple[tuple[int, ...], ...]


def _as_int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise DimensionMismatch(f"{what} must be an integer, got {x!r}")
    return x


def as_vector(v, rank: int, what: str = "vector") -> Vec:
    """Coerce to an integer tuple of the ambient rank."""
    vec = tuple(_as_int(x, what) for x in v)
    if len(vec) != rank:
        raise DimensionMismatch(f"{what} has length {len(vec)}, expected {rank}")
    return vec


@dataclass(frozen=True)
class Lattice:
    """An even nondegenerate lattice of signature (1, rank-1)."""

    gram: Mat

    def __post_init__(self):
        rows = tuple(tuple(_as_int(x, "gram entry") for x in row) for row in self.gram)
        object.__setattr__(self, "gram", rows)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise DimensionMismatch("gram matrix must be square and non-empty")
        for i in range(n):
            for j in range(i, n):
                if rows[i][j] != rows[j][i]:
                    raise DimensionMismatch(
                        f"gram matrix is not symmetric at ({i}, {j})"
                    )
            if rows[i][i] % 2 != 0:
                raise OddLattice(f"diagonal entry gram[{i}][{i}] = {rows[i][i]} is odd")
        pos, neg, zero = linalg.signature(rows)
        if zero:
            raise Degenerate("gram matrix is singular")
        if (pos, neg) != (1, n - 1):
            raise WrongSignature(
                f"signature is ({pos}, {neg}), expected (1, {n - 1})"
            )

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pairing(self, x, y) -> int:
        x = as_vector(x, self.rank)
        y = as_vector(y, self.rank)
        return sum(
            x[i] * self.gram[i][j] * y[j]
            for i in range(self.rank)
            for j in range(self.rank)
        )

    def norm(self, x) -> int:
        return self.pairing(x, x)

    def gram_vec(self, x) -> Vec:
        """G x -- the euclidean normal of the pairing hyperplane x-perp."""
        x = as_vector(x, self.rank)
        return tuple(sum(row[j] * x[j] for j in range(self.rank)) for row in self.gram)


def primitive_ray(x) -> Vec:
    """Divide out the content of x.  Never flips sign; rejects zero."""
    vec = tuple(int(c) for c in x)
    g = linalg.vec_gcd(vec)
    if g == 0:
        raise ZeroVector("the zero vector spans no ray")
    return tuple(c // g for c in vec)


def reflect_in_root(lat: Lattice, delta, x) -> Vec:
    """s_delta(x) = x + (x . delta) delta, for delta of self-pairing -2."""
    delta = as_vector(delta, lat.rank, "root")
    if lat.norm(delta) != -2:
        raise NotARoot(f"{delta} has self-pairing {lat.norm(delta)}, expected -2")
    x = as_vector(x, lat.rank)
    c = lat.pairing(x, delta)
    return tuple(x[i] + c * delta[i] for i in range(lat.rank))


def reflection_matrix(lat: Lattice, delta) -> Mat:
    """Matrix of s_delta acting on column vectors."""
    delta = as_vector(delta, lat.rank, "root")
    if lat.norm(delta) != -2:
        raise NotARoot(f"{delta} has self-pairing {lat.norm(delta)}, expected -2")
    gd = lat.gram_vec(delta)
    n = lat.rank
    return tuple(
        tuple((1 if i == j else 0) + delta[i] * gd[j] for j in range(n))
        for i in range(n)
    )


@dataclass(frozen=True)
class Isometry:
    """An integer matrix preserving the pairing (hence of determinant +-1)."""

    lattice: Lattice
    matrix: Mat

    def __post_init__(self):
        n = self.lattice.rank
        rows = tuple(
            tuple(_as_int(x, "isometry entry") for x in row) for row in self.matrix
        )
        object.__setattr__(self, "matrix", rows)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise DimensionMismatch(f"isometry must be {n}x{n}")
        mt = linalg.transpose(rows)
        if linalg.mat_mul(linalg.mat_mul(mt, self.lattice.gram), rows) != self.lattice.gram:
            raise NotAnIsometry(f"{rows} does not preserve the pairing")

    def apply(self, x) -> Vec:
        x = as_vector(x, self.lattice.rank)
        return linalg.mat_vec(self.matrix, x)

    def compose(self, other: "Isometry") -> "Isometry":
        """self o other: apply ``other`` first."""
        if other.lattice != self.lattice:
            raise DimensionMismatch("isometries live on different lattices")
        return Isometry(self.lattice, linalg.mat_mul(self.matrix, other.matrix))

    __matmul__ = compose

    def inverse(self) -> "Isometry":
        return Isometry(self.lattice, linalg.invert_unimodular(self.matrix))

    def is_identity(self) -> bool:
        return self.matrix == linalg.identity(self.lattice.rank)


def validate_problem(gram, ample) -> tuple[Lattice, Vec]:
    """Build the validated (lattice, ample class) pair.

    Checks, in order: integral symmetric Gram matrix; even diagonal; exact
    signature (1, rank-1); integral ample class of positive self-pairing; the
    ample class is orthogonal to no root.  The last check is a finite one:
    roots orthogonal to an ample class live in a negative definite slice.
    """
    lat = Lattice(tuple(tuple(row) for row in gram))
    h = as_vector(ample, lat.rank, "ample class")
    if lat.norm(h) <= 0:
        raise NonPositiveAmple(f"ample class has self-pairing {lat.norm(h)} <= 0")
    from . import enumeration  # deferred: enumeration needs Lattice

    on_wall = enumeration.vectors_norm_degree(lat, h, -2, 0)
    if on_wall:
        raise AmpleOnWall(on_wall[0])
    return lat, h
