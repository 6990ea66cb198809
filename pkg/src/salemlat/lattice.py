"""Even nondegenerate integer lattices and their exact invariants.

A lattice is a free Z-module with a symmetric integer Gram matrix whose
diagonal is even and whose determinant is nonzero.  Vectors are plain
tuples of coordinates in the defining basis.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import intlinalg as la
from .errors import (
    Degenerate,
    DimensionMismatch,
    NotPrime,
    NotSymmetric,
    OddDiagonal,
)
from .intlinalg import Mat, Vec


@dataclass(frozen=True)
class Lattice:
    """An even nondegenerate lattice given by its Gram matrix."""

    gram: Mat
    determinant: int = field(compare=False)
    _signature: tuple[int, int] = field(compare=False)

    @property
    def dim(self) -> int:
        return len(self.gram)

    def __repr__(self) -> str:
        return f"Lattice(dim={self.dim}, det={self.determinant})"


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of an ambient lattice, basis rows in canonical HNF."""

    ambient: Lattice
    basis: Mat
    primitive: bool

    @property
    def rank(self) -> int:
        return len(self.basis)

    def gram(self) -> Mat:
        """Gram matrix of the basis rows under the ambient form."""
        bg = la.mat_mul(self.basis, self.ambient.gram)
        return la.mat_mul(bg, la.transpose(self.basis))

    def contains(self, v: Vec) -> bool:
        """Integer membership of an ambient-coordinate vector."""
        if not self.basis:
            return all(x == 0 for x in v)
        sol = la.solve_int(la.transpose(self.basis), v)
        return sol is not None


@dataclass(frozen=True)
class DiscriminantGroup:
    """Invariant factors (each dividing the next) of dual quotient L*/L."""

    invariant_factors: tuple[int, ...]

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n


def build_lattice(gram) -> Lattice:
    """Validate a Gram matrix and construct the lattice it defines.

    Raises NotSymmetric, OddDiagonal, or Degenerate when the matrix is not
    a valid even nondegenerate Gram matrix.
    """
    rows = la.freeze(gram)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSymmetric("gram matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise NotSymmetric(f"gram[{i}][{j}] != gram[{j}][{i}]")
    for i in range(n):
        if rows[i][i] % 2 != 0:
            raise OddDiagonal(f"diagonal entry gram[{i}][{i}] = {rows[i][i]} is odd")
    d = la.det(rows)
    if d == 0:
        raise Degenerate("gram matrix has determinant 0")
    pos, neg, zero = la.inertia(rows)
    assert zero == 0
    return Lattice(gram=rows, determinant=d, _signature=(pos, neg))


def check_vector(lat: Lattice, v) -> Vec:
    v = tuple(int(x) for x in v)
    if len(v) != lat.dim:
        raise DimensionMismatch(
            f"vector length {len(v)} does not match lattice dimension {lat.dim}"
        )
    return v


def inner(lat: Lattice, x, y) -> int:
    """Bilinear pairing x^T . gram . y."""
    x = check_vector(lat, x)
    y = check_vector(lat, y)
    return sum(xi * sum(g * yj for g, yj in zip(row, y)) for xi, row in zip(x, lat.gram))


def norm(lat: Lattice, x) -> int:
    """Self-pairing q(x) = (x, x)."""
    return inner(lat, x, x)


def signature(lat: Lattice) -> tuple[int, int]:
    """Counts of positive and negative eigenvalues, computed exactly."""
    return lat._signature


def is_hyperbolic(lat: Lattice) -> bool:
    return signature(lat) == (1, lat.dim - 1)


def discriminant_group(lat: Lattice) -> DiscriminantGroup:
    """Invariant factors of the Smith normal form of the Gram matrix."""
    diag = la.snf_diagonal(lat.gram)
    return DiscriminantGroup(tuple(d for d in diag if d != 1))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    # Deterministic Miller-Rabin for all 64-bit inputs and beyond what we need.
    d = p - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def p_elementary_analysis(lat: Lattice, p: int) -> tuple[bool, int | None]:
    """Whether the discriminant group is (Z/p)^k, and k/2 when k is even.

    The trivial group counts as p-elementary with k = 0.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    factors = discriminant_group(lat).invariant_factors
    if any(f != p for f in factors):
        return False, None
    k = len(factors)
    if k % 2 == 0:
        return True, k // 2
    return True, None


def make_sublattice(lat: Lattice, rows) -> Sublattice:
    """Sublattice spanned by the given rows (must be Q-independent)."""
    rows = la.freeze(rows)
    for row in rows:
        check_vector(lat, row)
    if rows and la.rank(rows) != len(rows):
        raise ValueError("sublattice basis rows are linearly dependent")
    h = la.hnf(rows)
    sat = la.saturate(h) if h else ()
    return Sublattice(ambient=lat, basis=h, primitive=h == sat)


def span_of(lat: Lattice, vectors) -> Sublattice:
    """Sublattice generated by an arbitrary (possibly dependent) family."""
    h = la.hnf(la.freeze(vectors))
    sat = la.saturate(h) if h else ()
    return Sublattice(ambient=lat, basis=h, primitive=h == sat)


def full_sublattice(lat: Lattice) -> Sublattice:
    return Sublattice(ambient=lat, basis=la.identity(lat.dim), primitive=True)


def orthogonal_complement(lat: Lattice, s: Sublattice) -> Sublattice:
    """The primitive sublattice of all vectors pairing to zero with s."""
    if s.ambient is not lat and s.ambient != lat:
        raise ValueError("sublattice does not live in the given lattice")
    if not s.basis:
        return full_sublattice(lat)
    pairing = la.mat_mul(s.basis, lat.gram)
    basis = la.kernel(pairing)
    return Sublattice(ambient=lat, basis=basis, primitive=True)


def primitive_closure(lat: Lattice, s: Sublattice) -> Sublattice:
    """Saturation of s in its ambient lattice; idempotent."""
    if s.primitive:
        return s
    return Sublattice(ambient=s.ambient, basis=la.saturate(s.basis), primitive=True)


def embedding_index(lat: Lattice, s: Sublattice) -> int | None:
    """Index [L : S] when s has full rank, else None (infinite index).

    Checked against |det gram_S| == index^2 * |det gram_L|.
    """
    if s.rank < lat.dim:
        return None
    idx = abs(la.det(s.basis))
    assert abs(la.det(s.gram())) == idx * idx * abs(lat.determinant)
    return idx


def sublattice_intersection(a: Sublattice, b: Sublattice) -> Sublattice:
    basis = la.intersect_rowspans(a.basis, b.basis)
    sat = la.saturate(basis) if basis else ()
    return Sublattice(ambient=a.ambient, basis=basis, primitive=basis == sat)
