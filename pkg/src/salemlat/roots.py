"""(-2)-vector enumeration, reflections, and walks into Weyl chambers.

Enumeration of vectors of fixed negative norm runs on an exact rational
LDL^T splitting of the (negated, positive definite) Gram matrix, with the
usual level-by-level interval pruning; rational center shifts let the
same engine solve the affine slices needed by chamber walks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from . import intlinalg as la
from .errors import BudgetExceeded, NotARoot, NotNegativeDefinite, OnWall
from .intlinalg import Mat, Vec
from .lattice import Lattice, Sublattice, check_vector, full_sublattice, inner, norm, span_of


@dataclass(frozen=True)
class RootSet:
    """Vectors of one fixed norm, one representative per +-pair, sorted."""

    norm: int
    roots: tuple[Vec, ...]

    def __len__(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class WalkResult:
    """Outcome of a chamber walk: final vector, reflection word, step count."""

    final: Vec
    word: tuple[Vec, ...]
    steps: int


def _ldl(posdef) -> tuple[list[Fraction], list[list[Fraction]]]:
    """A = L D L^T with unit lower-triangular L; fails unless positive definite."""
    n = len(posdef)
    d: list[Fraction] = [Fraction(0)] * n
    lmat = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        dj = Fraction(posdef[j][j]) - sum(
            lmat[j][k] * lmat[j][k] * d[k] for k in range(j)
        )
        if dj <= 0:
            raise NotNegativeDefinite("form is not definite of the expected sign")
        d[j] = dj
        lmat[j][j] = Fraction(1)
        for i in range(j + 1, n):
            lmat[i][j] = (
                Fraction(posdef[i][j])
                - sum(lmat[i][k] * lmat[j][k] * d[k] for k in range(j))
            ) / dj
    return d, lmat


def _enumerate_exact(posdef, target: Fraction, shift=None) -> list[Vec]:
    """All integer x with (x + shift)^T . posdef . (x + shift) == target.

    Plain enumeration when shift is None.  Exact throughout; results in a
    deterministic (search) order, callers sort as needed.
    """
    n = len(posdef)
    target = Fraction(target)
    if n == 0:
        return [()] if target == 0 else []
    if target < 0:
        return []
    d, lmat = _ldl(posdef)
    if shift is None:
        shift = (Fraction(0),) * n
    results: list[Vec] = []
    x = [0] * n

    def rec(i: int, rem: Fraction) -> None:
        if i < 0:
            if rem == 0:
                results.append(tuple(x))
            return
        center = shift[i] + sum(
            lmat[k][i] * (x[k] + shift[k]) for k in range(i + 1, n)
        )
        # Scan integers v with d[i] * (v + center)^2 <= rem, outward from
        # the real center -center.
        start = floor(-center)
        v = start
        while d[i] * (v + center) ** 2 <= rem:
            x[i] = v
            rec(i - 1, rem - d[i] * (v + center) ** 2)
            v -= 1
        v = start + 1
        while d[i] * (v + center) ** 2 <= rem:
            x[i] = v
            rec(i - 1, rem - d[i] * (v + center) ** 2)
            v += 1

    rec(n - 1, target)
    return results


def _lll_reduce_gram(posdef) -> tuple[Mat, Mat]:
    """Exact LLL reduction of a positive definite Gram matrix.

    Returns (reduced_gram, transform) with transform unimodular and
    reduced_gram == transform . posdef . transform^T.  Standard
    preprocessing so the level pruning in enumeration stays effective on
    badly skewed bases.
    """
    n = len(posdef)
    g = [[Fraction(x) for x in row] for row in posdef]
    t = [list(row) for row in la.identity(n)]
    delta = Fraction(99, 100)

    def row_op(k: int, j: int, q: int) -> None:
        t[k] = [a - q * b for a, b in zip(t[k], t[j])]
        g[k] = [a - q * b for a, b in zip(g[k], g[j])]
        for row in g:
            row[k] -= q * row[j]

    def swap(k: int) -> None:
        t[k - 1], t[k] = t[k], t[k - 1]
        g[k - 1], g[k] = g[k], g[k - 1]
        for row in g:
            row[k - 1], row[k] = row[k], row[k - 1]

    k = 1
    while k < n:
        d, lmat = _ldl(tuple(tuple(row) for row in g))
        for j in range(k - 1, -1, -1):
            mu = lmat[k][j]
            q = floor(mu + Fraction(1, 2))
            if q:
                row_op(k, j, q)
                d, lmat = _ldl(tuple(tuple(row) for row in g))
        if d[k] < (delta - lmat[k][k - 1] ** 2) * d[k - 1]:
            swap(k)
            k = max(k - 1, 1)
        else:
            k += 1
    return (
        tuple(tuple(int(x) for x in row) for row in g),
        tuple(tuple(int(x) for x in row) for row in t),
    )


def _solutions_of_norm(gram: Mat, target: int) -> list[Vec]:
    """All x (both signs) with x . gram . x == target < 0, original coords."""
    posdef = tuple(tuple(-x for x in row) for row in gram)
    if not posdef:
        return []
    reduced, transform = _lll_reduce_gram(posdef)
    sols = _enumerate_exact(reduced, Fraction(-target))
    n = len(gram)
    out = []
    for y in sols:
        x = tuple(
            sum(yi * transform[i][j] for i, yi in enumerate(y)) for j in range(n)
        )
        if any(x):
            out.append(x)
    return out


def _gram_and_frame(source) -> tuple[Mat, Lattice, Mat]:
    """Gram matrix, ambient lattice, and row frame mapping coords to ambient."""
    if isinstance(source, Lattice):
        return source.gram, source, la.identity(source.dim)
    if isinstance(source, Sublattice):
        return source.gram(), source.ambient, source.basis
    raise TypeError("expected a Lattice or Sublattice")


def enumerate_norm_vectors(source, target_norm: int) -> RootSet:
    """All vectors of the given even negative norm, up to sign.

    The source form must be negative definite; vectors come back in
    ambient coordinates, sign-normalized and lexicographically sorted.
    """
    if target_norm >= 0 or target_norm % 2 != 0:
        raise ValueError("target norm must be even and negative")
    gram, ambient, frame = _gram_and_frame(source)
    if not gram:
        return RootSet(norm=target_norm, roots=())
    sols = _solutions_of_norm(gram, target_norm)
    seen = set()
    for s in sols:
        v = la.sign_normalize(
            tuple(sum(c * frame[i][j] for i, c in enumerate(s)) for j in range(len(frame[0])))
        )
        if any(v):
            seen.add(v)
    return RootSet(norm=target_norm, roots=tuple(sorted(seen)))


def root_sublattice(source) -> Sublattice:
    """Sublattice generated by all (-2)-vectors of a negative definite form."""
    gram, ambient, frame = _gram_and_frame(source)
    rs = enumerate_norm_vectors(source, -2)
    return span_of(ambient, rs.roots)


def reflect(lat: Lattice, delta: Vec, x: Vec) -> Vec:
    """Reflection in the wall of a (-2)-root: x -> x + (x, delta) delta."""
    delta = check_vector(lat, delta)
    x = check_vector(lat, x)
    if norm(lat, delta) != -2:
        raise NotARoot(f"delta has norm {norm(lat, delta)}, expected -2")
    c = inner(lat, x, delta)
    return tuple(xi + c * di for xi, di in zip(x, delta))


def _particular_pairing_solution(w: Vec, c: int) -> Vec | None:
    """Some integer delta with w . delta == c, or None if gcd(w) does not divide c."""
    n = len(w)
    g = 0
    coeff = [0] * n
    for i, wi in enumerate(w):
        if wi == 0:
            continue
        if g == 0:
            g = abs(wi)
            coeff[i] = 1 if wi > 0 else -1
            continue
        x, y, g2 = la.xgcd(g, wi)
        coeff = [ci * x for ci in coeff]
        coeff[i] = y
        g = g2
    if g == 0 or c % g != 0:
        return None
    scale = c // g
    return tuple(ci * scale for ci in coeff)


def _roots_with_pairing(lat: Lattice, h: Vec, c: int) -> list[Vec]:
    """All (-2)-roots delta with (h, delta) == c, for q(h) > 0.

    The slice is an affine coset of the negative definite hyperplane
    lattice h-perp, so it is finite and enumerable exactly.
    """
    gh = la.mat_vec(lat.gram, h)
    part = _particular_pairing_solution(gh, c)
    if part is None:
        return []
    ker = la.kernel((gh,))
    if not ker:
        return [part] if norm(lat, part) == -2 else []
    a = la.mat_mul(la.mat_mul(ker, lat.gram), la.transpose(ker))
    m = tuple(tuple(-x for x in row) for row in a)  # positive definite on h-perp
    b = la.mat_vec(la.mat_mul(ker, lat.gram), part)
    mu = la.solve(m, b)
    assert mu is not None
    target = Fraction(2 + norm(lat, part)) + sum(
        Fraction(bi) * mi for bi, mi in zip(b, mu)
    )
    shift = tuple(-f for f in mu)
    out = []
    for t in _enumerate_exact(m, target, shift):
        delta = tuple(
            p + sum(tj * ker[j][i] for j, tj in enumerate(t))
            for i, p in enumerate(part)
        )
        assert inner(lat, h, delta) == c and norm(lat, delta) == -2
        out.append(delta)
    return out


def weyl_walk(lat: Lattice, h: Vec, reference: Vec, budget: int) -> WalkResult:
    """Reflect h into the closure of the chamber containing the reference.

    Terminates when no root separates h from the reference: afterwards no
    (-2)-root delta has (reference, delta) > 0 and (final, delta) < 0.
    The word records the reflections applied, in order.  Raises
    BudgetExceeded when more than ``budget`` steps would be needed and
    OnWall when the reference pairs to zero with a root met on the way.
    """
    h = check_vector(lat, h)
    reference = check_vector(lat, reference)
    if norm(lat, h) <= 0:
        raise ValueError("h must have positive norm")
    qr = norm(lat, reference)
    if qr <= 0:
        raise ValueError("reference must have positive norm")
    if inner(lat, h, reference) <= 0:
        raise ValueError("h and reference must lie in the same cone component")
    word: list[Vec] = []
    current = h
    qh = norm(lat, h)
    while True:
        p = inner(lat, current, reference)
        delta_cap = 2 * (p * p - qh * qr)
        chosen = None
        c = -1
        while qr * c * c <= delta_cap:
            slice_roots = _roots_with_pairing(lat, current, c)
            violating = []
            for root in slice_roots:
                s = inner(lat, reference, root)
                if s == 0:
                    raise OnWall(
                        "reference pairs to zero with a root met during the walk"
                    )
                if s > 0:
                    violating.append(root)
            if violating:
                chosen = min(violating)
                break
            c -= 1
        if chosen is None:
            return WalkResult(final=current, word=tuple(word), steps=len(word))
        if len(word) >= budget:
            raise BudgetExceeded(
                f"walk did not reach the chamber closure within {budget} steps"
            )
        current = reflect(lat, chosen, current)
        word.append(chosen)
