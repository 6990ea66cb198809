"""Isotropic-class analysis on hyperbolic lattices.

A primitive isotropic class e has an infinite stabilizer (in the full
cone-preserving isometry group) exactly when the roots of e-perp, taken
together with e, fail to span all of e-perp.  This module computes that
rank defect through the negative definite quotient e-perp / Ze, discovers
classes by bounded scanning, and assembles the exceptional sublattice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import intlinalg as la
from .errors import (
    DimensionTooSmall,
    InsufficientFibrations,
    NotPrimitiveIsotropic,
    OddDimension,
)
from .intlinalg import Mat, Vec
from .lattice import (
    Lattice,
    Sublattice,
    check_vector,
    make_sublattice,
    norm,
    orthogonal_complement,
    primitive_closure,
    span_of,
    sublattice_intersection,
)
from .roots import _solutions_of_norm


@dataclass(frozen=True)
class FibrationClass:
    """A primitive isotropic class with its perp-rank bookkeeping.

    ``infinite`` records whether rk(e-perp) exceeds the rank of the
    sublattice generated by e and the roots of e-perp.
    """

    e: Vec
    rank_perp: int
    rank_perp_two: int
    infinite: bool


@dataclass(frozen=True)
class FibrationAtlas:
    """Classes found by a bounded scan, with the span of the infinite ones."""

    classes: tuple[FibrationClass, ...]
    span: Sublattice
    span_rank: int
    certified_full: bool

    @property
    def infinite_classes(self) -> tuple[FibrationClass, ...]:
        return tuple(c for c in self.classes if c.infinite)


def is_primitive_isotropic(lat: Lattice, e) -> bool:
    e = check_vector(lat, e)
    if all(x == 0 for x in e):
        return False
    return norm(lat, e) == 0 and la.vec_content(e) == 1


def _require_primitive_isotropic(lat: Lattice, e) -> Vec:
    e = check_vector(lat, e)
    if not is_primitive_isotropic(lat, e):
        raise NotPrimitiveIsotropic(f"{e} is not primitive isotropic")
    return e


def _perp_quotient(lat: Lattice, e: Vec) -> tuple[Sublattice, Mat, Mat]:
    """Orthogonal complement of e, quotient Gram of e-perp / Ze, lift rows.

    The quotient is negative definite of rank dim - 2; lift rows express
    its basis in ambient coordinates (a choice of coset representatives).
    """
    perp = orthogonal_complement(lat, make_sublattice(lat, (e,)))
    b = perp.basis
    coords = la.solve_int(la.transpose(b), e)
    assert coords is not None, "e must lie in its own orthogonal complement"
    v = la.completion_with_first_row(coords)
    w = v[1:]
    gram_b = la.mat_mul(la.mat_mul(b, lat.gram), la.transpose(b))
    qgram = la.mat_mul(la.mat_mul(w, gram_b), la.transpose(w))
    lift = la.mat_mul(w, b)
    return perp, qgram, lift


@lru_cache(maxsize=None)
def _quotient_root_data(qgram: Mat) -> tuple[int, tuple[Vec, ...]]:
    """Root-span rank and the (-2)-vectors of a negative definite Gram."""
    roots = tuple(_solutions_of_norm(qgram, -2))
    rank = la.rank(roots) if roots else 0
    return rank, roots


def perp_two_sublattice(lat: Lattice, e) -> Sublattice:
    """Sublattice generated by e and all (-2)-vectors of e-perp."""
    e = _require_primitive_isotropic(lat, e)
    perp, qgram, lift = _perp_quotient(lat, e)
    _, roots = _quotient_root_data(qgram)
    lifted = [
        tuple(sum(t * lift[j][i] for j, t in enumerate(r)) for i in range(lat.dim))
        for r in roots
    ]
    return span_of(lat, [e] + lifted)


def fibration_analysis(lat: Lattice, e) -> FibrationClass:
    """Rank bookkeeping and the infinite-stabilizer verdict for a class e."""
    e = _require_primitive_isotropic(lat, e)
    perp, qgram, _ = _perp_quotient(lat, e)
    root_rank, _ = _quotient_root_data(qgram)
    rank_perp = perp.rank
    assert rank_perp == lat.dim - 1
    rank_perp_two = 1 + root_rank
    return FibrationClass(
        e=e,
        rank_perp=rank_perp,
        rank_perp_two=rank_perp_two,
        infinite=rank_perp - rank_perp_two > 0,
    )


def primitive_isotropic_in_box(lat: Lattice, coord_bound: int):
    """Primitive isotropic vectors with sup-norm <= bound, one per +-pair."""
    seen = set()
    for v in itertools.product(range(-coord_bound, coord_bound + 1), repeat=lat.dim):
        if not any(v):
            continue
        if la.vec_content(v) != 1:
            continue
        if norm(lat, v) != 0:
            continue
        seen.add(la.sign_normalize(v))
    return sorted(seen)


def scan_isotropic(lat: Lattice, coord_bound: int) -> FibrationAtlas:
    """Analyze every primitive isotropic class in a coordinate box.

    The span collects the infinite-type classes only; ``certified_full``
    means they already span the whole lattice rationally, which is all
    the downstream rank arguments consume.
    """
    assert coord_bound >= 1
    classes = tuple(
        fibration_analysis(lat, e) for e in primitive_isotropic_in_box(lat, coord_bound)
    )
    infinite = [c.e for c in classes if c.infinite]
    span = span_of(lat, infinite)
    return FibrationAtlas(
        classes=classes,
        span=span,
        span_rank=span.rank,
        certified_full=span.rank == lat.dim,
    )


def exceptional_sublattice(lat: Lattice, atlas: FibrationAtlas) -> Sublattice:
    """Orthogonal complement of the span of the infinite-type classes.

    When the atlas is certified full this equals the sublattice of
    classes with finite orbit (necessarily {0}); otherwise it is only an
    upper bound for it.  Cross-checked against the saturated intersection
    of the (e-perp)^(2) sublattices over the discovered classes.
    """
    infinite = atlas.infinite_classes
    if len(infinite) < 2:
        raise InsufficientFibrations(
            "need at least two infinite-type classes, found "
            f"{len(infinite)}"
        )
    complement = orthogonal_complement(lat, atlas.span)
    if atlas.certified_full:
        inter = _intersection_of_perp_two(lat, infinite)
        assert complement.basis == inter.basis
    return complement


def _intersection_of_perp_two(lat: Lattice, classes) -> Sublattice:
    out = None
    for c in classes:
        p2 = primitive_closure(lat, perp_two_sublattice(lat, c.e))
        out = p2 if out is None else sublattice_intersection(out, p2)
    return primitive_closure(lat, out)


@dataclass(frozen=True)
class EvenPicardReport:
    """Verdicts for the rank-parity criteria on an even-dimensional lattice.

    Each entry is "true", "false", or "inconclusive"; a bounded scan can
    certify the positive direction but can never refute, so "false" only
    appears when a verdict is forced by another definite one.
    """

    spans_rationally: str
    perp_two_intersection_trivial: str
    exceptional_trivial: str
    inconclusive: bool


def even_picard_report(lat: Lattice, atlas: FibrationAtlas) -> EvenPicardReport:
    if lat.dim % 2 != 0:
        raise OddDimension("lattice dimension must be even")
    if lat.dim < 4:
        raise DimensionTooSmall("lattice dimension must be at least 4")
    infinite = atlas.infinite_classes
    spans = "true" if atlas.certified_full else "inconclusive"
    if infinite:
        inter = _intersection_of_perp_two(lat, infinite)
        inter_trivial = "true" if inter.rank == 0 else "inconclusive"
    else:
        inter_trivial = "inconclusive"
    complement = orthogonal_complement(lat, atlas.span)
    exc_trivial = "true" if complement.rank == 0 else "inconclusive"
    verdicts = (spans, inter_trivial, exc_trivial)
    assert not ("true" in verdicts and "false" in verdicts)
    return EvenPicardReport(
        spans_rationally=spans,
        perp_two_intersection_trivial=inter_trivial,
        exceptional_trivial=exc_trivial,
        inconclusive="inconclusive" in verdicts,
    )
