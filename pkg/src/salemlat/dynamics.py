"""Parabolic generators, maximal-Salem-degree search, fibration transfer.

Each infinite-type isotropic class e yields integral unipotent isometries
(Eichler transvections) fixing e.  Words in these generators realize the
maximal Salem degree: the even part of the rank of the span of the
classes.  The transfer pipeline moves infinite-type classes through a
finite-index isometric embedding by scaling, walking into a chamber, and
primitivizing.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import intlinalg as la
from .errors import (
    BudgetExceeded,
    BudgetExhausted,
    InfiniteIndex,
    NoInfiniteClasses,
    NotIsometricEmbedding,
    NotIsotropic,
    NotOrthogonal,
    OnWall,
    ProportionalToE,
    WalkBudgetExceeded,
)
from .fibrations import FibrationAtlas, FibrationClass, fibration_analysis, is_primitive_isotropic
from .intlinalg import Vec
from .isometry import Isometry, char_poly, compose, identity_isometry, in_so_plus, inverse, validate_isometry
from .lattice import Lattice, check_vector, inner, norm, span_of
from .roots import WalkResult, reflect, weyl_walk
from .salem import SalemDecomposition, salem_decomposition

_NSTREAMS = 8


def eichler_transvection(lat: Lattice, e, v) -> Isometry:
    """The unipotent isometry x -> x - (v,x)e + (e,x)v - (v,v)/2 (e,x)e.

    Requires e primitive isotropic and v in e-perp, not proportional to e.
    Evenness of the lattice makes (v,v)/2 an integer, so the matrix is
    integral; it fixes e and has infinite order.
    """
    e = check_vector(lat, e)
    v = check_vector(lat, v)
    if not is_primitive_isotropic(lat, e):
        raise NotIsotropic(f"{e} is not primitive isotropic")
    if inner(lat, e, v) != 0:
        raise NotOrthogonal("v must pair to zero with e")
    if la.rank((e, v)) != 2:
        raise ProportionalToE("v must not be proportional to e")
    half_vv = norm(lat, v) // 2
    ge = la.mat_vec(lat.gram, e)
    gv = la.mat_vec(lat.gram, v)
    n = lat.dim
    cols = []
    for j in range(n):
        ve = gv[j]  # (v, basis_j)
        ee = ge[j]  # (e, basis_j)
        col = [
            (1 if i == j else 0) - ve * e[i] + ee * v[i] - half_vv * ee * e[i]
            for i in range(n)
        ]
        cols.append(col)
    return validate_isometry(lat, la.transpose(cols))


@dataclass(frozen=True)
class GeneratorSet:
    """Transvection generators (e, v, g) plus their inverses as an alphabet.

    Letters are signed 1-based indices: +i is generators[i-1], -i its
    inverse.
    """

    lattice: Lattice
    generators: tuple[tuple[Vec, Vec, Isometry], ...]
    inverses: tuple[Isometry, ...]

    def letters(self) -> tuple[int, ...]:
        k = len(self.generators)
        return tuple(range(1, k + 1)) + tuple(range(-1, -k - 1, -1))

    def letter(self, idx: int) -> Isometry:
        if idx > 0:
            return self.generators[idx - 1][2]
        return self.inverses[-idx - 1]

    def word_isometry(self, word) -> Isometry:
        out = identity_isometry(self.lattice)
        for idx in word:
            out = compose(out, self.letter(idx))
        return out


def positive_vector_candidates(lat: Lattice):
    """Deterministic stream of positive-norm vectors, small ones first."""
    n = lat.dim
    seen = set()

    def emit(v):
        v = la.sign_normalize(tuple(v))
        if v in seen or not any(v):
            return None
        seen.add(v)
        if norm(lat, v) > 0:
            return v
        return None

    for i in range(n):
        v = emit(tuple(1 if j == i else 0 for j in range(n)))
        if v:
            yield v
    for a, b in ((1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1), (2, 3), (3, 2)):
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                v = emit(tuple(a if t == i else b if t == j else 0 for t in range(n)))
                if v:
                    yield v
    if n <= 6:
        for bound in (2, 3):
            for cand in sorted(itertools.product(range(-bound, bound + 1), repeat=n)):
                v = emit(cand)
                if v:
                    yield v


def find_positive_vector(lat: Lattice) -> Vec:
    for v in positive_vector_candidates(lat):
        return v
    raise ValueError("no positive-norm vector found among small candidates")


def build_generators(lat: Lattice, atlas: FibrationAtlas, per_class: int) -> GeneratorSet:
    """Up to per_class transvections for each infinite-type class.

    The v for E(e, v) run through the Hermite basis of e-perp, skipping
    multiples of e.  Every generator is checked to fix its e, to have
    infinite order, and to lie in the cone-preserving special orthogonal
    group.
    """
    assert per_class >= 1
    infinite = atlas.infinite_classes
    if not infinite:
        raise NoInfiniteClasses("atlas has no infinite-type classes")
    h_ref = find_positive_vector(lat)
    gens = []
    for cls in infinite:
        e = cls.e
        ge = la.mat_vec(lat.gram, e)
        perp_basis = la.kernel((ge,))
        taken = 0
        for v in perp_basis:
            if taken == per_class:
                break
            if la.rank((e, v)) != 2:
                continue
            g = eichler_transvection(lat, e, v)
            assert g.apply(e) == e
            assert g.matrix != la.identity(lat.dim)
            assert in_so_plus(g, h_ref)
            gens.append((e, v, g))
            taken += 1
    inverses = tuple(inverse(g) for _, _, g in gens)
    return GeneratorSet(lattice=lat, generators=tuple(gens), inverses=inverses)


@dataclass(frozen=True)
class SearchReport:
    """Best word found, its spectral data, and the search bookkeeping."""

    best_word: tuple[int, ...]
    best_isometry: Isometry
    decomposition: SalemDecomposition
    achieved_degree: int
    target_degree: int
    words_examined: int
    seed: int


def _target_degree(lat: Lattice, gens: GeneratorSet) -> int:
    classes = [e for e, _, _ in gens.generators]
    r = span_of(lat, classes).rank
    r = min(r, lat.dim)
    return r if r % 2 == 0 else r - 1


class _Best:
    __slots__ = ("word", "isometry", "decomposition")

    def __init__(self):
        self.word = None
        self.isometry = None
        self.decomposition = None

    def offer(self, word, isom, dec) -> None:
        if self.word is None:
            self.word, self.isometry, self.decomposition = word, isom, dec
            return
        old = self.decomposition
        new_key = (dec.salem_degree, dec.spectral_radius[0], -len(word))
        old_key = (old.salem_degree, old.spectral_radius[0], -len(self.word))
        if new_key > old_key:
            self.word, self.isometry, self.decomposition = word, isom, dec


def _bfs_words(letters, max_len):
    for length in range(1, max_len + 1):
        for word in itertools.product(letters, repeat=length):
            if any(a == -b for a, b in zip(word, word[1:])):
                continue
            yield word


def _random_word(rng: random.Random, letters, length: int):
    word = [letters[rng.randrange(len(letters))]]
    while len(word) < length:
        options = [l for l in letters if l != -word[-1]]
        word.append(options[rng.randrange(len(options))])
    return tuple(word)


def search_max_salem(
    lat: Lattice,
    gens: GeneratorSet,
    max_word_len: int,
    budget: int,
    seed: int,
    workers: int = 1,
) -> SearchReport:
    """Hunt for a word whose Salem degree hits the even part of the span rank.

    Exhaustive over reduced words of length <= 3, then fixed seeded random
    streams up to max_word_len.  The stream layout is independent of the
    worker count, so reports are byte-identical for any ``workers``.
    Raises BudgetExhausted (carrying the best report so far) when the
    target is not reached.
    """
    assert gens.generators, "generator set is empty"
    target = _target_degree(lat, gens)
    letters = gens.letters()
    best = _Best()
    examined = 0
    found = False

    def evaluate(word, tracker) -> bool:
        isom = gens.word_isometry(word)
        dec = salem_decomposition(char_poly(isom))
        assert dec.salem_degree <= target, (
            "Salem degree exceeded the rank bound, which is impossible for "
            "isometries preserving the span of the generator classes"
        )
        tracker.offer(word, isom, dec)
        return dec.salem_degree == target

    for word in _bfs_words(letters, min(3, max_word_len)):
        if examined == budget or found:
            break
        examined += 1
        if evaluate(word, best):
            found = True
    stream_budgets = [0] * _NSTREAMS
    if not found:
        leftover = budget - examined
        for i in range(_NSTREAMS):
            stream_budgets[i] = leftover // _NSTREAMS + (
                1 if i < leftover % _NSTREAMS else 0
            )

    def run_stream(i: int):
        n_words = stream_budgets[i]
        tracker = _Best()
        count = 0
        if n_words == 0 or max_word_len < 1:
            return tracker, count
        rng = random.Random(seed * 1000003 + i + 1)
        lo = 4 if max_word_len >= 4 else 1
        for _ in range(n_words):
            word = _random_word(rng, letters, rng.randint(lo, max_word_len))
            count += 1
            if evaluate(word, tracker):
                break
        return tracker, count

    if any(stream_budgets):
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(run_stream, range(_NSTREAMS)))
        else:
            results = [run_stream(i) for i in range(_NSTREAMS)]
        for tracker, count in results:
            examined += count
            if tracker.word is not None:
                best.offer(tracker.word, tracker.isometry, tracker.decomposition)
        found = best.decomposition is not None and best.decomposition.salem_degree == target

    report = SearchReport(
        best_word=best.word if best.word is not None else (),
        best_isometry=best.isometry
        if best.isometry is not None
        else identity_isometry(lat),
        decomposition=best.decomposition
        if best.decomposition is not None
        else salem_decomposition(char_poly(identity_isometry(lat))),
        achieved_degree=best.decomposition.salem_degree
        if best.decomposition is not None
        else 0,
        target_degree=target,
        words_examined=examined,
        seed=seed,
    )
    if report.achieved_degree < target:
        raise BudgetExhausted(
            f"search exhausted {examined} words without reaching degree {target}",
            report=report,
        )
    return report


@dataclass(frozen=True)
class TransferResult:
    """Transferred classes plus the data a reproducibility report needs."""

    classes: tuple[FibrationClass, ...]
    scale: int
    walk: WalkResult
    reference: Vec


def transfer_fibrations(
    lat_x: Lattice,
    lat_y: Lattice,
    iota,
    e_list,
    h_y,
    walk_budget: int,
) -> TransferResult:
    """Pull infinite-type classes through a finite-index isometric embedding.

    Scales by the exponent of the cokernel of iota, pulls back, walks the
    pulled-back positive class into a canonical chamber, applies the same
    reflection word to every class, and primitivizes.  The infinite
    verdict persists for every class and the transferred span rank
    matches the input span rank; both facts are asserted.
    """
    iota = la.freeze(iota)
    if len(iota) != lat_y.dim or any(len(r) != lat_x.dim for r in iota):
        raise NotIsometricEmbedding(
            f"iota must be {lat_y.dim} x {lat_x.dim} (ambient rows, domain columns)"
        )
    if lat_x.dim != lat_y.dim or la.rank(iota) < lat_x.dim:
        raise InfiniteIndex("embedding must have finite index (equal ranks)")
    pulled_gram = la.mat_mul(la.mat_mul(la.transpose(iota), lat_y.gram), iota)
    if pulled_gram != lat_x.gram:
        raise NotIsometricEmbedding("iota does not pull the ambient form back")
    h_y = check_vector(lat_y, h_y)
    if norm(lat_y, h_y) <= 0:
        raise ValueError("h_y must have positive norm")
    for e in e_list:
        if not fibration_analysis(lat_y, e).infinite:
            raise ValueError(f"class {tuple(e)} is not infinite-type in the ambient lattice")
    scale = la.snf_diagonal(iota)[-1]
    h0 = la.solve_int(iota, la.vec_scale(h_y, scale))
    assert h0 is not None
    pulled = []
    for e in e_list:
        p = la.solve_int(iota, la.vec_scale(tuple(e), scale))
        assert p is not None
        pulled.append(p)

    walk = None
    reference = None
    for cand in itertools.islice(positive_vector_candidates(lat_x), 64):
        ref = cand if inner(lat_x, h0, cand) > 0 else tuple(-x for x in cand)
        try:
            walk = weyl_walk(lat_x, h0, ref, walk_budget)
            reference = ref
            break
        except OnWall:
            continue
        except BudgetExceeded as exc:
            raise WalkBudgetExceeded(str(exc)) from exc
    if walk is None:
        raise OnWall("every candidate reference sits on a wall; supply a better h_y")

    classes = []
    for p in pulled:
        v = p
        for delta in walk.word:
            v = reflect(lat_x, delta, v)
        content = la.vec_content(v)
        v = tuple(x // content for x in v)
        cls = fibration_analysis(lat_x, v)
        assert cls.infinite, "transfer must preserve the infinite verdict"
        classes.append(cls)
    out_rank = span_of(lat_x, [c.e for c in classes]).rank
    in_rank = la.rank(la.freeze(e_list))
    assert out_rank >= in_rank
    return TransferResult(
        classes=tuple(classes), scale=scale, walk=walk, reference=reference
    )
