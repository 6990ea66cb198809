"""Salem polynomial recognition and entropy intervals, all certified.

A Salem polynomial is monic, irreducible, reciprocal, of even degree >= 2,
with one real root a > 1, one real root 1/a in (0, 1), and every other
root on the unit circle away from +-1.  Irreducibility never needs a
factorization pass here: a monic integer polynomial whose roots all lie
on the unit circle is a product of cyclotomics, so once cyclotomic
factors are excluded the root-location profile forces irreducibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import polynomials as pol
from .errors import NotMonic, NotSpectrallySalem
from .polynomials import Poly

# Re-exported polynomial operations that belong to this module's surface.
cyclotomic = pol.cyclotomic
sturm_count = pol.sturm_count


@dataclass(frozen=True)
class SalemDecomposition:
    """Characteristic-polynomial factorization into cyclotomics and a Salem part.

    ``cyclotomic_factors`` lists (n, multiplicity) pairs; ``salem_factor``
    is None exactly when ``entropy_is_zero``.  ``spectral_radius`` is an
    exact rational interval containing the largest root modulus.
    """

    cyclotomic_factors: tuple[tuple[int, int], ...]
    salem_factor: Poly | None
    salem_degree: int
    spectral_radius: tuple[Fraction, Fraction]
    entropy_is_zero: bool

    def reassemble(self) -> Poly:
        """Multiply the factors back together."""
        out = pol.ONE
        for n, mult in self.cyclotomic_factors:
            out = pol.mul(out, pol.pow_poly(pol.cyclotomic(n), mult))
        if self.salem_factor is not None:
            out = pol.mul(out, self.salem_factor)
        return out


def strip_cyclotomic(p: Poly) -> tuple[list[tuple[int, int]], Poly]:
    """Divide out all cyclotomic factors of a monic polynomial.

    Returns ((n, multiplicity) pairs in ascending n, cyclotomic-free
    remainder).  Candidates are the n with euler_phi(n) <= deg(p), which
    is exhaustive.
    """
    if not pol.is_monic(p):
        raise NotMonic("input must be monic")
    factors: list[tuple[int, int]] = []
    rem = p
    for n in pol.cyclotomic_indices_up_to_degree(pol.degree(p)):
        phi_n = pol.cyclotomic(n)
        mult = 0
        while pol.degree(rem) >= pol.degree(phi_n):
            q, r = pol.divmod_exact(rem, phi_n)
            if r:
                break
            rem = q
            mult += 1
        if mult:
            factors.append((n, mult))
    return factors, rem


def trace_polynomial(p: Poly) -> Poly:
    """For reciprocal p of degree 2m, the monic T with p(x) = x^m T(x + 1/x)."""
    assert pol.is_reciprocal(p) and pol.degree(p) % 2 == 0
    m = pol.degree(p) // 2
    # v[k] encodes x^k + x^{-k} as a polynomial in y = x + 1/x.
    v: list[Poly] = [(2,), (0, 1)]
    while len(v) <= m:
        v.append(pol.sub(pol.mul((0, 1), v[-1]), v[-2]))
    t: Poly = (p[m],)
    for k in range(1, m + 1):
        t = pol.add(t, pol.scale(v[k], p[m + k]))
    return t


def is_salem(p: Poly) -> bool:
    """Decide whether p is a Salem polynomial.

    The check runs entirely in exact arithmetic: structural conditions,
    exclusion of cyclotomic factors, then Sturm counts on the trace
    polynomial T (one root > 2, none <= -2, the rest inside (-2, 2)).
    """
    p = pol.trim(p)
    if not pol.is_monic(p):
        raise NotMonic("input must be monic")
    d = pol.degree(p)
    if d < 2 or d % 2 != 0:
        return False
    if not pol.is_reciprocal(p):
        return False
    if pol.eval_int(p, 1) == 0 or pol.eval_int(p, -1) == 0:
        return False
    if not pol.is_squarefree(p):
        return False
    for n in pol.cyclotomic_indices_up_to_degree(d):
        if pol.divides(pol.cyclotomic(n), p):
            return False
    m = d // 2
    t = trace_polynomial(p)
    # p(1) != 0 != p(-1) keeps +-2 off the root set of t.
    if pol.count_real_roots_above(t, 2) != 1:
        return False
    if pol.count_real_roots_below(t, -2) != 0:
        return False
    if pol.sturm_count(t, -2, 2) != m - 1:
        return False
    return True


def _refine_radius(p: Poly, lo: Fraction, hi: Fraction, width: Fraction):
    """Shrink a sign-change bracket around the unique root of p above 1."""
    flo = pol.eval_frac(p, lo)
    assert flo < 0 and pol.eval_frac(p, hi) > 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        if pol.eval_frac(p, mid) < 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def salem_decomposition(p: Poly, radius_width: Fraction = Fraction(1, 10**12)) -> SalemDecomposition:
    """Factor a monic polynomial as cyclotomics times at most one Salem factor.

    Characteristic polynomials of cone-preserving isometries of hyperbolic
    lattices always admit such a factorization; any other input raises
    NotSpectrallySalem.
    """
    p = pol.trim(p)
    if not pol.is_monic(p):
        raise NotMonic("input must be monic")
    factors, rem = strip_cyclotomic(p)
    if rem == pol.ONE:
        one = Fraction(1)
        return SalemDecomposition(
            cyclotomic_factors=tuple(factors),
            salem_factor=None,
            salem_degree=0,
            spectral_radius=(one, one),
            entropy_is_zero=True,
        )
    if not is_salem(rem):
        raise NotSpectrallySalem(
            "cyclotomic-free part is not a Salem polynomial; the input is not "
            "the characteristic polynomial of a cone-preserving hyperbolic isometry"
        )
    hi = Fraction(1 + 2 * max(abs(c) for c in rem))
    lo, hi = _refine_radius(rem, Fraction(1), hi, radius_width)
    return SalemDecomposition(
        cyclotomic_factors=tuple(factors),
        salem_factor=rem,
        salem_degree=pol.degree(rem),
        spectral_radius=(lo, hi),
        entropy_is_zero=False,
    )


def _atanh_series_interval(z: Fraction, err: Fraction):
    """Certified enclosure of atanh(z) for 0 <= z < 1 by partial sums."""
    assert 0 <= z < 1
    total = Fraction(0)
    zpow = z
    z2 = z * z
    k = 0
    while True:
        total += zpow / (2 * k + 1)
        # Tail bound: sum_{j>k} z^(2j+1)/(2j+1) <= z^(2k+3) / ((2k+3)(1-z^2)).
        tail = zpow * z2 / ((2 * k + 3) * (1 - z2))
        if tail <= err:
            return total, total + tail
        zpow *= z2
        k += 1


def log_interval(q: Fraction, err: Fraction) -> tuple[Fraction, Fraction]:
    """Rational enclosure [lo, hi] of log(q) with hi - lo <= 2*err, for q >= 1."""
    assert q >= 1
    k = 0
    while q > Fraction(3, 2):
        q /= 2
        k += 1
    lo, hi = _atanh_series_interval((q - 1) / (q + 1), err / 4)
    lo, hi = 2 * lo, 2 * hi
    if k:
        l2lo, l2hi = _atanh_series_interval(Fraction(1, 3), err / (8 * k))
        lo += 2 * k * l2lo
        hi += 2 * k * l2hi
    return lo, hi


def entropy_interval(dec: SalemDecomposition, width: Fraction = Fraction(1, 10**6)) -> tuple[Fraction, Fraction]:
    """Interval of width <= width around log(spectral radius)."""
    width = Fraction(width)
    assert width > 0
    if dec.entropy_is_zero:
        return Fraction(0), Fraction(0)
    lo, hi = dec.spectral_radius
    if hi - lo > width / 3:
        lo, hi = _refine_radius(dec.salem_factor, lo, hi, width / 3)
    # log(hi) - log(lo) <= (hi - lo) / lo <= hi - lo since lo > 1.
    llo, _ = log_interval(lo, width / 6)
    _, lhi = log_interval(hi, width / 6)
    assert lhi - llo <= width
    return llo, lhi
