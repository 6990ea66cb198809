"""Dense univariate integer polynomial arithmetic, exact throughout.

A polynomial is a tuple of int coefficients in ascending degree with no
trailing zero; the zero polynomial is the empty tuple.  Rational work
(Sturm sequences, evaluation at rational points) uses Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import EndpointIsRoot, NotSquarefree

Poly = tuple[int, ...]

ONE: Poly = (1,)


def trim(coeffs) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Poly) -> int:
    return len(p) - 1


def is_monic(p: Poly) -> bool:
    return bool(p) and p[-1] == 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def scale(p: Poly, c: int) -> Poly:
    if c == 0:
        return ()
    return tuple(c * x for x in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def mul_many(polys) -> Poly:
    out = ONE
    for p in polys:
        out = mul(out, p)
    return out


def pow_poly(p: Poly, k: int) -> Poly:
    out = ONE
    for _ in range(k):
        out = mul(out, p)
    return out


def divmod_exact(p: Poly, d: Poly) -> tuple[Poly, Poly]:
    """Division with remainder by a monic (or +-1 leading) divisor."""
    assert d and d[-1] in (1, -1)
    lead = d[-1]
    r = list(p)
    q = [0] * max(len(p) - len(d) + 1, 0)
    while len(r) >= len(d) and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(d):
            break
        c = r[-1] * lead
        shift = len(r) - len(d)
        q[shift] = c
        for i, dc in enumerate(d):
            r[shift + i] -= c * dc
    return trim(q), trim(r)


def divides(d: Poly, p: Poly) -> bool:
    q, r = divmod_exact(p, d)
    return not r


def eval_int(p: Poly, x: int) -> int:
    out = 0
    for c in reversed(p):
        out = out * x + c
    return out


def eval_frac(p: Poly, x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(p):
        out = out * x + c
    return out


def derivative(p: Poly) -> Poly:
    return trim(i * c for i, c in enumerate(p) if i > 0)


def content(p: Poly) -> int:
    g = 0
    for c in p:
        g = gcd(g, abs(c))
    return g


def _gcd_q(p: Poly, q: Poly) -> Poly:
    """Primitive integer gcd via Euclid over the rationals."""
    a = [Fraction(c) for c in p]
    b = [Fraction(c) for c in q]
    while any(b):
        while b and b[-1] == 0:
            b.pop()
        if not b:
            break
        # a mod b
        r = list(a)
        while len(r) >= len(b) and any(r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) < len(b):
                break
            c = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, bc in enumerate(b):
                r[shift + i] -= c * bc
        a, b = b, r
    while a and a[-1] == 0:
        a.pop()
    if not a:
        return ()
    denom = 1
    for c in a:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = [int(c * denom) for c in a]
    g = content(tuple(ints))
    out = tuple(c // g for c in ints)
    return out if out[-1] > 0 else neg(out)


def is_squarefree(p: Poly) -> bool:
    if degree(p) <= 1:
        return bool(p)
    return degree(_gcd_q(p, derivative(p))) == 0


def is_reciprocal(p: Poly) -> bool:
    return bool(p) and p == tuple(reversed(p))


def cauchy_root_bound(p: Poly) -> int:
    """Integer B with every complex root of p of absolute value < B."""
    assert p and p[-1] != 0
    lead = abs(p[-1])
    m = max(abs(c) for c in p[:-1]) if len(p) > 1 else 0
    return 1 + (m + lead - 1) // lead + 1


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    out = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            out -= out // d
        d += 1
    if m > 1:
        out -= out // m
    return out


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Poly:
    """The n-th cyclotomic polynomial, by exact recursive division."""
    assert n >= 1
    if n == 1:
        return (-1, 1)
    p: Poly = tuple([-1] + [0] * (n - 1) + [1])  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            q, r = divmod_exact(p, cyclotomic(d))
            assert not r
            p = q
    return p


def cyclotomic_indices_up_to_degree(d: int) -> list[int]:
    """All n with euler_phi(n) <= d, ascending (complete: phi(n) >= sqrt(n/2))."""
    return [n for n in range(1, 2 * d * d + 2) if euler_phi(n) <= d]


def sturm_chain(p: Poly) -> list[list[Fraction]]:
    chain: list[list[Fraction]] = [[Fraction(c) for c in p]]
    d = [Fraction(c) for c in derivative(p)]
    chain.append(d)
    while True:
        a, b = chain[-2], chain[-1]
        if not any(b):
            chain.pop()
            break
        r = list(a)
        while len(r) >= len(b) and any(r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) < len(b):
                break
            c = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, bc in enumerate(b):
                r[shift + i] -= c * bc
        while r and r[-1] == 0:
            r.pop()
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _sign_variations(values) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p: Poly, a, b) -> int:
    """Number of real roots of squarefree p in the open interval (a, b)."""
    a = Fraction(a)
    b = Fraction(b)
    assert a < b
    if not is_squarefree(p):
        raise NotSquarefree("polynomial has a repeated factor")
    if eval_frac(p, a) == 0 or eval_frac(p, b) == 0:
        raise EndpointIsRoot("interval endpoint is a root")
    chain = sturm_chain(p)
    va = _sign_variations(_horner_chain(chain, a))
    vb = _sign_variations(_horner_chain(chain, b))
    return va - vb


def _horner_chain(chain, x: Fraction) -> list[Fraction]:
    out = []
    for coeffs in chain:
        v = Fraction(0)
        for c in reversed(coeffs):
            v = v * x + c
        out.append(v)
    return out


def count_real_roots_above(p: Poly, a) -> int:
    """Real roots of squarefree p in (a, +infinity)."""
    bound = cauchy_root_bound(p)
    hi = Fraction(max(bound, a + 1))
    while eval_frac(p, hi) == 0:
        hi += 1
    return sturm_count(p, a, hi)


def count_real_roots_below(p: Poly, b) -> int:
    """Real roots of squarefree p in (-infinity, b)."""
    bound = cauchy_root_bound(p)
    lo = Fraction(min(-bound, b - 1))
    while eval_frac(p, lo) == 0:
        lo -= 1
    return sturm_count(p, lo, b)
