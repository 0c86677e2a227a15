"""Independent reference computations used as oracles by the tests.

Everything here deliberately avoids the library's fast paths: plain
per-integer digit scans instead of the vectorized kernel, brute-force
residue searches instead of modular inverses, literal Fraction sums
instead of integer Horner evaluation, and numerical quadrature instead of
closed forms.  Agreement between these and the library is the point of
the tests, so nothing below imports anything fancier than locate_box.
"""
from __future__ import annotations

import cmath
import itertools
import math
from fractions import Fraction

from ratbase import AdeleContext, Base, digit, length, locate_box

BASES = [Base(3, 2), Base(5, 2), Base(5, 3), Base(7, 4), Base(10, 1)]


def word_digits(base: Base, n: int) -> tuple[int, ...]:
    """Most-significant-first digits of n, straight from the recurrence."""
    out = []
    while n > 0:
        out.append((base.b * n) % base.a)
        n = (base.b * n) // base.a
    return tuple(reversed(out))


def literal_value(base: Base, digits_msf) -> Fraction:
    """(1/b) sum_k eps_k alpha^k with literal Fraction powers, no Horner."""
    alpha = Fraction(base.a, base.b)
    total = Fraction(0)
    for k, d in enumerate(reversed(tuple(digits_msf))):
        total += d * alpha**k
    return total / base.b


def stream_prefix(base: Base, m: int) -> list[int]:
    """First m stream digits by concatenating the words for n = 1, 2, ..."""
    out: list[int] = []
    n = 1
    while len(out) < m:
        out.extend(word_digits(base, n))
        n += 1
    return out[:m]


def scan_count(base: Base, word_msf, k: int, N: int, padded: bool = False) -> int:
    """S_{k,w}(N) or S'_{k,w}(N) by per-integer digit reads."""
    w = tuple(word_msf)
    m = len(w)
    hits = 0
    for n in range(1, N + 1):
        if not padded and length(base, n) < k + m:
            continue
        if all(digit(base, n, k + m - 1 - i) == w[i] for i in range(m)):
            hits += 1
    return hits


def stream_scan(base: Base, word_msf, x: int) -> int:
    """Occurrences of w among the stream windows anchored at positions 1..x."""
    w_lsf = tuple(reversed(tuple(word_msf)))
    z = stream_prefix(base, x + len(w_lsf))
    return sum(
        1 for n in range(1, x + 1)
        if all(z[n - 1 + i] == w_lsf[i] for i in range(len(w_lsf)))
    )


def vp(p: int, x) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    num, den, v = x.numerator, x.denominator, 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def frac_p_bruteforce(p: int, x) -> Fraction:
    """The unique c/p^m in [0, 1) with x - c/p^m p-integral, by search."""
    x = Fraction(x)
    m, den = 0, x.denominator
    while den % p == 0:
        den //= p
        m += 1
    mod = p**m
    for c in range(mod):
        if (x - Fraction(c, mod)).denominator % p != 0:
            return Fraction(c, mod)
    raise AssertionError(f"no p-adic fractional part for {x} at p = {p}")


def denominator_in_b(b: int, x) -> bool:
    """True when every prime factor of the denominator divides b."""
    den = Fraction(x).denominator
    while den > 1:
        g = math.gcd(den, b)
        if g == 1:
            return False
        while den % g == 0:
            den //= g
    return True


def corner_set(ctx: AdeleContext, d: int, r: int) -> set[Fraction]:
    """Level-r corners of the digit-d tile: d/alpha + sum_{j=2}^r e_j alpha^-j."""
    alpha = Fraction(ctx.base.a, ctx.base.b)
    out = set()
    for tail in itertools.product(range(ctx.base.a), repeat=r - 1):
        c = d / alpha
        for j, e in enumerate(tail, start=2):
            c += e * alpha**-j
        out.add(c)
    return out


def urysohn_bruteforce(ctx: AdeleContext, d: int, r: int, z) -> Fraction:
    """Tent sum for f_{d,r}(Phi(z)) with brute-force translate matching.

    For each corner, candidate lattice translates are enumerated over the
    full integer grid scaled by the b-part of the offset's denominator, and
    the p-adic ball match is decided by raw valuations.  No modular
    inverses, no coset representatives.
    """
    a, b = ctx.base.a, ctx.base.b
    h = Fraction(b, a) ** r
    total = Fraction(0)
    for x_c in corner_set(ctx, d, r):
        delta = Fraction(z) - x_c
        den_b = 1
        den = delta.denominator
        for p, _ in ctx.primes:
            while den % p == 0:
                den //= p
                den_b *= p
        lo = math.ceil((delta - h) * den_b)
        hi = math.floor((delta + h) * den_b)
        for u in range(lo, hi + 1):
            y = Fraction(u, den_b)
            diff = delta - y
            if diff != 0 and any(vp(p, diff) < r * e for p, e in ctx.primes):
                continue
            ov = h - abs(diff)
            if ov > 0:
                total += ov
    return Fraction(a, b) ** r * total


def ball_char_integral(p: int, e: int, r: int, xi: Fraction) -> complex:
    """Integral of e(lambda_p(-u xi)) over p^(re) Z_p as an exact finite sum."""
    re = r * e
    if xi == 0:
        return complex(p**-re, 0.0)
    m = max(0, -vp(p, xi) - re)
    acc = 0 + 0j
    for j in range(p**m):
        ph = float(frac_p_bruteforce(p, Fraction(-(p**re) * j) * xi))
        acc += cmath.exp(2j * math.pi * ph)
    return (p**-re) * acc / p**m


def coeff_g_quadrature(ctx: AdeleContext, x, r: int, xi) -> complex:
    """Bump coefficient by quadrature of the real tent times exact ball sums."""
    from scipy.integrate import quad

    a, b = ctx.base.a, ctx.base.b
    h = float(Fraction(b, a) ** r)
    xi = Fraction(xi)
    xf = float(xi)
    re_i = quad(lambda u: (h - abs(u)) * math.cos(2 * math.pi * xf * u),
                -h, h, limit=600)[0]
    im_i = quad(lambda u: (h - abs(u)) * math.sin(2 * math.pi * xf * u),
                -h, h, limit=600)[0]
    val = complex(re_i, im_i)
    for p, e in ctx.primes:
        val *= ball_char_integral(p, e, r, xi)
    ph = float(Fraction(x) * xi) + sum(
        float(frac_p_bruteforce(p, -Fraction(x) * xi)) for p, _ in ctx.primes)
    return float(Fraction(a, b) ** r) * val * cmath.exp(2j * math.pi * ph)


def interior_disjoint(rects) -> bool:
    """Exact interior-disjointness of equal-sized axis-aligned rectangles."""
    if not rects:
        return True
    w_real = rects[0].real_hi - rects[0].real_lo
    w_fib = rects[0].fiber_hi - rects[0].fiber_lo
    for rc in rects:
        if rc.real_hi - rc.real_lo != w_real or rc.fiber_hi - rc.fiber_lo != w_fib:
            raise AssertionError("rectangle sizes are not uniform")
    by_row: dict[Fraction, list[Fraction]] = {}
    for rc in rects:
        by_row.setdefault(rc.fiber_lo, []).append(rc.real_lo)
    fibs = sorted(by_row)
    for lo, nxt in zip(fibs, fibs[1:]):
        if nxt - lo < w_fib and nxt != lo:
            raise AssertionError("fiber rows are not aligned")
    for xs in by_row.values():
        xs.sort()
        for x, y in zip(xs, xs[1:]):
            if y - x < w_real:
                return False
    return True


def random_rational(rng, num_range: int, denominators) -> Fraction:
    return Fraction(rng.randint(-num_range, num_range), rng.choice(denominators))
