"""Fourier analysis of smoothed box indicators on the adelic quotient.

g_{x,r} is the Urysohn-style smoothing of the indicator of the level-r box
at corner x: the box indicator averaged over a level-r box of shifts.  Its
character coefficients against e(xi .) vanish off (1/b^r) Z and otherwise
have the closed form

    c_{x,r,xi} = alpha^r b^(-r) chi~(-x xi) |1 - e(alpha^(-r) xi)|^2 / (4 pi^2 xi^2)

with c_{x,r,0} = a^(-r).  Summing over the a^(r-1) corners of one digit's
tile approximation gives the coefficients c'_{d,r,xi} of f_{d,r}; the prefix
sum factorizes into per-level geometric sums, which is how the exact zeros
on (a Z)/b^r are detected.

All frequency bookkeeping is exact: character exponents are Fractions, and a
coefficient is only ever evaluated to floating point at the end.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .adelic import (AdeleContext, ScaleExceeded, _check_budget, char_exponent,
                     membership_point, tile_corners)


@dataclass(frozen=True)
class FourierCoefficient:
    """One coefficient, kept in exact pieces until evaluated.

    value = scale * |1 - e(osc)|^2 / pi^2 * e(phase) * factor_sum, except
    that `exact` short-circuits everything when the value is known to be a
    rational number (the zero mode, and the exact vanishing locus).
    """

    frequency: Fraction
    scale: Fraction
    osc: Fraction | None
    phase: Fraction
    factor_sum: complex = 1.0 + 0.0j
    exact: Fraction | None = None

    @property
    def value(self) -> complex:
        if self.exact is not None:
            return complex(self.exact)
        t = self.osc - math.floor(self.osc)
        amp = 2.0 - 2.0 * math.cos(2.0 * math.pi * float(t))
        u = self.phase - math.floor(self.phase)
        unit = cmath.exp(2j * math.pi * float(u))
        return float(self.scale) * amp / math.pi**2 * unit * self.factor_sum

    @property
    def magnitude(self) -> float:
        return abs(self.value)


def _on_support(ctx: AdeleContext, xi: Fraction, r: int) -> bool:
    return (xi * ctx.base.b**r).denominator == 1


def coeff_g(ctx: AdeleContext, x, r: int, xi) -> FourierCoefficient:
    """Coefficient of the single-box smoothing at corner x.

    Exact a^(-r) at xi = 0; zero off (1/b^r) Z; otherwise the closed form
    above with phase chi~(-x xi).
    """
    x, xi = Fraction(x), Fraction(xi)
    a, b = ctx.base.a, ctx.base.b
    if xi == 0:
        return FourierCoefficient(xi, Fraction(0), None, Fraction(0),
                                  exact=Fraction(1, a**r))
    if not _on_support(ctx, xi, r):
        return FourierCoefficient(xi, Fraction(0), None, Fraction(0),
                                  exact=Fraction(0))
    osc = ctx.alpha_pow(-r) * xi
    if osc.denominator == 1:
        return FourierCoefficient(xi, Fraction(0), osc, Fraction(0),
                                  exact=Fraction(0))
    scale = Fraction(a**r, b ** (2 * r)) / (4 * xi * xi)
    phase = char_exponent(ctx, -x * xi)
    return FourierCoefficient(xi, scale, osc, phase)


def coeff_f(ctx: AdeleContext, d: int, r: int, xi) -> FourierCoefficient:
    """Coefficient of the digit-d tile smoothing f_{d,r}.

    The sum over tile corners factorizes: the common corner d alpha^(-1)
    contributes a phase, and each deeper level k contributes the geometric
    sum over e in {0..a-1} of e(-e t_k) with t_k the character exponent of
    alpha^(-k) xi.  A factor vanishes exactly when e(-t_k) is a nontrivial
    a-th root of unity, which happens precisely on (a Z)/b^r away from 0.
    """
    xi = Fraction(xi)
    a, b = ctx.base.a, ctx.base.b
    if not 0 <= d < a:
        raise ValueError(f"digit {d} outside alphabet")
    if xi == 0:
        return FourierCoefficient(xi, Fraction(0), None, Fraction(0),
                                  exact=Fraction(1, a))
    if not _on_support(ctx, xi, r):
        return FourierCoefficient(xi, Fraction(0), None, Fraction(0),
                                  exact=Fraction(0))
    osc = ctx.alpha_pow(-r) * xi
    if osc.denominator == 1:
        return FourierCoefficient(xi, Fraction(0), osc, Fraction(0),
                                  exact=Fraction(0))
    factor = complex(1.0)
    for k in range(2, r + 1):
        t_k = char_exponent(ctx, ctx.alpha_pow(-k) * xi)
        t_k -= math.floor(t_k)
        if t_k == 0:
            factor *= a
            continue
        if (a * t_k).denominator == 1:
            # nontrivial a-th root of unity: the geometric sum is exactly 0
            return FourierCoefficient(xi, Fraction(0), osc, Fraction(0),
                                      exact=Fraction(0))
        s = sum(cmath.exp(-2j * math.pi * float((e * t_k) % 1)) for e in range(a))
        factor *= s
    scale = Fraction(a**r, b ** (2 * r)) / (4 * xi * xi)
    phase = char_exponent(ctx, -Fraction(d * b, a) * xi)
    return FourierCoefficient(xi, scale, osc, phase, factor_sum=factor)


def coeff_f_sum(ctx: AdeleContext, d: int, r: int, xi) -> complex:
    """Direct summation of coeff_g over the tile corners (small-r route)."""
    return sum(coeff_g(ctx, x, r, xi).value for x in tile_corners(ctx, d, r))


def coefficient_table(ctx: AdeleContext, digits: Sequence[int], r: int,
                      max_m: int) -> str:
    """CSV of c'_{d,r,m/b^r} for m = 0..max_m, one row per (digit, m)."""
    lines = ["xi_numerator,r,digit,re,im,abs"]
    br = ctx.base.b**r
    for d in digits:
        for m in range(0, max_m + 1):
            v = coeff_f(ctx, d, r, Fraction(m, br)).value
            lines.append(f"{m},{r},{d},{v.real!r},{v.imag!r},{abs(v)!r}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# direct geometric evaluation


def _padic_match(ctx: AdeleContext, delta: Fraction, r: int) -> Fraction:
    """Some y0 in Z[1/b] with v_p(y0 - delta) >= r v_p(b) for every p | b."""
    den = delta.denominator
    den_b = 1
    for p, e in ctx.primes:
        while den % p == 0:
            den //= p
            den_b *= p
    den_coprime = den  # b-free part of the denominator
    modulus = ctx.base.b**r * den_b
    if modulus == 1:
        return Fraction(0)
    w = (delta.numerator * pow(den_coprime, -1, modulus)) % modulus
    return Fraction(w, den_b)


def eval_urysohn_direct(ctx: AdeleContext, d: int, r: int, z) -> Fraction:
    """f_{d,r}(Phi(z)) as an exact rational, by box-overlap geometry.

    The shifted window Phi(z) + D_r meets a lattice translate of a tile box
    only if the p-adic balls coincide, which pins the translate to a coset
    y0 + b^r Z; within that coset at most one translate can overlap the real
    window of width 2 alpha^(-r) <= 2 < b^r (two when b = 1, adjacent).
    """
    z = Fraction(z)
    a, b = ctx.base.a, ctx.base.b
    _check_budget(a ** (r - 1))
    h = ctx.alpha_pow(-r)
    step = b**r
    overlap_total = Fraction(0)
    for x_c in tile_corners(ctx, d, r):
        delta = z - x_c
        y0 = _padic_match(ctx, delta, r)
        t = (delta - y0) / step
        k0 = math.floor(t)
        for k in (k0, k0 + 1):
            y = y0 + k * step
            ov = h - abs(delta - y)
            if ov > 0:
                overlap_total += ov
    return Fraction(a**r, b**r) * overlap_total


# ---------------------------------------------------------------------------
# truncated series evaluation


@dataclass(frozen=True)
class SeriesTruncation:
    """Report of a symmetric truncation at |xi b^r| <= cutoff."""

    cutoff: int
    terms: int
    tail_bound: float


@dataclass(frozen=True)
class SeriesEval:
    value: float
    imag: float
    truncation: SeriesTruncation


def series_tail_bound(ctx: AdeleContext, r: int, cutoff: int) -> float:
    """Bound on the discarded mass: sum_{|m| > cutoff} |c'_{d,r,m/b^r}|.

    Each |c_{x,r,xi}| is at most a^r / (pi^2 m^2) since |1-e(u)| <= 2, there
    are a^(r-1) corners, and sum_{m > X} m^(-2) <= 1/floor(X).
    """
    a = ctx.base.a
    return 2.0 * a ** (2 * r - 1) / (math.pi**2 * cutoff)


@lru_cache(maxsize=64)
def _series_coeffs(ctx: AdeleContext, d: int, r: int, cutoff: int) -> tuple[complex, ...]:
    br = ctx.base.b**r
    return tuple(coeff_f(ctx, d, r, Fraction(m, br)).value
                 for m in range(1, cutoff + 1))


def eval_urysohn_series(ctx: AdeleContext, d: int, r: int, z,
                        cutoff: int) -> SeriesEval:
    """Symmetric partial character sum for f_{d,r}(Phi(z)).

    Terms pair m with -m, whose contributions are complex conjugates, so the
    partial sum is real by construction; the truncation error is bounded by
    series_tail_bound.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be positive")
    z = Fraction(z)
    a, b = ctx.base.a, ctx.base.b
    coeffs = _series_coeffs(ctx, d, r, cutoff)
    theta = char_exponent(ctx, z * Fraction(1, b**r))
    theta -= math.floor(theta)
    P, Q = theta.numerator, theta.denominator
    total = 1.0 / a
    for m, c in enumerate(coeffs, start=1):
        if c == 0:
            continue
        ang = 2.0 * math.pi * ((m * P) % Q) / Q
        w = complex(math.cos(ang), math.sin(ang))
        total += 2.0 * (c * w).real
    trunc = SeriesTruncation(cutoff=cutoff, terms=2 * len(coeffs) + 1,
                             tail_bound=series_tail_bound(ctx, r, cutoff))
    return SeriesEval(value=total, imag=0.0, truncation=trunc)


# ---------------------------------------------------------------------------
# pattern-count estimator


def urysohn_pattern_estimate(ctx: AdeleContext, word: Sequence[int], k: int,
                             r: int, N: int) -> Fraction:
    """Estimate of the padded count S'_{k,w}(N) by products of smoothings.

    Sums over n <= N the product over window offsets j of
    f_{w_j, r}(Phi(b n / alpha^(k+j+1))), all in exact rational arithmetic.
    The deviation from S'_{k,w}(N) is at most the total number of boundary
    tube hits along the window.
    """
    digits_msf = tuple(word)
    w_lsf = tuple(reversed(digits_msf))
    a = ctx.base.a
    for d in w_lsf:
        if not 0 <= d < a:
            raise ValueError(f"digit {d} outside alphabet")
    _check_budget(max(N, 1) * len(w_lsf) * a ** (r - 1))
    total = Fraction(0)
    for n in range(1, N + 1):
        prod = Fraction(1)
        for j, d in enumerate(w_lsf):
            zz = membership_point(ctx, n, k + j)
            prod *= eval_urysohn_direct(ctx, d, r, zz)
            if prod == 0:
                break
        total += prod
    return total
