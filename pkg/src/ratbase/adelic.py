"""Adelic geometry underlying rational-base digit expansions.

For base alpha = a/b the relevant completions of Q are the real line and Q_p
for each prime p dividing b.  Points live in K = R x prod_{p|b} Q_p; a
rational q embeds diagonally as Phi(q) = (q, q, ...).  The ring Z[alpha] =
Z[1/b] sits in K as a cocompact lattice, with fundamental domain
D_0 = [0,1] x prod Z_p of measure 1 (each Z_p has measure 1).

Everything here is exact: points are Fractions, the p-adic fractional part
lambda_p is computed with a modular inverse, and box/tile geometry reduces to
valuation inequalities and interval arithmetic over Q.

Level-r boxes are translates of D_r = alpha^(-r) D_0: a box with corner c in
alpha^(-r) Z[1/b] is the product of the real interval [c, c + alpha^(-r)]
and, for each p, the ball c + p^(r v_p(b)) Z_p.  The a^r sums
e_1 alpha^(-1) + ... + e_r alpha^(-r) form a complete residue system of
alpha^(-r) Z[1/b] modulo Z[1/b], so each box has a canonical corner and a
well-defined digit e_1; the union of the boxes with first residue d is the
level-r approximation of the self-affine tile attached to digit d.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .numeration import Base

DEFAULT_MAX_ENUM = 10**7


class ScaleExceeded(RuntimeError):
    """Requested enumeration exceeds the RATBASE_MAX_ENUM budget."""


class BoundaryAmbiguous(RuntimeError):
    """A reduced point fell into a boundary-tube box; retry at higher level."""


class NotIntegral(ValueError):
    """Input has a negative valuation at some p | b where integrality is required."""


def max_enum() -> int:
    raw = os.environ.get("RATBASE_MAX_ENUM")
    if raw is None or raw == "":
        return DEFAULT_MAX_ENUM
    return int(raw)


def _check_budget(work: int) -> None:
    cap = max_enum()
    if work > cap:
        raise ScaleExceeded(f"enumeration of {work} objects exceeds cap {cap}")


@dataclass(frozen=True)
class AdeleContext:
    """A base together with its finite places (p, v_p(b)) for p | b."""

    base: Base
    primes: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "primes", self.base.primes_of_b())

    @property
    def alpha(self) -> Fraction:
        return self.base.alpha

    def alpha_pow(self, k: int) -> Fraction:
        return Fraction(self.base.a, self.base.b) ** k


@dataclass(frozen=True, eq=True)
class AdelePoint:
    """A point of R x prod Q_p with rational coordinates.

    padic maps each prime p | b to a rational viewed as an element of Q_p.
    Diagonal points repeat the same rational at every place.
    """

    real: Fraction
    padic: Mapping[int, Fraction]

    @classmethod
    def diagonal(cls, ctx: AdeleContext, q) -> "AdelePoint":
        q = Fraction(q)
        return cls(real=q, padic={p: q for p, _ in ctx.primes})


def _as_point(ctx: AdeleContext, z) -> AdelePoint:
    if isinstance(z, AdelePoint):
        for p, _ in ctx.primes:
            if p not in z.padic:
                raise ValueError(f"point missing component at p = {p}")
        return z
    return AdelePoint.diagonal(ctx, z)


def _vp(p: int, x: Fraction) -> int:
    """p-adic valuation of a nonzero rational."""
    if x == 0:
        raise ValueError("valuation of 0 is undefined")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def frac_p(p: int, x) -> Fraction:
    """p-adic fractional part: the unique t in [0,1) with denominator a power
    of p such that x - t is p-integral.  Zero iff v_p(x) >= 0."""
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    den = x.denominator
    m = 0
    while den % p == 0:
        den //= p
        m += 1
    if m == 0:
        return Fraction(0)
    pm = p**m
    t = (x.numerator * pow(den, -1, pm)) % pm
    return Fraction(t, pm)


def char_exponent(ctx: AdeleContext, z) -> Fraction:
    """Exact exponent sum_p lambda_p(z_p) - z_oo of the adele character."""
    z = _as_point(ctx, z)
    s = sum((frac_p(p, z.padic[p]) for p, _ in ctx.primes), Fraction(0))
    return s - z.real


def character(ctx: AdeleContext, z) -> complex:
    """chi(z) = e(sum_p lambda_p(z_p) - z_oo) on the unit circle."""
    t = char_exponent(ctx, z)
    t -= math.floor(t)
    return complex(math.cos(2 * math.pi * t), math.sin(2 * math.pi * t))


def char_tilde(ctx: AdeleContext, xi) -> complex:
    """chi on the diagonal: trivial exactly on Z[alpha] = Z[1/b]."""
    return character(ctx, AdelePoint.diagonal(ctx, xi))


def in_z_alpha(ctx: AdeleContext, xi) -> bool:
    """Membership in Z[alpha]: the reduced denominator involves only p | b."""
    den = Fraction(xi).denominator
    for p, _ in ctx.primes:
        while den % p == 0:
            den //= p
    return den == 1


def reduce_mod_lattice(ctx: AdeleContext, z) -> tuple[Fraction, AdelePoint]:
    """Translate z by y in Z[alpha] into D_0 = [0,1) x prod Z_p.

    y = sum_p lambda_p(z_p) + floor(z_oo - sum_p lambda_p(z_p)); the residual
    z - Phi(y) has real part in [0,1) and p-integral components.
    """
    z = _as_point(ctx, z)
    lam = sum((frac_p(p, z.padic[p]) for p, _ in ctx.primes), Fraction(0))
    y = lam + math.floor(z.real - lam)
    res = AdelePoint(
        real=z.real - y,
        padic={p: z.padic[p] - y for p, _ in ctx.primes},
    )
    return y, res


# ---------------------------------------------------------------------------
# level-r boxes and their canonical residues


@dataclass(frozen=True)
class BoxIndex:
    """A level-r box named by its corner in alpha^(-r) Z[1/b]."""

    level: int
    corner: Fraction

    def touches(self, other: "BoxIndex", ctx: AdeleContext) -> bool:
        """Adjacency: same level and corners exactly one box width apart."""
        if self.level != other.level:
            return False
        w = ctx.alpha_pow(-self.level)
        return abs(self.corner - other.corner) == w


def _residue_digits(ctx: AdeleContext, q: Fraction, r: int) -> tuple[tuple[int, ...], Fraction]:
    """Canonical form of a level-r corner modulo the lattice.

    Writes q = e_1 alpha^(-1) + ... + e_r alpha^(-r) + y with digits in
    {0..a-1} and y in Z[1/b]; the decomposition is unique because the a^r
    digit sums form a complete residue system mod Z[1/b].
    """
    a, b = ctx.base.a, ctx.base.b
    t = q * ctx.alpha_pow(r)
    den = t.denominator
    rem = den
    for p, _ in ctx.primes:
        while rem % p == 0:
            rem //= p
    if rem != 1:
        raise ValueError(f"{q} is not a level-{r} corner for base {ctx.base}")
    mod = a**r
    x = (t.numerator * pow(den, -1, mod)) % mod
    x = (x * pow(b, r, mod)) % mod  # now x = sum e_k b^k a^(r-k) mod a^r
    digs = []
    for j in range(r, 0, -1):
        aj = a**j
        e = (x * pow(b, -j, a)) % a
        digs.append(e)
        x = (x - e * pow(b, j, aj)) % aj
        x //= a
    digs.reverse()
    e_vec = tuple(digs)
    y = q - corner_of_residues(ctx, e_vec)
    return e_vec, y


def corner_of_residues(ctx: AdeleContext, residues: Sequence[int]) -> Fraction:
    """The canonical corner sum_k e_k alpha^(-k)."""
    a, b = ctx.base.a, ctx.base.b
    # Horner from the deepest digit: value = (e_1 + (e_2 + ...)/alpha)/alpha
    acc = Fraction(0)
    for e in reversed(tuple(residues)):
        acc = (acc + e) * b / a
    return acc


@dataclass(frozen=True)
class BoxLocation:
    """Result of point location: actual corner, canonical residues, translate."""

    level: int
    corner: Fraction
    residues: tuple[int, ...]
    translate: Fraction

    @property
    def digit(self) -> int:
        return self.residues[0]

    @property
    def canonical_corner(self) -> Fraction:
        return self.corner - self.translate


def locate_box(ctx: AdeleContext, z, r: int) -> BoxLocation:
    """The level-r box containing z under the half-open convention.

    The corner c satisfies z_oo - c in [0, alpha^(-r)) and
    v_p(z_p - c) >= r v_p(b) for each p; points on a shared face belong to
    the box on their right.
    """
    z = _as_point(ctx, z)
    ar = ctx.alpha_pow(r)
    scaled = AdelePoint(real=z.real * ar, padic={p: z.padic[p] * ar for p, _ in ctx.primes})
    w, _ = reduce_mod_lattice(ctx, scaled)
    corner = w / ar
    residues, translate = _residue_digits(ctx, corner, r)
    return BoxLocation(level=r, corner=corner, residues=residues, translate=translate)


# ---------------------------------------------------------------------------
# tile approximations


@dataclass(frozen=True)
class TileApprox:
    """Level-r approximation of the tile for one digit: a^(r-1) boxes."""

    digit: int
    level: int
    corners: tuple[Fraction, ...]

    @property
    def measure_denominator_exponent(self) -> int:
        return self.level

    def measure(self, ctx: AdeleContext) -> Fraction:
        return Fraction(len(self.corners), ctx.base.a**self.level)

    def boxes(self) -> tuple[BoxIndex, ...]:
        return tuple(BoxIndex(self.level, c) for c in self.corners)


def tile_corners(ctx: AdeleContext, d: int, r: int) -> tuple[Fraction, ...]:
    """Corners d alpha^(-1) + sum_{k=2..r} e_k alpha^(-k), sorted by value."""
    a = ctx.base.a
    if not 0 <= d < a:
        raise ValueError(f"digit {d} outside alphabet")
    if r < 1:
        raise ValueError("level must be >= 1")
    _check_budget(a ** (r - 1))
    first = d * ctx.alpha_pow(-1)
    corners = [first]
    for k in range(2, r + 1):
        step = ctx.alpha_pow(-k)
        corners = [c + e * step for c in corners for e in range(a)]
    corners.sort()
    return tuple(corners)


def tile_approx(ctx: AdeleContext, d: int, r: int) -> TileApprox:
    return TileApprox(digit=d, level=r, corners=tile_corners(ctx, d, r))


def verify_residue_system(ctx: AdeleContext, r: int) -> bool:
    """Check that the a^r canonical corners are pairwise non-congruent mod
    Z[alpha].

    Congruence classes are compared through the exact normal form: a corner
    sum e_k alpha^(-k) lies in the class of sum e_k b^k a^(r-k) mod a^r, and
    two corners are congruent iff those integers agree (their difference is
    in Z[1/b] iff a^r divides it).
    """
    a, b = ctx.base.a, ctx.base.b
    _check_budget(a**r)
    mod = a**r
    coeff = [pow(b, k, mod) * pow(a, r - k, mod) % mod for k in range(r + 1)]
    seen = bytearray(mod)
    count = 0
    stack = [(0, 0)]  # (depth, partial numerator mod a^r)
    while stack:
        depth, num = stack.pop()
        if depth == r:
            if seen[num]:
                return False
            seen[num] = 1
            count += 1
            continue
        k = depth + 1
        for e in range(a):
            stack.append((k, (num + e * coeff[k]) % mod))
    return count == mod


# ---------------------------------------------------------------------------
# membership points and digit classification


def membership_point(ctx: AdeleContext, n: int, k: int) -> Fraction:
    """The rational b*n / alpha^(k+1) whose reduced position encodes eps_k(n)."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    a, b = ctx.base.a, ctx.base.b
    return Fraction(n * b ** (k + 2), a ** (k + 1))


def classify_digit(ctx: AdeleContext, n: int, k: int, r: int,
                   tube: "BoundaryTube | None" = None) -> int:
    """Digit eps_k(n) read off geometrically from the level-r box location.

    With a boundary tube supplied, a hit inside the tube for the located
    digit raises BoundaryAmbiguous: the level-r classification cannot be
    trusted there and the caller should raise r.
    """
    q = membership_point(ctx, n, k)
    loc = locate_box(ctx, q, r)
    if tube is not None and loc.digit == tube.digit and loc.canonical_corner in tube.members:
        raise BoundaryAmbiguous(
            f"point for (n={n}, k={k}) lies in the level-{r} boundary tube")
    return loc.digit


# ---------------------------------------------------------------------------
# boundary tubes


@dataclass(frozen=True)
class BoundaryTube:
    """Conservative cover of the level-r boxes where geometric digit reading
    may disagree with the true digit, for one digit class."""

    digit: int
    level: int
    resolution: int
    members: frozenset[Fraction]

    def boxes(self) -> tuple[BoxIndex, ...]:
        return tuple(BoxIndex(self.level, c) for c in sorted(self.members))

    def __contains__(self, corner: Fraction) -> bool:
        return corner in self.members


def _tail_width(base: Base) -> Fraction:
    """Real extent of the closure of all digit tails: (a-1) b / (a-b)."""
    return Fraction((base.a - 1) * base.b, base.a - base.b)


def _box_certificates(ctx: AdeleContext, e_vec: tuple[int, ...], r: int,
                      rho: int, W: Fraction, right_digit: int) -> set[int]:
    """Digits d for which the box is certified safe at refinement level rho.

    Safe means: for every point z of the closed box, the smoothed level-r
    indicator of digit d agrees with the true digit test.  Two certificates:

    * fully in: the box and its right neighbour carry digit d at level r and
      no other digit's level-rho box meets the box once each rho-box is
      fattened rightward by the tail overhang (W - 1) alpha^(-rho); then the
      tile cover forces every point of the box into digit class d.
    * fully out: neither the box nor its right neighbour carries d at level
      r, and no level-rho box of digit d meets the fattened range, so the
      closed box avoids digit class d entirely.
    """
    a, b = ctx.base.a, ctx.base.b
    corner = corner_of_residues(ctx, e_vec)
    d_self = e_vec[0]
    m = rho - r
    u = Fraction(b**r, a**rho)  # spacing of rho-corners sharing the r-ball
    s_min = -math.floor(W * b**m)
    s_max = a**m
    present: set[int] = set()
    for s in range(s_min, s_max + 1):
        q = corner + s * u
        present.add(_residue_digits(ctx, q, rho)[0][0])
    safe: set[int] = set()
    for d in range(a):
        if d == d_self:
            if right_digit == d and present <= {d}:
                safe.add(d)
        elif right_digit != d and d not in present:
            safe.add(d)
    return safe


def boundary_tubes(ctx: AdeleContext, r: int, resolution: int) -> dict[int, BoundaryTube]:
    """Boundary tubes for every digit at level r, refined up to `resolution`.

    Boxes leave the tube at the first refinement level (from r+1 up to
    `resolution`) that certifies them safe, so member sets only shrink as the
    resolution grows.  The result is an over-approximation of the boundary
    region; only its emptiness claims are load-bearing.
    """
    a, b = ctx.base.a, ctx.base.b
    if resolution <= r:
        raise ValueError("resolution must exceed the tube level")
    W = _tail_width(ctx.base)
    per_rho = sum(a ** (rho - r) + int(W * b ** (rho - r)) + 2
                  for rho in range(r + 1, resolution + 1))
    _check_budget(a**r * max(per_rho, 1))
    width = ctx.alpha_pow(-r)
    members: dict[int, set[Fraction]] = {d: set() for d in range(a)}
    stack = [()]
    boxes: list[tuple[int, ...]] = []
    for _ in range(r):
        boxes = []
        for prefix in stack:
            for e in range(a):
                boxes.append(prefix + (e,))
        stack = boxes
    for e_vec in stack:
        corner = corner_of_residues(ctx, e_vec)
        right_digit = _residue_digits(ctx, corner + width, r)[0][0]
        certified: set[int] = set()
        for rho in range(r + 1, resolution + 1):
            certified |= _box_certificates(ctx, e_vec, r, rho, W, right_digit)
            if len(certified) == a:
                break
        for d in range(a):
            if d not in certified:
                members[d].add(corner)
    return {
        d: BoundaryTube(digit=d, level=r, resolution=resolution,
                        members=frozenset(members[d]))
        for d in range(a)
    }


def boundary_tube(ctx: AdeleContext, d: int, r: int, resolution: int) -> BoundaryTube:
    if not 0 <= d < ctx.base.a:
        raise ValueError(f"digit {d} outside alphabet")
    return boundary_tubes(ctx, r, resolution)[d]


def count_boundary_hits(ctx: AdeleContext, k: int, r: int, N: int,
                        tube: BoundaryTube) -> int:
    """How many of the reduced points for n <= N land in tube boxes."""
    hits = 0
    for n in range(1, N + 1):
        loc = locate_box(ctx, membership_point(ctx, n, k), r)
        if loc.canonical_corner in tube.members:
            hits += 1
    return hits


# ---------------------------------------------------------------------------
# fiber coordinates for rendering

_SCHEMES = ("alpha-digits", "p-adic-digits")


def _crt_digit(ctx: AdeleContext, u: Fraction) -> int:
    """The residue of a p-integral rational modulo b, via CRT over p | b."""
    residue, modulus = 0, 1
    for p, e in ctx.primes:
        pe = p**e
        rp = (u.numerator * pow(u.denominator, -1, pe)) % pe
        inc = ((rp - residue) * pow(modulus, -1, pe)) % pe
        residue += modulus * inc
        modulus *= pe
    return residue


def _fiber_digits(ctx: AdeleContext, x: Fraction, depth: int,
                  scheme: str) -> tuple[int, list[int]]:
    """Start index k and digits d_k..d_depth of the fiber expansion of x.

    alpha-digits: x = sum_j d_j alpha^(-j) with d_j in {0..b-1}, the greedy
    expansion along the chain of index-b subgroups alpha^(-j) prod Z_p.
    p-adic-digits: base-b digits of x in prod Z_p via residues mod b^j.
    k < 0 occurs only when x has a pole at some p | b.
    """
    a, b = ctx.base.a, ctx.base.b
    if x == 0:
        return 0, [0] * (depth + 1)
    k = 0
    for p, e in ctx.primes:
        v = _vp(p, x)
        k = min(k, v // e if v < 0 else 0)
    if scheme == "alpha-digits":
        u = x * ctx.alpha_pow(k)
    else:
        u = x * Fraction(1, b) ** k
    digits = []
    for _ in range(k, depth + 1):
        d = _crt_digit(ctx, u)
        digits.append(d)
        if scheme == "alpha-digits":
            u = (u - d) * a / b
        else:
            u = (u - d) / b
    return k, digits


def _fiber_value(ctx: AdeleContext, x: Fraction, depth: int, scheme: str) -> Fraction:
    k, digits = _fiber_digits(ctx, x, depth, scheme)
    b = Fraction(ctx.base.b)  # Fraction powers: k < 0 needs positive exponents
    if scheme == "alpha-digits":
        return sum(d * b ** (-j) for j, d in enumerate(digits, start=k))
    return sum(d * b ** (-j - 1) for j, d in enumerate(digits, start=k))


def fiber_coordinate(ctx: AdeleContext, x, depth: int = 32,
                     scheme: str = "alpha-digits") -> Fraction:
    """Rendering coordinate of a p-integral rational in the fiber prod Z_p.

    Under alpha-digits, x = sum_{j>=0} d_j alpha^(-j) with d_j in {0..b-1}
    is drawn at sum d_j b^(-j) (truncated at `depth`); inputs divisible by b
    land in [0, 1].  Under p-adic-digits the base-b expansion of x is read
    as the b-ary real 0.d_0 d_1 ... in [0, 1).
    """
    if scheme not in _SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    x = Fraction(x)
    for p, _ in ctx.primes:
        if x != 0 and _vp(p, x) < 0:
            raise NotIntegral(f"{x} is not integral at p = {p}")
    return _fiber_value(ctx, x, depth, scheme)


def fiber_interval(ctx: AdeleContext, c: Fraction, r: int,
                   scheme: str = "alpha-digits") -> tuple[Fraction, Fraction]:
    """Image of the p-adic ball c + alpha^(-r) prod Z_p on the fiber axis.

    Balls at the same level map to aligned intervals with disjoint
    interiors: width b^(1-r) for alpha-digits, b^(-r) for p-adic-digits.
    """
    if scheme not in _SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    c = Fraction(c)
    b = ctx.base.b
    lo = _fiber_value(ctx, c, r - 1, scheme)
    width = Fraction(1, b ** (r - 1)) if scheme == "alpha-digits" else Fraction(1, b**r)
    return lo, lo + width


# ---------------------------------------------------------------------------
# cover census for verification


def cover_census(ctx: AdeleContext, z, r: int) -> tuple[int, bool]:
    """Closed-box containment count for a point, with a face flag.

    Locates the box by the half-open rule, then independently validates the
    containment inequalities.  Returns (count, flagged): count is the number
    of closed level-r boxes containing z (2 exactly on a shared face).
    """
    z = _as_point(ctx, z)
    loc = locate_box(ctx, z, r)
    width = ctx.alpha_pow(-r)
    off = z.real - loc.corner
    if not 0 <= off < width:
        raise AssertionError("located box fails the real containment check")
    for p, e in ctx.primes:
        diff = z.padic[p] - loc.corner
        if diff != 0 and _vp(p, diff) < r * e:
            raise AssertionError("located box fails the p-adic containment check")
    on_face = off == 0
    return (2 if on_face else 1), on_face
