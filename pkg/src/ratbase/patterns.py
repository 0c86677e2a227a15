"""Digit-pattern statistics and the concatenation stream for a rational base.

S_{k,w}(N) counts n <= N whose word contains pattern w ending at digit
position k (position 0 is least significant) with the window fully inside
the word; the primed variant S'_{k,w}(N) matches against zero-padded digits
eps_k(n) = 0 for k >= length(n).  Summing over k gives S_w(N), which grows
like N * a^(-|w|) * log_alpha(N).

Counting re-encodes every integer independently.  The heavy path runs the
division recurrence on int64 numpy blocks, one digit level at a time, so a
range scan costs O(log N) vectorized passes; block counts add, which is what
makes range partitioning (and the --threads flag) sound.

The stream z_1 z_2 z_3 ... concatenates the words of 1, 2, 3, ... in print
order.  gamma_w(x) counts positions n <= x with (z_{n+|w|-1}, ..., z_n) = w,
the window convention under which the stream's digit statistics mirror the
per-word counts.
"""

from __future__ import annotations

import json
import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .adelic import _check_budget
from .numeration import Base, encode, format_digits, length, parse_digits

_CHUNK = 1 << 19


@dataclass(frozen=True)
class Pattern:
    """A digit window over {0..a-1}, most significant first; leading zeros allowed."""

    base: Base
    word: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "word", tuple(self.word))
        if not self.word:
            raise ValueError("pattern must be nonempty")
        for d in self.word:
            if not 0 <= d < self.base.a:
                raise ValueError(f"digit {d} outside alphabet of base {self.base}")

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return format_digits(self.base, self.word)

    @classmethod
    def parse(cls, base: Base, text: str) -> "Pattern":
        return cls(base, parse_digits(base, text))

    @property
    def lsf(self) -> tuple[int, ...]:
        """Digits reindexed least-significant-first (w_0, w_1, ...)."""
        return tuple(reversed(self.word))


@dataclass(frozen=True)
class PatternStats:
    """Per-position counts for one pattern up to a horizon N."""

    pattern: Pattern
    N: int
    per_position: dict[int, int]
    padded_per_position: dict[int, int]
    total: int


def _require_kernel_range(base: Base, N: int) -> None:
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N >= (1 << 62) // base.b:
        raise ValueError(f"N = {N} too large for the int64 counting kernel")
    _check_budget(N)


def _chunk_window_counts(a: int, b: int, ns: np.ndarray, w_lsf: tuple[int, ...],
                         k_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Window matches at positions 0..k_max over one block of integers.

    Returns (exact, padded) int64 arrays: exact[k] additionally requires the
    top window digit to be a real digit, i.e. length(n) >= k + |w|.
    """
    m = len(w_lsf)
    cur = ns.astype(np.int64, copy=True)
    window: deque[np.ndarray] = deque(maxlen=m)
    top_alive = None
    exact = np.zeros(k_max + 1, dtype=np.int64)
    padded = np.zeros(k_max + 1, dtype=np.int64)
    for j in range(k_max + m):
        live = cur > 0
        bn = b * cur
        window.append(bn % a)
        cur = bn // a
        top_alive = live
        if len(window) == m:
            k = j - m + 1
            mask = window[0] == w_lsf[0]
            for i in range(1, m):
                mask = mask & (window[i] == w_lsf[i])
            padded[k] = np.count_nonzero(mask)
            exact[k] = np.count_nonzero(mask & top_alive)
    return exact, padded


def _scan_window_counts(base: Base, w_lsf: tuple[int, ...], N: int, k_max: int,
                        workers: int = 1) -> tuple[np.ndarray, np.ndarray]:
    _require_kernel_range(base, N)
    a, b = base.a, base.b
    exact = np.zeros(k_max + 1, dtype=np.int64)
    padded = np.zeros(k_max + 1, dtype=np.int64)
    if N == 0:
        return exact, padded
    ranges = [(lo, min(lo + _CHUNK, N + 1)) for lo in range(1, N + 1, _CHUNK)]

    def work(rg: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
        ns = np.arange(rg[0], rg[1], dtype=np.int64)
        return _chunk_window_counts(a, b, ns, w_lsf, k_max)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(work, ranges))
    else:
        parts = [work(rg) for rg in ranges]
    for e, p in parts:
        exact += e
        padded += p
    return exact, padded


def count_pattern_at(base: Base, pattern: Pattern, k: int, N: int,
                     padded: bool = False, workers: int = 1) -> int:
    """S_{k,w}(N), or S'_{k,w}(N) with padded=True."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    exact, pad = _scan_window_counts(base, pattern.lsf, N, k, workers)
    return int(pad[k] if padded else exact[k])


def count_pattern(base: Base, pattern: Pattern, N: int,
                  workers: int = 1) -> PatternStats:
    """All per-position counts for w up to N, plus the total S_w(N).

    Exact positions run over 0 <= k <= length(N) - |w|; padded positions are
    reported for 0 <= k <= length(N) (count_pattern_at serves larger k).
    """
    m = len(pattern)
    ell = length(base, N)
    k_max = ell
    exact, padded = _scan_window_counts(base, pattern.lsf, N, k_max, workers)
    per_position = {k: int(exact[k]) for k in range(0, max(ell - m, -1) + 1)}
    padded_per_position = {k: int(padded[k]) for k in range(0, ell + 1)}
    return PatternStats(
        pattern=pattern,
        N=N,
        per_position=per_position,
        padded_per_position=padded_per_position,
        total=sum(per_position.values()),
    )


def summatory_sod(base: Base, N: int, workers: int = 1) -> int:
    """Sum of s(n) for 1 <= n <= N; equals sum_d d * S_{(d)}(N)."""
    _require_kernel_range(base, N)
    a, b = base.a, base.b
    if N == 0:
        return 0

    def work(rg: tuple[int, int]) -> int:
        cur = np.arange(rg[0], rg[1], dtype=np.int64)
        tot = 0
        while cur.any():
            bn = b * cur
            tot += int((bn % a).sum(dtype=np.int64))
            cur = bn // a
        return tot

    ranges = [(lo, min(lo + _CHUNK, N + 1)) for lo in range(1, N + 1, _CHUNK)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return sum(ex.map(work, ranges))
    return sum(work(rg) for rg in ranges)


def champernowne_stream(base: Base) -> Iterator[int]:
    """Lazy digit stream z_1, z_2, ... concatenating encode(1), encode(2), ..."""
    n = 1
    while True:
        yield from encode(base, n).digits
        n += 1


def champernowne_digits(base: Base, m: int) -> list[int]:
    """First m digits of the stream."""
    out = []
    stream = champernowne_stream(base)
    for _ in range(m):
        out.append(next(stream))
    return out


def champernowne_prefix_array(base: Base, m: int) -> np.ndarray:
    """First m stream digits as an int8 array (vectorized construction)."""
    a, b = base.a, base.b
    out = np.empty(m, dtype=np.int8)
    filled = 0
    n0 = 1
    block = 1 << 17
    while filled < m:
        ns = np.arange(n0, n0 + block, dtype=np.int64)
        n0 += block
        levels: list[np.ndarray] = []
        lens = np.zeros(len(ns), dtype=np.int64)
        cur = ns.copy()
        while True:
            live = cur > 0
            if not live.any():
                break
            lens += live
            bn = b * cur
            levels.append((bn % a).astype(np.int8))
            cur = bn // a
        total = int(lens.sum())
        starts = np.concatenate(([0], np.cumsum(lens)[:-1]))
        buf = np.empty(total, dtype=np.int8)
        for j, dig in enumerate(levels):
            sel = lens > j
            buf[starts[sel] + (lens[sel] - 1 - j)] = dig[sel]
        take = min(total, m - filled)
        out[filled:filled + take] = buf[:take]
        filled += take
    return out


def champernowne_freq(base: Base, pattern: Pattern, x: int) -> int:
    """gamma_w(x): window matches (z_{n+|w|-1}, ..., z_n) = w for n <= x."""
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0:
        return 0
    if x > 100_000:
        counts = champernowne_freq_bulk(base, [pattern], [x])
        return counts[pattern.word][0]
    t = pattern.lsf  # arrival order: z_n matches w_0 first
    m = len(t)
    win: deque[int] = deque(maxlen=m)
    stream = champernowne_stream(base)
    count = 0
    for i in range(1, x + m):
        win.append(next(stream))
        if i >= m and i - m + 1 <= x and tuple(win) == t:
            count += 1
    return count


def champernowne_freq_bulk(base: Base, patterns: Sequence[Pattern],
                           checkpoints: Sequence[int]) -> dict[tuple[int, ...], list[int]]:
    """gamma_w at several x for several w from one materialized prefix."""
    xs = sorted(checkpoints)
    m_max = max(len(p) for p in patterns)
    arr = champernowne_prefix_array(base, xs[-1] + m_max - 1) if xs else np.empty(0, np.int8)
    out: dict[tuple[int, ...], list[int]] = {}
    for p in patterns:
        t = p.lsf
        m = len(t)
        n_count = xs[-1]
        mask = np.ones(n_count, dtype=bool)
        for j, tj in enumerate(t):
            mask &= arr[j:j + n_count] == tj
        cum = np.cumsum(mask)
        out[p.word] = [int(cum[x - 1]) for x in xs]
    return out


@dataclass(frozen=True)
class ReportRow:
    N: int
    s_w: int
    main_term: float
    residual: float
    residual_norm: float


def asymptotic_report(base: Base, pattern: Pattern, horizons: Sequence[int],
                      workers: int = 1) -> list[ReportRow]:
    """S_w against its main term N a^(-|w|) log_alpha N at several horizons.

    residual_norm divides the residual by N log log N (natural logs), so each
    horizon must satisfy log log N > 0, i.e. N >= 16.
    """
    rows = []
    log_alpha = math.log(base.a) - math.log(base.b)
    for N in horizons:
        if N < 16:
            raise ValueError("horizons must be >= 16 so that log log N > 0")
        s_w = count_pattern(base, pattern, N, workers=workers).total
        main = N * base.a ** (-len(pattern)) * math.log(N) / log_alpha
        residual = s_w - main
        rows.append(ReportRow(
            N=N,
            s_w=s_w,
            main_term=main,
            residual=residual,
            residual_norm=residual / (N * math.log(math.log(N))),
        ))
    return rows


def report_csv(rows: Iterable[ReportRow]) -> str:
    lines = ["N,S_w,main_term,residual,residual_norm"]
    for r in rows:
        lines.append(f"{r.N},{r.s_w},{r.main_term!r},{r.residual!r},{r.residual_norm!r}")
    return "\n".join(lines) + "\n"


def report_json(rows: Iterable[ReportRow]) -> str:
    recs = [
        {"N": r.N, "S_w": r.s_w, "main_term": r.main_term,
         "residual": r.residual, "residual_norm": r.residual_norm}
        for r in rows
    ]
    return json.dumps(recs, indent=2) + "\n"
