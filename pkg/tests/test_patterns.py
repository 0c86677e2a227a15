"""Pattern counting: frozen values, kernel-vs-scan agreement, stream laws."""
import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ratbase import (
    Base,
    Pattern,
    ScaleExceeded,
    asymptotic_report,
    champernowne_digits,
    champernowne_freq,
    champernowne_freq_bulk,
    champernowne_prefix_array,
    champernowne_stream,
    count_pattern,
    count_pattern_at,
    report_csv,
    report_json,
    summatory_sod,
)
from helpers import BASES, scan_count, stream_prefix, stream_scan, word_digits

KERNEL_BASES = [Base(3, 2), Base(5, 2), Base(10, 1)]


class TestPatternType:
    def test_lsf_reverses_word(self, b32):
        p = Pattern(b32, (2, 1, 0))
        assert p.word == (2, 1, 0)
        assert p.lsf == (0, 1, 2)
        assert len(p) == 3

    def test_rejects_bad_digits(self, b32):
        with pytest.raises(ValueError):
            Pattern(b32, (3,))
        with pytest.raises(ValueError):
            Pattern(b32, ())


class TestFrozenCounts:
    def test_single_digit_at_position_zero(self, b32):
        assert count_pattern_at(b32, Pattern(b32, (2,)), 0, 10) == 4
        assert count_pattern_at(b32, Pattern(b32, (0,)), 0, 1) == 0

    def test_padded_far_position(self, b32):
        assert count_pattern_at(b32, Pattern(b32, (0,)), 9, 10, padded=True) == 10

    def test_totals(self, b32):
        assert count_pattern(b32, Pattern(b32, (2,)), 10).total == 17
        assert count_pattern(b32, Pattern(b32, (2, 1, 2, 0, 2)), 10).total == 1

    def test_summatory_sod(self, b32):
        assert summatory_sod(b32, 10) == 46
        assert summatory_sod(b32, 1) == 2


class TestKernelAgainstScan:
    @pytest.mark.parametrize("base", KERNEL_BASES, ids=lambda b: f"{b.a}_{b.b}")
    def test_fixed_cases(self, base):
        rng = random.Random(17)
        for _ in range(25):
            m = rng.randint(1, 3)
            w = tuple(rng.randrange(base.a) for _ in range(m))
            if all(x == 0 for x in w):
                w = (1,) + w[1:]
            k = rng.randint(0, 6)
            N = rng.choice([50, 400])
            pat = Pattern(base, w)
            assert count_pattern_at(base, pat, k, N) == scan_count(base, w, k, N)
            assert count_pattern_at(base, pat, k, N, padded=True) == \
                scan_count(base, w, k, N, padded=True)

    @given(st.sampled_from(KERNEL_BASES), st.integers(0, 5), st.integers(1, 300),
           st.data())
    def test_property(self, base, k, N, data):
        m = data.draw(st.integers(1, 3))
        w = tuple(data.draw(st.integers(0, base.a - 1)) for _ in range(m))
        if all(x == 0 for x in w):
            w = (1,) + w[1:]
        pat = Pattern(base, w)
        assert count_pattern_at(base, pat, k, N) == scan_count(base, w, k, N)

    def test_workers_agree(self, b32):
        pat = Pattern(b32, (2, 1))
        assert count_pattern(b32, pat, 20000, workers=3).total == \
            count_pattern(b32, pat, 20000, workers=1).total

    def test_scale_guard(self, b32, monkeypatch):
        monkeypatch.setenv("RATBASE_MAX_ENUM", "1000")
        with pytest.raises(ScaleExceeded):
            count_pattern(b32, Pattern(b32, (2,)), 5000)


class TestCountingIdentities:
    def test_padded_single_digits_tile_every_position(self, b32):
        for k in (0, 3, 9):
            total = sum(
                count_pattern_at(b32, Pattern(b32, (d,)), k, 200, padded=True)
                for d in range(3))
            assert total == 200

    def test_exact_single_digits_tile_long_numbers(self, b32):
        from ratbase import length
        for k in (0, 2, 5):
            total = sum(
                count_pattern_at(b32, Pattern(b32, (d,)), k, 200)
                for d in range(3))
            assert total == sum(1 for n in range(1, 201) if length(b32, n) >= k + 1)

    def test_stats_structure(self, b32):
        stats = count_pattern(b32, Pattern(b32, (2, 1)), 500)
        assert stats.total == sum(stats.per_position.values())
        for k, v in stats.per_position.items():
            assert v <= stats.padded_per_position[k]

    def test_sod_equals_weighted_digit_counts(self):
        for base in KERNEL_BASES:
            lhs = summatory_sod(base, 3000)
            rhs = sum(
                d * count_pattern(base, Pattern(base, (d,)), 3000).total
                for d in range(1, base.a))
            assert lhs == rhs

    def test_monotone_in_horizon(self, b32):
        pat = Pattern(b32, (2, 1))
        vals = [count_pattern(b32, pat, N).total for N in (50, 100, 200, 400)]
        assert vals == sorted(vals)


class TestChampernowneStream:
    def test_prefix_is_word_concatenation(self, b32):
        first30 = champernowne_digits(b32, 30)
        concat = []
        for n in range(1, 11):
            concat.extend(word_digits(b32, n))
        assert first30 == concat[:30]
        assert first30[:10] == [2, 2, 1, 2, 1, 0, 2, 1, 2, 2]

    def test_integer_base_stream(self):
        b10 = Base(10, 1)
        assert champernowne_digits(b10, 11) == [1, 2, 3, 4, 5, 6, 7, 8, 9, 1, 0]

    def test_generator_and_array_agree(self, b32):
        want = stream_prefix(b32, 500)
        assert champernowne_digits(b32, 500) == want
        assert champernowne_prefix_array(b32, 500).tolist() == want
        gen = champernowne_stream(b32)
        assert [next(gen) for _ in range(500)] == want

    def test_frozen_frequencies(self, b32):
        assert champernowne_freq(b32, Pattern(b32, (2,)), 10) == 6
        assert champernowne_freq(b32, Pattern(b32, (2, 2)), 1) == 1

    @pytest.mark.parametrize("base", [Base(3, 2), Base(5, 3), Base(10, 1)],
                             ids=lambda b: f"{b.a}_{b.b}")
    def test_freq_against_scan(self, base):
        rng = random.Random(5)
        for _ in range(12):
            m = rng.randint(1, 3)
            w = tuple(rng.randrange(base.a) for _ in range(m))
            x = rng.choice([1, 7, 100, 2000])
            pat = Pattern(base, w) if any(w) else Pattern(base, (1,))
            got = champernowne_freq(base, pat, x)
            assert got == stream_scan(base, pat.word, x)

    def test_bulk_path_agrees_with_scan(self, b32):
        # 120000 forces the vectorized branch
        pat = Pattern(b32, (2,))
        out = champernowne_freq_bulk(b32, [pat], [50, 120000])
        assert out[(2,)][0] == stream_scan(b32, (2,), 50)
        assert out[(2,)][1] == stream_scan(b32, (2,), 120000)


class TestReports:
    def test_rejects_tiny_horizons(self, b32):
        with pytest.raises(ValueError):
            asymptotic_report(b32, Pattern(b32, (2,)), [10])

    def test_row_contents(self, b32):
        pat = Pattern(b32, (2,))
        rows = asymptotic_report(b32, pat, [100, 1000])
        assert [r.N for r in rows] == [100, 1000]
        log_alpha = math.log(3) - math.log(2)
        for r in rows:
            assert r.s_w == count_pattern(b32, pat, r.N).total
            main = r.N * (1 / 3) * math.log(r.N) / log_alpha
            assert math.isclose(r.main_term, main, rel_tol=1e-12)
            assert math.isclose(r.residual, r.s_w - main, rel_tol=1e-12)
            assert math.isclose(
                r.residual_norm, (r.s_w - main) / (r.N * math.log(math.log(r.N))),
                rel_tol=1e-12)

    def test_csv_shape(self, b32):
        rows = asymptotic_report(b32, Pattern(b32, (2, 1)), [100, 1000])
        text = report_csv(rows)
        lines = text.strip().split("\n")
        assert lines[0] == "N,S_w,main_term,residual,residual_norm"
        assert len(lines) == 3
        assert lines[1].startswith("100,")

    def test_json_roundtrip(self, b32):
        rows = asymptotic_report(b32, Pattern(b32, (2,)), [100])
        recs = json.loads(report_json(rows))
        assert recs[0]["N"] == 100
        assert recs[0]["S_w"] == rows[0].s_w
