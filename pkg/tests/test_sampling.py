import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from petaluma.errors import ParamError, TooLarge, ZeroEntry
from petaluma.sampling import (
    BoundReport,
    Histogram,
    SeededStream,
    c2_histogram_exhaustive,
    coupling_procedure,
    distribution_experiment,
    lemma_experiment,
    lo_bound,
    lo_brute_force,
    position_chisquare,
    uniform_perm,
    wilson_interval,
)


def test_stream_is_reproducible():
    a = [uniform_perm(9, SeededStream(5)) for _ in range(3)]
    b = [uniform_perm(9, SeededStream(5)) for _ in range(3)]
    assert a == b


def test_substreams_differ():
    draws = {tuple(uniform_perm(21, s.rng()).heights) for s in SeededStream(1).spawn(8)}
    assert len(draws) == 8


hists = st.dictionaries(st.integers(-5, 5), st.integers(1, 50)).map(Histogram)


@given(hists, hists, hists)
def test_merge_is_associative_and_commutative(a, b, c):
    assert a.merge(b).merge(c).counts == a.merge(b.merge(c)).counts
    assert a.merge(b).counts == b.merge(a).counts


def test_histogram_csv_and_hash():
    h = Histogram({0: 3, -1: 2})
    assert h.to_csv() == "value,count\n-1,2\n0,3\n"
    assert h.content_hash() == Histogram({-1: 2, 0: 3}).content_hash()


def test_wilson_interval():
    lo, hi = wilson_interval(0, 10_000)
    assert lo == 0 and 0 < hi < 0.001
    lo, hi = wilson_interval(50, 100)
    assert lo < 0.5 < hi and math.isclose(lo + hi, 1.0)


def test_verdicts():
    assert BoundReport("x", {}, 5, 100, 0.5).verdict == "consistent"
    assert BoundReport("x", {}, 5, 100, 2.0).verdict == "vacuous"
    assert BoundReport("x", {}, 90, 100, 0.5).verdict == "violated"


def test_exhaustive_c2():
    assert c2_histogram_exhaustive(5).counts == {0: 110, 1: 10}
    with pytest.raises(TooLarge):
        c2_histogram_exhaustive(11)


def test_sampled_matches_exhaustive_p5():
    rep = distribution_experiment("c2_knot", 5, samples=4000, seed=3, threads=2)
    lo, hi = wilson_interval(rep.histogram.counts.get(1, 0), rep.trials)
    assert lo <= 10 / 120 <= hi


def test_determinism_and_thread_dependence():
    a = distribution_experiment("lk_link", (10, 12), samples=5000, seed=9, threads=3)
    b = distribution_experiment("lk_link", (10, 12), samples=5000, seed=9, threads=3)
    assert a.histogram.content_hash() == b.histogram.content_hash()
    assert a.histogram.total == 5000


def test_lk_exhaustive_matches_scalar():
    rep = distribution_experiment("lk_link", (1, 1), exhaustive=True)
    assert rep.histogram.counts == {-1: 4, 0: 16, 1: 4}


def test_bad_kind():
    with pytest.raises(ParamError):
        distribution_experiment("nope", 5)
    with pytest.raises(ParamError):
        distribution_experiment("c2_knot", 6)


def test_match_distribution_m1_n1():
    # three matchings of four points; two of them pair across
    rep = lemma_experiment("match", {"m": 1, "n": 1}, trials=30_000, seed=4)
    lo, hi = wilson_interval(rep.histogram.counts.get(2, 0), rep.trials)
    assert lo <= 2 / 3 <= hi


def test_cycle_counts_exact_small_case():
    # N = 4, K = 1: distance of two values in a 4-permutation is in [1, 3];
    # the window [1, 3] holds everything
    rep = lemma_experiment("cycle", {"N": 4, "K": 1}, trials=500, seed=1)
    assert rep.histogram.counts == {1: 500}


def test_swaps_lemma_runs():
    rep = lemma_experiment("swaps", {"n": 8, "k": 1}, trials=50, seed=2)
    assert rep.trials == 50
    assert rep.verdict == "vacuous"
    with pytest.raises(ParamError):
        lemma_experiment("swaps", {"n": 4, "k": 1})


def test_lo_examples():
    assert lo_brute_force([1, 1]) == 2
    assert lo_brute_force([1, 1, 1]) == 3
    assert lo_brute_force([]) == 1
    with pytest.raises(ZeroEntry):
        lo_brute_force([1, 0])
    with pytest.raises(TooLarge):
        lo_brute_force([1] * 21)


def _naive_lo(a):
    sums = sorted(sum(c) for r in range(len(a) + 1) for c in itertools.combinations(a, r))
    w = min(abs(x) for x in a)
    return max(sum(1 for s in sums if x <= s < x + w) for x in sums)


@given(st.lists(st.integers(-6, 6).filter(bool), min_size=1, max_size=8))
def test_lo_matches_naive_and_bound(a):
    got = lo_brute_force(a)
    assert got == _naive_lo(a)
    assert got <= lo_bound(len(a))


def test_coupling_small():
    tr = coupling_procedure(4, seed=0)
    assert tr.k == 1
    assert tr.candidates == (1, 3, 5, 7)
    assert tr.residual == 0 or len(tr.big_applied) > 1


def test_coupling_degradation():
    traces = [coupling_procedure(10, seed=s) for s in range(100)]
    assert all(t.degradation_ok() for t in traces)
    assert all(t.degradation_tight_ok() for t in traces)


def test_coupling_output_is_uniform():
    traces = [coupling_procedure(3, seed=s) for s in range(1000)]
    for pos in (1, 4):
        assert position_chisquare([t.final for t in traces], pos).pvalue > 1e-3
